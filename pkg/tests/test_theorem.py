import numpy as np
import pytest

from qcorr.channels import (
    ChannelClass,
    amplitude_damping,
    dephasing,
    depolarizing,
    qutrit_mixing_channel,
    random_channel,
    random_unital_channel,
    structural_class,
)
from qcorr.theorem import (
    QUTRIT_COMMUTATOR_PATTERN,
    WitnessNotFound,
    basis_commutator_norm,
    classify_qubit_channel,
    find_witness,
    qutrit_counterexample,
    unitality_commutator_defect,
    verify_theorem1,
)


def plus_axis_angle(params):
    """Bloch-sphere angle between the witness basis axis and the x axis."""
    theta, phi = params
    return float(np.arccos(min(1.0, abs(np.sin(theta) * np.cos(phi)))))


def test_classify_examples():
    assert classify_qubit_channel(dephasing(0.3)).channel_class is ChannelClass.MIXING_ONLY
    rep = classify_qubit_channel(amplitude_damping(1.0))
    assert rep.channel_class is ChannelClass.COMPLETELY_DECOHERING_ONLY
    assert rep.witness is None
    rep = classify_qubit_channel(amplitude_damping(0.5))
    assert rep.channel_class is ChannelClass.NEITHER
    assert rep.witness.discord > 1e-3
    assert len(rep.commutator_scan) == 48 * 48


def test_classify_rejects_qutrits():
    with pytest.raises(ValueError):
        classify_qubit_channel(qutrit_mixing_channel(0.6, 0.8))


def test_witness_not_found_for_mixing_and_decohering_channels():
    for ch in (dephasing(0.2), depolarizing(0.4), amplitude_damping(1.0), random_unital_channel(2, 3, 1)):
        with pytest.raises(WitnessNotFound):
            find_witness(ch)


def test_amplitude_damping_witness_is_plus_minus_basis():
    w = find_witness(amplitude_damping(0.5))
    assert plus_axis_angle(w.basis_params) < 0.2
    assert w.discord > 1e-3 and w.deficit > w.discord - 1e-6
    # commutator of the two images is 2 p sqrt(1 - p) sin(theta) / sqrt(2) at its maximum
    assert w.commutator_norm == pytest.approx(2 * 0.5 * np.sqrt(0.5) / np.sqrt(2), abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_random_neither_channels_have_witnesses(seed):
    ch = random_channel(2, 2, seed)
    rep = classify_qubit_channel(ch)
    assert rep.channel_class is ChannelClass.NEITHER
    assert rep.witness.discord > 1e-4


def test_qutrit_counterexample():
    rep = qutrit_counterexample(np.sqrt(0.5), np.sqrt(0.5))
    assert rep.mixing
    assert np.linalg.norm(rep.commutator) > 0
    assert rep.shape_error < 1e-10 and rep.coefficient > 0
    assert rep.deficit > 1e-4
    trivial = qutrit_counterexample(1.0, 0.0)
    assert np.allclose(trivial.commutator, 0)
    assert abs(trivial.deficit) < 1e-7


def test_qutrit_commutator_scales_as_product_of_weights():
    w1 = np.arange(1, 10) / 10
    coefs = [qutrit_counterexample(np.sqrt(1 - w), np.sqrt(w), measure=False).coefficient for w in w1]
    slope = np.polyfit((1 - w1) * w1, coefs, 1)
    assert slope[0] == pytest.approx(1, abs=1e-10)
    assert slope[1] == pytest.approx(0, abs=1e-10)


def test_qutrit_pattern_is_antisymmetric():
    assert np.allclose(QUTRIT_COMMUTATOR_PATTERN, -QUTRIT_COMMUTATOR_PATTERN.T)


def test_verify_theorem1_examples():
    rep = verify_theorem1(dephasing(0.7), 50, seed=1)
    assert rep.holds and rep.max_deficit < 1e-6 and rep.max_discord < 1e-6
    rep = verify_theorem1(amplitude_damping(1.0), 50, seed=2)
    assert rep.holds and rep.max_deficit < 1e-6
    rep = verify_theorem1(amplitude_damping(0.5), 50, seed=3)
    assert rep.holds and rep.max_discord > 1e-3 and rep.n_states == 51


def test_soundness_on_classified_channels():
    rng = np.random.default_rng(4)
    for ch in (random_unital_channel(2, 2, rng), depolarizing(0.9), dephasing(0.5)):
        cls = classify_qubit_channel(ch).channel_class
        assert cls is not ChannelClass.NEITHER
        rep = verify_theorem1(ch, 100, seed=5)
        assert rep.max_deficit < 1e-6 and rep.max_discord < 1e-6


def test_basis_commutator_and_unitality_commutator_agree():
    channels = [dephasing(0.3), depolarizing(0.5), amplitude_damping(1.0),
                amplitude_damping(0.3), random_channel(2, 2, 3), random_unital_channel(2, 2, 4)]
    grid = np.array([(t, p) for t in np.linspace(0, np.pi, 48)
                     for p in np.linspace(0, 2 * np.pi, 48, endpoint=False)])
    for ch in channels:
        basis_zero = basis_commutator_norm(ch, grid).max() < 1e-8
        unital_zero = unitality_commutator_defect(ch) < 1e-8
        assert basis_zero == unital_zero


def test_report_invariant_witness_iff_neither():
    for ch in (dephasing(0.1), amplitude_damping(0.2), amplitude_damping(1.0), random_channel(2, 3, 9)):
        rep = classify_qubit_channel(ch)
        assert (rep.witness is not None) == (rep.channel_class is ChannelClass.NEITHER)
        if rep.witness:
            assert rep.witness.discord > 0
