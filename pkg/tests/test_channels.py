import numpy as np
import pytest

from qcorr.channels import (
    ChannelClass,
    InvalidChannelError,
    KrausChannel,
    QUTRIT_UNITARY,
    amplitude_damping,
    apply,
    conjugate_channel,
    dephasing,
    depolarizing,
    extend_on_B,
    identity_channel,
    is_completely_decohering,
    is_mixing,
    mixture_of_unitaries,
    qutrit_mixing_channel,
    random_channel,
    random_unital_channel,
    same_action,
    structural_class,
)
from qcorr.linalg import PAULIS, SIGMA_X, SIGMA_Z, commutator, dagger, frobenius_norm
from qcorr.states import random_density_matrix, random_unitary, von_neumann_entropy


def test_rejects_non_trace_preserving():
    with pytest.raises(InvalidChannelError):
        KrausChannel((np.diag([1, 0.5]),))
    with pytest.raises(InvalidChannelError):
        KrausChannel(())


def test_apply_examples():
    rho = random_density_matrix(2, 0)
    assert np.allclose(apply(identity_channel(2), rho), rho)
    assert np.allclose(apply(amplitude_damping(1.0), rho), np.diag([1, 0]))
    p = 0.3
    assert np.allclose(apply(amplitude_damping(p), np.eye(2) / 2), np.diag([(1 + p) / 2, (1 - p) / 2]))


def test_apply_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(1)
    for _ in range(50):
        d = int(rng.integers(2, 4))
        ch = random_channel(d, int(rng.integers(1, 4)), rng)
        out = apply(ch, random_density_matrix(d, rng))
        assert abs(np.trace(out) - 1) < 1e-10
        assert frobenius_norm(out - dagger(out)) < 1e-10


def test_is_mixing_examples():
    ok, defect = is_mixing(dephasing(0.2))
    assert ok and defect < 1e-12
    ok, defect = is_mixing(amplitude_damping(0.5))
    assert not ok
    s = sum(k @ dagger(k) for k in amplitude_damping(0.5).kraus)
    assert np.allclose(s, np.diag([1.5, 0.5]))
    assert defect == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert is_mixing(qutrit_mixing_channel(np.sqrt(0.5), np.sqrt(0.5)))[0]


def test_is_completely_decohering_examples():
    p0, p1 = np.diag([1, 0]).astype(complex), np.diag([0, 1]).astype(complex)
    ok, basis, _ = is_completely_decohering(KrausChannel((p0, p1)))
    assert ok
    assert np.allclose(np.abs(basis), np.eye(2)) or np.allclose(np.abs(basis), np.eye(2)[::-1])
    ok, basis, _ = is_completely_decohering(amplitude_damping(1.0))
    assert ok
    ok, basis, defect = is_completely_decohering(amplitude_damping(0.5))
    assert not ok and basis is None and defect > 0.1
    assert frobenius_norm(commutator(apply(amplitude_damping(0.5), SIGMA_X),
                                     apply(amplitude_damping(0.5), SIGMA_Z))) > 0.1


def test_decohering_basis_diagonalizes_outputs():
    # dephasing in a rotated basis, followed by a fixed unitary
    u, v = random_unitary(2, 3), random_unitary(2, 4)
    projs = [u @ np.diag(e) @ dagger(u) for e in ([1, 0], [0, 1])]
    ch = KrausChannel(tuple(v @ p for p in projs))
    ok, basis, _ = is_completely_decohering(ch)
    assert ok
    rng = np.random.default_rng(0)
    for _ in range(20):
        out = dagger(basis) @ apply(ch, random_density_matrix(2, rng)) @ basis
        assert frobenius_norm(out - np.diag(np.diag(out))) < 1e-8


def test_depolarized_channel_is_both():
    cls = structural_class(depolarizing(1.0))
    assert cls.channel_class is ChannelClass.BOTH
    assert structural_class(dephasing(0.5)).channel_class is ChannelClass.BOTH
    assert structural_class(dephasing(0.3)).channel_class is ChannelClass.MIXING_ONLY


def test_extend_on_B():
    ext = extend_on_B(identity_channel(2), 3)
    assert same_action(ext, identity_channel(6))
    ch = amplitude_damping(0.4)
    ra, rb = random_density_matrix(3, 1), random_density_matrix(2, 2)
    assert np.allclose(apply(extend_on_B(ch, 3), np.kron(ra, rb)), np.kron(ra, apply(ch, rb)))
    assert extend_on_B(random_channel(2, 3, 5), 2).dim == 4


def test_conjugate_channel():
    u = random_unitary(2, 1)
    conj = conjugate_channel(KrausChannel((u,)))
    assert np.allclose(conj.kraus[0], dagger(u))
    pauli = mixture_of_unitaries([0.4, 0.3, 0.2, 0.1], PAULIS)
    assert same_action(conjugate_channel(pauli), pauli)
    ch = random_unital_channel(3, 3, 2)
    assert same_action(conjugate_channel(conjugate_channel(ch)), ch)
    assert is_mixing(conjugate_channel(ch))[0]
    with pytest.raises(InvalidChannelError):
        conjugate_channel(amplitude_damping(0.3))


def test_constructors():
    assert same_action(amplitude_damping(0.0), identity_channel(2))
    assert np.allclose(QUTRIT_UNITARY @ dagger(QUTRIT_UNITARY), np.eye(3), atol=1e-15)
    e0, e1 = np.sqrt(0.3), np.sqrt(0.7)
    ch = qutrit_mixing_channel(e0, e1)
    assert np.allclose(ch.kraus[0], e0 * np.eye(3))
    assert np.allclose(ch.kraus[1] / e1, QUTRIT_UNITARY)
    rng = np.random.default_rng(0)
    for _ in range(10):
        w = rng.dirichlet(np.ones(3))
        assert is_mixing(mixture_of_unitaries(w, [random_unitary(3, rng) for _ in range(3)]))[0]
    for bad in (-0.1, 1.1):
        with pytest.raises(ValueError):
            amplitude_damping(bad)
        with pytest.raises(ValueError):
            dephasing(bad)
    with pytest.raises(ValueError):
        qutrit_mixing_channel(0.5, 0.5)
    with pytest.raises(ValueError):
        mixture_of_unitaries([0.5, 0.6], PAULIS[:2])


@pytest.mark.parametrize("dim", [2, 3])
def test_depolarizing_action(dim):
    p = 0.35
    ch = depolarizing(p, dim)
    rho = random_density_matrix(dim, 8)
    assert np.allclose(apply(ch, rho), (1 - p) * rho + p * np.eye(dim) / dim)


def test_random_channels():
    for seed in range(10):
        ch = random_channel(2, 3, seed)
        assert len(ch.kraus) == 3
        assert is_mixing(random_unital_channel(2, 3, seed))[0]
        u = random_channel(3, 1, seed).kraus[0]
        assert np.allclose(u @ dagger(u), np.eye(3), atol=1e-12)
        a, b = random_channel(2, 2, seed), random_channel(2, 2, seed)
        assert all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))


def test_unital_qubit_channels_never_lower_entropy():
    rng = np.random.default_rng(100)
    for _ in range(200):
        ch = random_unital_channel(2, int(rng.integers(1, 5)), rng)
        for _ in range(50):
            rho = random_density_matrix(2, rng)
            assert von_neumann_entropy(apply(ch, rho)) >= von_neumann_entropy(rho) - 1e-9


def test_non_unital_channels_lower_maximally_mixed_entropy():
    rng = np.random.default_rng(200)
    count = 0
    while count < 200:
        ch = random_channel(2, int(rng.integers(2, 4)), rng)
        if is_mixing(ch)[1] <= 1e-3:
            continue
        count += 1
        assert von_neumann_entropy(apply(ch, np.eye(2) / 2)) < 1 - 1e-9


def test_extension_of_mixing_channel_never_lowers_joint_entropy():
    rng = np.random.default_rng(300)
    for _ in range(100):
        ch = random_unital_channel(2, 3, rng)
        rho = random_density_matrix(4, rng)
        out = apply(extend_on_B(ch, 2), rho)
        assert von_neumann_entropy(out) >= von_neumann_entropy(rho) - 1e-9
