import io
import json

import numpy as np
import pytest

from qcorr.channels import amplitude_damping, dephasing
from qcorr.cli import default_trajectory_state, run
from qcorr.correlation import OptimizationSettings, quantum_discord
from qcorr.io import dumps, emit_channel, emit_state, parse_trajectory_csv
from qcorr.states import ket_to_dm


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(path, obj):
    path.write_text(dumps(obj))
    return str(path)


@pytest.fixture
def ad_file(tmp_path):
    return write(tmp_path / "ad_p05.json", emit_channel(amplitude_damping(0.5)))


@pytest.fixture
def bell_file(tmp_path):
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return write(tmp_path / "bell.json", emit_state(ket_to_dm(bell)))


def test_classify_amplitude_damping(ad_file):
    code, out, _ = call("classify", "--channel", ad_file)
    assert code == 0
    rep = json.loads(out)
    assert rep["channelClass"] == "Neither"
    assert rep["witness"]["discord"] > 1e-3
    assert len(rep["commutatorScan"]) == 48 * 48


def test_classify_mixing_channel_has_no_witness(tmp_path):
    path = write(tmp_path / "deph.json", emit_channel(dephasing(0.3)))
    code, out, _ = call("classify", "--channel", path)
    rep = json.loads(out)
    assert code == 0 and rep["channelClass"] == "MixingOnly" and rep["witness"] is None
    code, out, _ = call("witness", "--channel", path)
    assert code == 0 and json.loads(out)["witness"] is None


def test_discord_of_bell_state(bell_file):
    code, out, _ = call("discord", "--state", bell_file)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-4)
    code, out, _ = call("deficit", "--state", bell_file)
    assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-4)


def test_dims_mismatch_is_invalid(bell_file):
    code, _, err = call("discord", "--state", bell_file, "--dims", "3", "3")
    assert code == 2 and "dims" in err


def test_missing_kraus_key(tmp_path):
    path = write(tmp_path / "bad.json", {"dim": 2})
    code, out, err = call("classify", "--channel", path)
    assert code == 2 and out == ""
    assert "kraus" in err


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 2,\n "kraus": [\n')
    code, _, err = call("classify", "--channel", str(path))
    assert code == 2 and "line" in err


def test_missing_file():
    code, _, err = call("classify", "--channel", "/nonexistent/ch.json")
    assert code == 2


def test_non_density_state(tmp_path):
    path = write(tmp_path / "s.json", emit_state(np.diag([1.5, -0.5, 0, 0])))
    code, _, _ = call("discord", "--state", path)
    assert code == 2


def test_bad_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        call("classify", "--channel", "x.json", "--grid", "2")
    assert exc.value.code == 2


def test_demo_qutrit():
    code, out, _ = call("demo-qutrit")
    rep = json.loads(out)
    assert code == 0 and rep["mixing"] is True and rep["deficit"] > 1e-4


def test_demo_ad():
    code, out, _ = call("demo-ad", "--p", "0.5")
    rep = json.loads(out)
    assert code == 0 and rep["channelClass"] == "Neither" and rep["discord"] > 1e-3


def test_evolve_csv(tmp_path):
    gamma = np.zeros((4, 4), complex)
    gamma[3, 3] = 0.5
    path = write(tmp_path / "gamma.json", emit_state(gamma))
    code, out, _ = call("evolve", "--gamma", path, "--times", "0:2:5", "--format", "csv")
    assert code == 0
    rows = parse_trajectory_csv(out)
    assert [r[0] for r in rows] == pytest.approx(np.linspace(0, 2, 5))
    # pure dephasing generator: discord never appears from the classical start state
    assert max(r[2] for r in rows) < 1e-6
    assert all(r[3] for r in rows)


def test_evolve_rejects_non_psd(tmp_path):
    gamma = np.zeros((4, 4), complex)
    gamma[3, 3] = -0.5
    path = write(tmp_path / "gamma.json", emit_state(gamma))
    code, _, err = call("evolve", "--gamma", path, "--times", "0:1:2")
    assert code == 2


def test_msf_with_channel(bell_file, tmp_path):
    from qcorr.channels import depolarizing
    ch = write(tmp_path / "dep.json", emit_channel(depolarizing(0.5)))
    code, out, _ = call("msf", "--state", bell_file, "--channel", ch)
    rep = json.loads(out)
    assert code == 0
    assert rep["F"] == pytest.approx(1.0, abs=1e-10)
    assert rep["F_after"] == pytest.approx(0.625, abs=1e-8)
    assert rep["routesAgree"] is True


def test_output_is_byte_identical(ad_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("witness", "--channel", ad_file, "--out", str(a))[0] == 0
    assert call("witness", "--channel", ad_file, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_matches_library(tmp_path):
    rho = default_trajectory_state()
    path = write(tmp_path / "s.json", emit_state(rho))
    _, out, _ = call("discord", "--state", path, "--grid", "12")
    lib = quantum_discord(rho, (2, 2), OptimizationSettings(grid_points_per_angle=12))
    assert json.loads(out)["value"] == lib.value
