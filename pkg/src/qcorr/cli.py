"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 an optimizer did not converge.
"""

import argparse
import sys

import numpy as np

from .channels import amplitude_damping, apply, extend_on_B, structural_class
from .correlation import OptimizationSettings, one_way_deficit, quantum_discord
from .dynamics import LindbladGenerator, state_trajectory
from .io import (
    SchemaError,
    dumps,
    emit_state,
    load_json,
    parse_channel,
    parse_state,
    trajectory_csv,
)
from .states import ClassicalQuantumEnsemble, assemble_cq_state, validate_density
from .teleportation import average_fidelity, max_singlet_fraction, msf_after_channel
from .theorem import (
    WitnessNotFound,
    classify_qubit_channel,
    find_witness,
    qutrit_counterexample,
    verify_theorem1,
)

EXIT_OK, EXIT_INVALID, EXIT_NOT_CONVERGED = 0, 2, 3


def _settings(args):
    return OptimizationSettings(grid_points_per_angle=args.grid)


def _basis_report(basis):
    return {"params": list(basis.params), "unitary": basis.unitary}


def _correlation_report(name, result):
    return {"measure": name, "value": result.value, "converged": result.converged,
            "basis": _basis_report(result.basis)}


def _witness_report(w):
    return {
        "basisParams": list(w.basis_params),
        "commutatorNorm": w.commutator_norm,
        "ensemble": [{"weight": p, "blockA": emit_state(b), "ketB": k}
                     for p, b, k in w.ensemble.terms],
        "discord": w.discord,
        "deficit": w.deficit,
        "converged": w.converged,
    }


def _classification_fields(cls):
    return {
        "channelClass": cls.channel_class.value,
        "unitalityDefect": cls.unitality_defect,
        "decoherenceDefect": cls.decoherence_defect,
        "decoheringBasis": cls.decohering_basis,
    }


def _load_state(args):
    rho = validate_density(parse_state(load_json(args.state), "state"))
    return rho


def cmd_classify(args):
    ch = parse_channel(load_json(args.channel))
    rep = classify_qubit_channel(ch, tol=args.tol, settings=_settings(args))
    out = {"command": "classify", **_classification_fields(rep.classification),
           "witness": _witness_report(rep.witness) if rep.witness else None,
           "commutatorScan": [[t, p, c] for (t, p), c in rep.commutator_scan]}
    return out


def cmd_witness(args):
    ch = parse_channel(load_json(args.channel))
    try:
        w = find_witness(ch, settings=_settings(args), tol=args.tol)
    except WitnessNotFound as exc:
        return {"command": "witness", "witness": None, "reason": str(exc)}
    return {"command": "witness", "witness": _witness_report(w)}


def _bipartite(args):
    rho = _load_state(args)
    dims = tuple(args.dims)
    if rho.shape[0] != dims[0] * dims[1]:
        raise SchemaError(f"state of dimension {rho.shape[0]} does not match --dims {dims[0]} {dims[1]}")
    return rho, dims


def cmd_discord(args):
    rho, dims = _bipartite(args)
    return {"command": "discord", "dims": list(dims),
            **_correlation_report("discord", quantum_discord(rho, dims, _settings(args)))}


def cmd_deficit(args):
    rho, dims = _bipartite(args)
    return {"command": "deficit", "dims": list(dims),
            **_correlation_report("deficit", one_way_deficit(rho, dims, _settings(args)))}


def parse_times(text):
    try:
        t0, t1, steps = text.split(":")
        t0, t1, steps = float(t0), float(t1), int(steps)
    except ValueError as exc:
        raise SchemaError(f"--times expects t0:t1:steps, got {text!r}") from exc
    if steps < 1 or t0 < 0 or t1 < t0:
        raise SchemaError(f"--times needs 0 <= t0 <= t1 and steps >= 1, got {text!r}")
    return np.linspace(t0, t1, steps)


def default_trajectory_state():
    """0.7 |0><0| (x) |+><+| + 0.3 |1><1| (x) |-><-|."""
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    ens = ClassicalQuantumEnsemble.from_terms(
        [(0.7, np.diag([1, 0]), plus), (0.3, np.diag([0, 1]), minus)], (2, 2))
    return assemble_cq_state(ens)


def cmd_evolve(args):
    gamma = parse_state(load_json(args.gamma), "gamma")
    h = parse_state(load_json(args.hamiltonian), "hamiltonian") if args.hamiltonian else np.zeros((2, 2))
    gen = LindbladGenerator(h, gamma, check_psd=not args.no_psd_check)
    rho0 = _load_state(args) if args.state else default_trajectory_state()
    if rho0.shape != (4, 4):
        raise SchemaError("evolve needs a two-qubit state")
    points = state_trajectory(gen, rho0, parse_times(args.times), _settings(args))
    if args.format == "csv":
        return trajectory_csv(points)
    return {"command": "evolve",
            "trajectory": [{"t": p.t, "deficit": p.deficit, "discord": p.discord,
                            "converged": p.converged} for p in points]}


def cmd_msf(args):
    rho = _load_state(args)
    d = int(round(np.sqrt(rho.shape[0])))
    if d * d != rho.shape[0] or (args.dims and tuple(args.dims) != (d, d)):
        raise SchemaError("msf needs a state of two equal-dimension systems")
    settings = _settings(args)
    res = max_singlet_fraction(rho, d, settings, args.seed)
    out = {"command": "msf", "d": d, "F": res.F, "f": res.f, "mes": res.mes,
           "converged": res.converged}
    if args.channel:
        ch = parse_channel(load_json(args.channel))
        m = msf_after_channel(rho, ch, d, settings, args.seed)
        out.update({"F_after": m.F_after, "f_after": average_fidelity(m.F_after, d),
                    "F_after_xi": m.F_after_xi, "routesAgree": m.routes_agree})
    return out


def cmd_demo_qutrit(args):
    q = qutrit_counterexample(args.e0, args.e1, _settings(args))
    return {"command": "demo-qutrit", "e0": q.e0, "e1": q.e1, "mixing": q.mixing,
            "unitalityDefect": q.unitality_defect, "commutator": q.commutator,
            "commutatorCoefficient": q.coefficient, "shapeError": q.shape_error,
            "deficit": q.deficit, "discord": q.discord, "converged": q.converged}


def cmd_demo_ad(args):
    ch = amplitude_damping(args.p)
    cls = structural_class(ch, args.tol)
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    ens = ClassicalQuantumEnsemble.from_terms(
        [(0.5, np.diag([1, 0]), plus), (0.5, np.diag([0, 1]), minus)], (2, 2))
    rho = apply(extend_on_B(ch, 2), assemble_cq_state(ens))
    rho = (rho + rho.conj().T) / 2
    settings = _settings(args)
    dsc = quantum_discord(rho, (2, 2), settings)
    dft = one_way_deficit(rho, (2, 2), settings)
    return {"command": "demo-ad", "p": args.p, **_classification_fields(cls),
            "input": "0.5 |0><0| (x) |+><+| + 0.5 |1><1| (x) |-><-|",
            "discord": dsc.value, "deficit": dft.value,
            "converged": dsc.converged and dft.converged}


def cmd_verify(args):
    ch = parse_channel(load_json(args.channel))
    rep = verify_theorem1(ch, args.n_states, args.seed, _settings(args))
    return {"command": "verify", **_classification_fields(rep.classification),
            "nStates": rep.n_states, "maxDeficit": rep.max_deficit,
            "maxDiscord": rep.max_discord, "holds": rep.holds,
            "witness": _witness_report(rep.witness) if rep.witness else None,
            "converged": rep.converged}


COMMANDS = {
    "classify": cmd_classify,
    "discord": cmd_discord,
    "deficit": cmd_deficit,
    "witness": cmd_witness,
    "evolve": cmd_evolve,
    "msf": cmd_msf,
    "demo-qutrit": cmd_demo_qutrit,
    "demo-ad": cmd_demo_ad,
    "verify": cmd_verify,
}


def _positive(kind, minimum=None):
    def check(text):
        try:
            x = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}")
        if x <= 0 or (minimum is not None and x < minimum):
            raise argparse.ArgumentTypeError(f"value must be {'>= %s' % minimum if minimum else '> 0'}")
        return x
    return check


def build_parser():
    p = argparse.ArgumentParser(prog="qcorr",
                                description="Correlation creation by local quantum channels.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive(float), default=1e-8)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--grid", type=_positive(int, 4), default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "classify": "structural class of a qubit channel, with a witness when one exists",
        "witness": "classical-quantum state whose image under the channel has discord",
        "verify": "check that random cq states stay classical under the channel",
        "discord": "quantum discord of a bipartite state (measurement on B)",
        "deficit": "one-way deficit of a bipartite state (measurement on B)",
        "msf": "maximal singlet fraction, optionally after a channel on B",
        "evolve": "deficit and discord along a Lindblad trajectory",
        "demo-qutrit": "mixing qutrit channel that creates correlations",
        "demo-ad": "amplitude damping acting on the |+>/|-> cq state",
    }

    for name in ("classify", "witness", "verify"):
        s = sub.add_parser(name, parents=[common], help=helps[name])
        s.add_argument("--channel", required=True)
        if name == "verify":
            s.add_argument("--n-states", type=int, default=50)
    for name in ("discord", "deficit"):
        s = sub.add_parser(name, parents=[common], help=helps[name])
        s.add_argument("--state", required=True)
        s.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    s = sub.add_parser("msf", parents=[common], help=helps["msf"])
    s.add_argument("--state", required=True)
    s.add_argument("--channel")
    s.add_argument("--dims", type=int, nargs=2)
    s = sub.add_parser("evolve", parents=[common], help=helps["evolve"])
    s.add_argument("--gamma", required=True)
    s.add_argument("--hamiltonian")
    s.add_argument("--state")
    s.add_argument("--times", default="0:10:21")
    s.add_argument("--no-psd-check", action="store_true")
    s = sub.add_parser("demo-qutrit", parents=[common], help=helps["demo-qutrit"])
    s.add_argument("--e0", type=float, default=float(np.sqrt(0.5)))
    s.add_argument("--e1", type=float, default=float(np.sqrt(0.5)))
    s = sub.add_parser("demo-ad", parents=[common], help=helps["demo-ad"])
    s.add_argument("--p", type=float, default=0.5)
    return p


def _any_unconverged(obj):
    if isinstance(obj, dict):
        if obj.get("converged") is False:
            return True
        return any(_any_unconverged(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_any_unconverged(v) for v in obj)
    return False


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"qcorr {args.command}: {exc}", file=stderr)
        return EXIT_INVALID
    if isinstance(report, str):
        text, unconverged = report, any(
            line.endswith(",0") for line in report.splitlines()[1:])
    else:
        text, unconverged = dumps(report) + "\n", _any_unconverged(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_NOT_CONVERGED if unconverged else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
