"""Command-line entry point.

Each subcommand prints one JSON report on standard output. Exit status is 0
when the run completed, 2 for invalid input and 3 when an internal numerical
check failed.
"""

import argparse
import sys

import numpy as np

from . import __version__
from .collective import XYZ, moments
from .fileio import ParseError, dumps, parse_qdm, sha256_file, write_qdm
from .pairwise import best_frame, criterion2, criterion2_symmetric
from .qmat import (
    fidelity, ket_to_dm, min_eigenvalue, nqubits, partial_trace, partial_transpose, purity,
    qubit_subsets, validate_density,
)
from .simple_wit import CRITERIA as SIMPLE_CRITERIA
from .simple_wit import criterion_simple
from .states import dicke, ghz, noisy, pulse_sequence_w, w_state
from .tomo import LikelihoodError, mc_error, mle_fit, settings, simulate_counts
from .triple import NumericalAssertionError, dicke_triple_data, triple_sum_oracle, x_parameter

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
TOMO_MAX_QUBITS = 6


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------- #
# State specifications                                                        #
# --------------------------------------------------------------------------- #


def _count(text, what):
    try:
        v = int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None
    return v


def parse_state(spec):
    """Return (rho, ideal ket or None, (n, k) Dicke label or None) for a state spec."""
    head, _, rest = spec.partition(":")
    try:
        if head == "noisy":
            inner, sep, p = rest.rpartition(":")
            if not sep:
                raise InputError("noisy state needs the form noisy:<spec>:<p>")
            try:
                weight = float(p)
            except ValueError:
                raise InputError(f"bad noise weight {p!r}") from None
            _, psi, label = parse_state(inner)
            if psi is None:
                raise InputError("noisy:<spec> needs a pure inner state")
            return noisy(psi, weight), psi, label
        if head == "dicke":
            parts = rest.split(":")
            if len(parts) != 2:
                raise InputError("expected dicke:N:k")
            n, k = _count(parts[0], "N"), _count(parts[1], "k")
            psi, label = dicke(n, k), (n, k)
        elif head == "w":
            n = _count(rest, "N")
            psi, label = w_state(n), (n, 1)
        elif head == "ghz":
            psi, label = ghz(_count(rest, "N")), None
        elif head == "pulseseq":
            n = _count(rest, "N")
            psi, label = pulse_sequence_w(n).qubit_state(0), (n, 1)
        else:
            raise InputError(f"unknown state kind {head!r}")
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"invalid state {spec!r}: {exc}") from None
    if nqubits(len(psi)) > 12:
        raise InputError("at most 12 qubits are supported")
    return ket_to_dm(psi), psi, label


def parse_frame(text, mom):
    if text == "xyz":
        return XYZ, "xyz"
    if text == "grid":
        return best_frame(mom), "grid"
    raise InputError(f"unknown frame {text!r}, expected xyz or grid")


def _frame_dict(frame):
    return {"k": list(frame.k), "l": list(frame.l), "n": list(frame.n)}


# --------------------------------------------------------------------------- #
# Criterion evaluation                                                        #
# --------------------------------------------------------------------------- #


def _ref_witnesses(ref, n):
    if ref is None:
        raise InputError("the triple criterion needs --ref with an ideal Dicke state")
    _, _, label = parse_state(ref)
    if label is None:
        raise InputError(f"reference {ref!r} is not a Dicke state")
    if label[0] != n:
        raise InputError(f"reference has {label[0]} qubits, input has {n}")
    data = dicke_triple_data(*label)
    wits = data.witnesses()
    if not wits:
        raise InputError(f"reference {ref!r} has no negative triple eigenvalue")
    return data, wits


def build_evaluators(criteria, mom, frame, ref):
    """List of (name, moments -> report dict, key of the scalar used for error bars)."""
    out = []
    n = mom.nqubits
    for crit in criteria:
        if crit == "pair":
            out.append((crit, lambda m: criterion2(m, frame).as_dict(), "margin"))
        elif crit == "pair-sym":
            out.append((crit, lambda m: criterion2_symmetric(m, frame.n).as_dict(), "margin"))
        elif crit == "triple":
            if n < 3:
                raise InputError("the triple criterion needs at least 3 qubits")
            data, wits = _ref_witnesses(ref, n)
            for label, k, *_ in wits:
                def run(m, k=k, label=label):
                    x = x_parameter(m, k)
                    return {"criterion": "triple", "witness": label, "X": x, "violated": x < 0,
                            "params": {"ref": ref, "alpha": data.alpha if label == "psi"
                                       else data.alpha_prime}}
                out.append((f"triple[{label}]", run, "X"))
        elif crit.startswith("simple:"):
            which = crit.split(":", 1)[1]
            if which not in SIMPLE_CRITERIA:
                raise InputError(f"unknown simple criterion {which!r}")
            if n < 3:
                raise InputError("simple criteria need at least 3 qubits")
            out.append((crit, lambda m, w=which: criterion_simple(m, w, frame).as_dict(), "lhs"))
        else:
            raise InputError(f"unknown criterion {crit!r}")
    return out


# --------------------------------------------------------------------------- #
# Subcommands                                                                 #
# --------------------------------------------------------------------------- #


def _base(command, seed=None):
    return {"tool": "spinwitness", "version": __version__, "command": command, "seed": seed}


def cmd_gen(args):
    rho, _, _ = parse_state(args.state)
    write_qdm(rho, args.out)
    rep = _base("gen")
    rep["parameters"] = {"state": args.state}
    rep["output"] = {"path": args.out, "sha256": sha256_file(args.out)}
    rep["results"] = {"nqubits": nqubits(rho.shape[0]), "purity": purity(rho)}
    return rep


def _load(args):
    try:
        rho = parse_qdm(args.inp, args.tol)
    except OSError as exc:
        raise InputError(f"cannot read {args.inp}: {exc.strerror}") from None
    return rho, {"path": args.inp, "sha256": sha256_file(args.inp)}


def cmd_eval(args):
    rho, inp = _load(args)
    n = nqubits(rho.shape[0])
    mom = moments(rho)
    frame, frame_mode = parse_frame(args.frame, mom)
    criteria = [c.strip() for c in args.criteria.split(",") if c.strip()]
    if not criteria:
        raise InputError("no criteria given")
    evaluators = build_evaluators(criteria, mom, frame, args.ref)

    results = {}
    for name, fn, _ in evaluators:
        results[name] = fn(mom)

    if args.mc_samples:
        if n > TOMO_MAX_QUBITS:
            raise InputError(f"Monte-Carlo errors are limited to {TOMO_MAX_QUBITS} qubits")
        rho_phys = validate_density(rho, args.tol)
        for name, fn, key in evaluators:
            mean, std = mc_error(rho_phys, lambda r, fn=fn, key=key: fn(moments(r))[key],
                                 samples=args.mc_samples, shots=args.shots, seed=args.seed)
            results[name]["error_bar"] = std
            results[name]["mc_mean"] = mean

    rep = _base("eval", args.seed if args.mc_samples else None)
    rep["input"] = inp
    rep["parameters"] = {
        "criteria": criteria, "frame_mode": frame_mode, "frame": _frame_dict(frame),
        "ref": args.ref, "tol": args.tol,
        "mc_samples": args.mc_samples, "shots": args.shots if args.mc_samples else None,
    }
    rep["results"] = {"nqubits": n, "criteria": results}
    return rep


def cmd_scan_noise(args):
    _, psi, label = parse_state(args.state)
    if psi is None or label is None:
        raise InputError("scan-noise needs a pure Dicke-type state")
    if args.steps < 2:
        raise InputError("need at least 2 steps")
    n = label[0]
    data, wits = _ref_witnesses(args.state, n)
    dim = 2**n
    mom_psi = moments(ket_to_dm(psi))
    mom_mix = moments(np.eye(dim) / dim)
    ps = np.linspace(0.0, 1.0, args.steps)
    scans = []
    for wlabel, k, vec, *_ in wits:
        x_psi, x_mix = x_parameter(mom_psi, k), x_parameter(mom_mix, k)
        rows = []
        dev = 0.0
        for p in ps:
            x = x_parameter(moments(noisy(psi, p)), k)
            rows.append([float(p), x])
            dev = max(dev, abs(x - (p * x_psi + (1 - p) * x_mix)))
        o_psi = triple_sum_oracle(ket_to_dm(psi), vec)
        o_mix = triple_sum_oracle(np.eye(dim) / dim, vec)
        crossing = x_mix / (x_mix - x_psi) if x_mix != x_psi else None
        scans.append({
            "witness": wlabel,
            "X_pure": x_psi,
            "X_mixed": x_mix,
            "zero_crossing": crossing,
            "zero_crossing_oracle": o_mix / (o_mix - o_psi) if o_mix != o_psi else None,
            "max_affine_deviation": dev,
            "rows": rows,
        })
    rep = _base("scan-noise")
    rep["parameters"] = {"state": args.state, "steps": args.steps}
    rep["results"] = {"nqubits": n, "scans": scans}
    return rep


def cmd_oracle(args):
    rho, inp = _load(args)
    n = nqubits(rho.shape[0])
    pairs = []
    for a, b in qubit_subsets(n, 2):
        r = partial_trace(rho, [a, b])
        pairs.append({"qubits": [a, b], "pt_min": min_eigenvalue(partial_transpose(r, [0]))})
    triples = []
    if n >= 3:
        for t in qubit_subsets(n, 3):
            r = partial_trace(rho, list(t))
            mins = [min_eigenvalue(partial_transpose(r, [j])) for j in range(3)]
            triples.append({"qubits": list(t), "pt_min": mins})
    rep = _base("oracle")
    rep["input"] = inp
    rep["parameters"] = {"tol": args.tol}
    rep["results"] = {
        "nqubits": n,
        "pairs": pairs,
        "triples": triples,
        "pair_npt": any(p["pt_min"] < 0 for p in pairs),
        "triple_npt": any(min(t["pt_min"]) < 0 for t in triples),
    }
    return rep


def cmd_tomo_sim(args):
    rho, psi, _ = parse_state(args.state)
    n = nqubits(rho.shape[0])
    if n > TOMO_MAX_QUBITS:
        raise InputError(f"tomography simulation is limited to {TOMO_MAX_QUBITS} qubits")
    if args.shots < 1:
        raise InputError("shots must be positive")
    table = simulate_counts(rho, settings(n), args.shots, args.seed)
    results = {"nqubits": n, "settings": len(table.settings), "counts": table.as_dict()["counts"]}
    if args.mle:
        fit = mle_fit(table)
        results["mle"] = {
            "iterations": fit.iterations,
            "converged": fit.converged,
            "log_likelihood": fit.log_likelihood[-1],
            "purity": purity(fit.rho),
            "fidelity": fidelity(fit.rho, psi),
        }
        if args.out:
            write_qdm(fit.rho, args.out)
            results["mle"]["output"] = {"path": args.out, "sha256": sha256_file(args.out)}
    rep = _base("tomo-sim", args.seed)
    rep["parameters"] = {"state": args.state, "shots": args.shots, "mle": args.mle}
    rep["results"] = results
    return rep


def build_parser():
    p = argparse.ArgumentParser(prog="spinwitness", description=__doc__.splitlines()[0],
                                allow_abbrev=False)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a state to a QDM file", allow_abbrev=False)
    g.add_argument("--state", required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="evaluate criteria on a QDM file", allow_abbrev=False)
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--criteria", default="pair")
    e.add_argument("--frame", default="xyz")
    e.add_argument("--ref")
    e.add_argument("--mc-samples", type=int, default=0)
    e.add_argument("--shots", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--tol", type=float, default=1e-6)
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("scan-noise", help="X along the white-noise line", allow_abbrev=False)
    s.add_argument("--state", required=True)
    s.add_argument("--steps", type=int, default=101)
    s.set_defaults(func=cmd_scan_noise)

    o = sub.add_parser("oracle", help="partial-transpose spectra of reductions", allow_abbrev=False)
    o.add_argument("--in", dest="inp", required=True)
    o.add_argument("--tol", type=float, default=1e-6)
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("tomo-sim", help="simulate Pauli tomography", allow_abbrev=False)
    t.add_argument("--state", required=True)
    t.add_argument("--shots", type=int, default=100)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--mle", action="store_true")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tomo_sim)
    return p


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "eval" and args.mc_samples and args.mc_samples < 2:
        print("error: --mc-samples needs at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = args.func(args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalAssertionError, LikelihoodError, AssertionError) as exc:
        print(f"numerical check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    stdout.write(dumps(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
