"""Command line front end.

Subcommands: generate, check, certify, identities.  Exit codes: 0 when all
requested checks pass, 1 for a mathematical failure (failed check, failed
hypothesis, violated identity), 2 for usage or parse errors.  Machine
output (JSON / JSON-lines) goes to --out or stdout; the human summary goes
to stderr.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .conditions import (BlockSplit, PreconditionError, block_condition_report,
                         einstein_deficit, shift_equivalence_check,
                         two_stein_certificate, hc2_residual)
from .core import (CurvatureTensor, ParseError, emit_tensor, parse_tensor,
                   shift, validate_symmetries)
from .fields import FieldError, field_by_name
from .proof_engine import (HypothesisError, case1_identity_check,
                           coefficient_forms, constant_curvature_deduction,
                           final_quadratic_form, q4_psd_witness,
                           select_xi_eta, symmetrized_trace_direct,
                           symmetrized_trace_formula)
from .proof_engine.symfuncs import random_zvector
from .sampling import RNG_NAME, derived_seed, orthonormal_pair, permutation_matrix, rotate_tensor
from .zoo import ZooSpec, generate, random_block_tensor

CHECK_NAMES = ("symmetries", "einstein", "two_stein", "hc2", "block", "shift_equiv")


def _hash_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _write_out(out_path, text):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(msg):
    print(msg, file=sys.stderr)


def _load_tensor(path, field_override=None):
    with open(path) as fh:
        text = fh.read()
    T = parse_tensor(text)
    if field_override and field_override != T.field.name:
        target = field_by_name(field_override)
        if T.field.is_exact and not target.is_exact:
            ent = target.empty_array((T.n,) * 4)
            import itertools

            for idx in itertools.product(range(T.n), repeat=4):
                ent[idx] = target.coerce(T.entries[idx])
            T = CurvatureTensor(T.n, target, ent)
        else:
            raise ParseError(
                f"cannot convert field {T.field.name!r} to {field_override!r}")
    return T, _hash_text(text)


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def _spec_from_args(args) -> ZooSpec:
    if args.spec:
        with open(args.spec) as fh:
            return ZooSpec.from_json(fh.read())
    if not args.kind:
        raise ParseError("either a kind or --spec is required")
    params = {}
    if args.kind == "constant":
        params = {"dim": _need(args.dim, "--dim"), "kappa": args.kappa or "1"}
    elif args.kind == "complex_space_form":
        params = {"m": _need(args.m, "--m"), "c": args.c or "4"}
    elif args.kind == "quaternionic_space_form":
        params = {"q": _need(args.q, "--q"), "c": args.c or "4"}
    elif args.kind == "su3_so3":
        params = {"scale": args.scale or "1"}
    elif args.kind == "product_spheres":
        split = _need(args.split, "--split")
        params = {"p": split[0], "q": split[1],
                  "kappa1": args.kappa or "1", "kappa2": args.kappa2 or "1"}
    elif args.kind == "random":
        params = {"dim": _need(args.dim, "--dim")}
    elif args.kind == "random_block":
        split = _need(args.split, "--split")
        params = {"d1": split[0], "d2": split[1]}
    else:
        raise ParseError(f"unknown kind {args.kind!r}")
    return ZooSpec(kind=args.kind, params=params, seed=args.seed)


def _need(value, flag):
    if value is None:
        raise ParseError(f"{flag} is required for this kind")
    return value


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    T = generate(spec, args.field)
    report = validate_symmetries(T)
    text = emit_tensor(T)
    _write_out(args.out, text)
    _say(f"generated {spec.kind} tensor: dim={T.n} field={T.field.name} "
         f"symmetry violations={len(report)}")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _run_check(name, T, args):
    tol = args.tolerance if args.tolerance is not None else T.field.default_tolerance
    if name == "symmetries":
        rep = validate_symmetries(T, tolerance=args.tolerance)
        worst = max((v.residual for v in rep.violations), default=0.0)
        return {"check": "symmetries", "verdict": "valid" if rep.ok else "invalid",
                "residuals": {"max": worst, "count": len(rep)},
                "tolerance": tol}, rep.ok
    if name == "einstein":
        lam, deficit = einstein_deficit(T)
        ok = deficit == 0.0 if T.field.is_exact else deficit <= tol
        return {"check": "einstein", "verdict": "einstein" if ok else "not_einstein",
                "residuals": {"deficit": deficit}, "lambda": str(lam),
                "tolerance": tol}, ok
    if name == "two_stein":
        cert = two_stein_certificate(T, tolerance=args.tolerance)
        rep = cert.to_report(tol)
        return rep, cert.verdict == "two_stein"
    if name == "hc2":
        worst = 0.0
        for s in range(args.samples):
            X, Y = orthonormal_pair(T.n, derived_seed(args.seed, s), T.field)
            r = T.field.magnitude(hc2_residual(T, X, Y, tolerance=args.tolerance))
            worst = max(worst, r)
        ok = worst == 0.0 if T.field.is_exact else worst <= tol
        return {"check": "hc2", "verdict": "holds" if ok else "fails",
                "residuals": {"max": worst}, "samples": args.samples,
                "seed": args.seed, "rng": RNG_NAME, "tolerance": tol}, ok
    if name == "block":
        if not args.split:
            raise ParseError("--split d1 d2 is required for the block check")
        rep = block_condition_report(T, BlockSplit(*args.split), tolerance=args.tolerance)
        return rep, rep["verdict"] == "compatible"
    if name == "shift_equiv":
        rep = shift_equivalence_check(T, samples=args.samples, seed=args.seed,
                                      tolerance=args.tolerance)
        identity_ok = rep["residuals"]["identity_max"] == 0.0 if T.field.is_exact \
            else rep["residuals"]["identity_max"] <= tol
        return rep, rep["verdict"] == "equivalent" and identity_ok
    raise ParseError(f"unknown check {name!r}")


def cmd_check(args) -> int:
    T, input_hash = _load_tensor(args.tensor, args.field)
    lines = []
    all_ok = True
    for name in args.checks:
        rep, ok = _run_check(name, T, args)
        rep.update({"tool": "twostein", "version": __version__,
                    "input_hash": input_hash})
        lines.append(json.dumps(rep, sort_keys=True, default=str))
        all_ok = all_ok and ok
        _say(f"{name}: {rep['verdict']}")
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def cmd_certify(args) -> int:
    T, input_hash = _load_tensor(args.tensor, args.field)
    if T.n < 5:
        raise ParseError(f"unsupported dimension {T.n}: certification needs n >= 5")
    if not args.split:
        raise ParseError("--split d1 d2 is required")
    d1, d2 = args.split
    if d1 + d2 != T.n:
        raise ParseError(f"split ({d1},{d2}) does not sum to dimension {T.n}")
    cT = shift(T)
    if d1 > d2:
        # relabel coordinates so the smaller block comes first
        perm = list(range(d1, T.n)) + list(range(d1))
        cT = rotate_tensor(cT, permutation_matrix(T.n, perm, cT.field))
        d1, d2 = d2, d1
    split = BlockSplit(d1, d2)
    meta = {"tool": "twostein", "version": __version__, "input_hash": input_hash,
            "config": {"split": [d1, d2], "tolerance": args.tolerance,
                       "seed": args.seed}}
    try:
        result = constant_curvature_deduction(cT, split, tolerance=args.tolerance,
                                              seed=args.seed)
    except HypothesisError as exc:
        doc = dict(meta, verdict="hypothesis_failed", hypothesis=exc.hypothesis,
                   message=str(exc))
        _write_out(args.out, json.dumps(doc, sort_keys=True, default=str) + "\n")
        _say(f"certify: hypothesis failed: {exc.hypothesis}")
        return 1
    doc = dict(meta, verdict=result.verdict,
               curvature=None if result.curvature is None else str(result.curvature),
               trace=result.trace)
    _write_out(args.out, json.dumps(doc, sort_keys=True, default=str) + "\n")
    if result.ok:
        _say(f"certify: constant curvature {result.curvature} (shifted tensor)")
        return 0
    _say("certify: violation")
    return 1


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def cmd_identities(args) -> int:
    if not args.split:
        raise ParseError("--split d1 d2 is required")
    d1, d2 = args.split
    if d1 > d2:
        d1, d2 = d2, d1
    split = BlockSplit(d1, d2)
    if split.n < 5:
        raise ParseError("identities need d1 + d2 >= 5")
    comparisons = []
    all_ok = True

    for s in range(args.seeds):
        seed = derived_seed(args.seed, s)
        T = random_block_tensor(d1, d2, seed)
        entry = {"seed": seed, "ledger_dual_path": True}
        try:
            ledger = coefficient_forms(T, split)
        except AssertionError as exc:  # pragma: no cover - internal bug guard
            entry["ledger_dual_path"] = False
            entry["error"] = str(exc)
            comparisons.append(entry)
            all_ok = False
            continue
        direct_ok = True
        for t in range(10):
            X = random_zvector(split, derived_seed(seed, t))
            direct = symmetrized_trace_direct(T, split, X)
            formula = symmetrized_trace_formula(T, split, X, ledger=ledger)
            if direct != formula:
                direct_ok = False
        entry["direct_equals_formula"] = direct_ok
        if d1 == 1:
            lhs, sos = case1_identity_check(T, split, ledger=ledger)
            entry["singleton_identity"] = (lhs == sos)
            ok = direct_ok and entry["singleton_identity"]
        else:
            w = select_xi_eta(d1, d2)
            dec = final_quadratic_form(T, split, w, ledger=ledger)
            witness = q4_psd_witness(split, w)
            entry["decomposition_sums"] = (dec.total == dec.q1 + dec.q2 + dec.q3 + dec.q4)
            entry["parts_nonnegative"] = all(p >= 0 for p in (dec.q1, dec.q2, dec.q3, dec.q4))
            entry["q4_witness"] = witness.passes
            ok = (direct_ok and entry["decomposition_sums"]
                  and entry["parts_nonnegative"] and entry["q4_witness"])
        comparisons.append(entry)
        all_ok = all_ok and ok

    doc = {"tool": "twostein", "version": __version__,
           "config": {"split": [d1, d2], "seeds": args.seeds, "seed": args.seed,
                      "rng": RNG_NAME},
           "comparisons": comparisons,
           "all_pass": all_ok}
    _write_out(args.out, json.dumps(doc, sort_keys=True, default=str) + "\n")
    _say(f"identities ({d1},{d2}): {'all pass' if all_ok else 'FAILURES'} "
         f"over {args.seeds} seeds")
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twostein",
                                 description="algebraic curvature tensor toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a zoo tensor to JSON")
    g.add_argument("kind", nargs="?", choices=(
        "constant", "complex_space_form", "quaternionic_space_form",
        "su3_so3", "product_spheres", "random", "random_block"))
    g.add_argument("--spec", help="ZooSpec JSON file (alternative to kind)")
    g.add_argument("--dim", type=int)
    g.add_argument("--m", type=int, help="complex dimension")
    g.add_argument("--q", type=int, help="quaternionic dimension")
    g.add_argument("--kappa", help="curvature value")
    g.add_argument("--kappa2", help="second curvature value")
    g.add_argument("--c", help="holomorphic/quaternionic curvature value")
    g.add_argument("--scale", help="metric scale")
    g.add_argument("--split", type=int, nargs=2, metavar=("D1", "D2"))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--field", default="rational", choices=("rational", "f64"))
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("check", help="run condition checks on a tensor file")
    c.add_argument("tensor")
    c.add_argument("--checks", nargs="+", choices=CHECK_NAMES, default=["symmetries"])
    c.add_argument("--split", type=int, nargs=2, metavar=("D1", "D2"))
    c.add_argument("--samples", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tolerance", type=float, default=None)
    c.add_argument("--field", default=None, choices=("rational", "f64"))
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    ce = sub.add_parser("certify", help="run the constant-curvature certification")
    ce.add_argument("tensor")
    ce.add_argument("--split", type=int, nargs=2, metavar=("D1", "D2"))
    ce.add_argument("--tolerance", type=float, default=None)
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--field", default=None, choices=("rational", "f64"))
    ce.add_argument("--out")
    ce.set_defaults(func=cmd_certify)

    i = sub.add_parser("identities", help="certify the symmetrization identities")
    i.add_argument("--split", type=int, nargs=2, metavar=("D1", "D2"))
    i.add_argument("--seeds", type=int, default=50)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--out")
    i.set_defaults(func=cmd_identities)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, FieldError, PreconditionError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        _say(f"error: {exc}")
        return 2
    except ValueError as exc:
        _say(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
