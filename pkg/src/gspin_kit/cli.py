"""Command-line surface: every library capability as a deterministic batch
command over exact inputs.

Exit codes: 0 success, 2 usage or parse error, 3 internal criterion
disagreement (a library bug), 4 domain or convergence error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import clifford, conjugacy, g2, rootdata, satake, weights
from .algebra_core import TwistNotRepresentable
from .conjugacy import GSpinTorusPoint
from .rootdata import GroupTag, WeightVector
from .scalars import format_scalar, parse_rational
from .weights import AffineCone, HTCocharacter

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL_DISAGREEMENT = 3
EXIT_DOMAIN = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _parse_json(blob: str, what: str) -> dict:
    try:
        return json.loads(blob)
    except json.JSONDecodeError as e:
        raise CliError(f"malformed JSON for {what}: {e}") from e


def _parse_point(blob: str, what: str) -> GSpinTorusPoint:
    data = _parse_json(blob, what)
    try:
        return GSpinTorusPoint.deserialize(data)
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as e:
        raise CliError(f"invalid torus point for {what}: {e}") from e


def _parse_csv_rationals(blob: str, what: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(x) for x in blob.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise CliError(f"invalid {what}: {e}") from e


# ---------------------------------------------------------------------------
# conj


def cmd_conj(args) -> int:
    t1 = _parse_point(args.t1, "--t1")
    t2 = _parse_point(args.t2, "--t2")
    if t1.n != t2.n:
        raise CliError("rank mismatch between --t1 and --t2")
    gspin = conjugacy.gspin_conjugate(t1, t2)
    steinberg = conjugacy.steinberg_conjugate(t1, t2)
    std = conjugacy.std_conjugate(t1, t2)
    flags = {}
    for name, t in (("t1", t1), ("t2", t2)):
        flags[name] = {
            "bad_position": conjugacy.in_bad_position(t),
            "sign_twist_conjugate": conjugacy.sign_twist_conjugate(t),
        }
    payload = {
        "input": {"t1": t1.serialize(), "t2": t2.serialize()},
        "gspin_conjugate": gspin,
        "steinberg_conjugate": steinberg,
        "std_conjugate": std,
        "flags": flags,
    }
    lines = [
        f"gspin-conjugate:     {gspin}",
        f"steinberg-conjugate: {steinberg}",
        f"std-conjugate:       {std}",
    ]
    for name in ("t1", "t2"):
        lines.append(
            f"{name}: bad-position={flags[name]['bad_position']} "
            f"sign-twist-conjugate={flags[name]['sign_twist_conjugate']}"
        )
    _emit(args, payload, lines)
    if gspin != steinberg:
        print("criterion disagreement: gspin vs steinberg", file=sys.stderr)
        return EXIT_INTERNAL_DISAGREEMENT
    for name in ("t1", "t2"):
        if flags[name]["bad_position"] != flags[name]["sign_twist_conjugate"]:
            print(f"criterion disagreement: bad position vs sign twist ({name})", file=sys.stderr)
            return EXIT_INTERNAL_DISAGREEMENT
    return EXIT_OK


# ---------------------------------------------------------------------------
# lfactor / lsum


def _load_store(path: str) -> list[satake.StoreRecord]:
    try:
        return satake.load_store_file(path)
    except OSError as e:
        raise CliError(f"cannot read store: {e}") from e
    except satake.StoreError as e:
        raise CliError(str(e)) from e


def cmd_lfactor(args) -> int:
    records = _load_store(args.store)
    factors = []
    lines = []
    for rec in records:
        factor = satake.euler_factor(rec.param, args.rep)
        entry = factor.serialize()
        if rec.label is not None:
            entry["label"] = rec.label
        factors.append(entry)
        label = f" label={rec.label}" if rec.label is not None else ""
        lines.append(f"q={rec.param.q}{label} {args.rep}: {factor}")
    payload = {
        "input": {"store": [r.serialize() for r in records], "rep": args.rep},
        "factors": factors,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_lsum(args) -> int:
    records = _load_store(args.store)
    params = [r.param for r in records]
    try:
        value, ledger = satake.partial_l_value(params, args.rep, args.s, args.cutoff)
    except satake.ConvergenceError as e:
        print(str(e), file=sys.stderr)
        return EXIT_DOMAIN
    payload = {
        "input": {
            "store": [r.serialize() for r in records],
            "rep": args.rep,
            "s": args.s,
            "cutoff": args.cutoff,
        },
        "value": value,
        "ledger": ledger,
    }
    lines = [f"partial L-value ({args.rep}, s={args.s}, q <= {args.cutoff}): {value!r}"]
    for entry in ledger:
        lines.append(f"  q={entry['q']}: factor={entry['value']!r} poly={entry['poly']}")
    if args.report_dir:
        from .report import render_lsum_report

        paths = render_lsum_report(
            args.report_dir, args.rep, args.s, args.cutoff, value, ledger
        )
        payload["report"] = paths
        lines.append(f"report written: {paths['csv']}, {paths['figure']}")
    _emit(args, payload, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# weights / classicality


def cmd_weights(args) -> int:
    mu = _parse_csv_rationals(args.mu, "--mu")
    n = args.n
    lines = []
    payload: dict = {"input": {"n": n, "mu": [format_scalar(c) for c in mu]}}
    if args.weights_cmd == "check":
        if len(mu) != n:
            raise CliError(f"--mu must have {n} coordinates")
        w1 = weights.ht1_witness(mu)
        payload["HT1"] = {"pass": w1 is None, "witness_x": w1}
        lines.append("HT1: PASS" if w1 is None else f"HT1: FAIL (x={w1})")
        if n == 3:
            w2 = weights.ht2_witness(mu)
            payload["HT2"] = {"pass": w2 is None, "witness": list(w2) if w2 else None}
            lines.append(
                "HT2: PASS" if w2 is None else f"HT2: FAIL (a={w2[0]},b={w2[1]})"
            )
        payload["spin_regular"] = weights.is_spin_regular(mu)
        payload["std_regular"] = weights.is_std_regular(mu)
        lines.append(f"spin-regular: {payload['spin_regular']}")
        lines.append(f"std-regular: {payload['std_regular']}")
        _emit(args, payload, lines)
        return EXIT_OK
    if args.weights_cmd == "cshift":
        if len(mu) != n + 1:
            raise CliError(f"--mu must have {n + 1} coordinates (similitude first)")
        cochar = HTCocharacter(GroupTag("GSpin", n), mu)
        shifted = weights.c_shift(cochar, inverse=args.inverse)
        payload["input"]["inverse"] = args.inverse
        payload["shifted"] = [format_scalar(c) for c in shifted.coords]
        lines.append("shifted: " + ",".join(payload["shifted"]))
        _emit(args, payload, lines)
        return EXIT_OK
    raise CliError("unknown weights subcommand")


def _parse_eta(args, n: int) -> WeightVector:
    if getattr(args, "eta", None):
        coords = _parse_csv_rationals(args.eta, "--eta")
        if len(coords) != n + 1:
            raise CliError(f"--eta must have {n + 1} exponents (similitude first)")
        return WeightVector(GroupTag("GSp", n), coords, "coweight")
    return weights.default_eta(n)


def cmd_classicality(args) -> int:
    if args.classicality_cmd == "bound":
        wcoords = _parse_csv_rationals(args.w, "--w")
        if len(wcoords) != args.n + 1:
            raise CliError(f"--w must have {args.n + 1} coordinates (similitude first)")
        eta = _parse_eta(args, args.n)
        w = WeightVector(GroupTag("GSp", args.n), wcoords)
        bound = weights.classicality_bound(w, eta)
        vbeta = parse_rational(args.vbeta)
        verdict = vbeta < bound
        payload = {
            "input": {
                "n": args.n,
                "w": [format_scalar(c) for c in wcoords],
                "vbeta": format_scalar(vbeta),
                "eta": [format_scalar(c) for c in eta.coords],
            },
            "bound": format_scalar(bound),
            "small_slope": verdict,
        }
        lines = [
            f"classicality bound: {format_scalar(bound)}",
            f"v(beta) = {format_scalar(vbeta)} < bound: {verdict}",
        ]
        _emit(args, payload, lines)
        return EXIT_OK
    if args.classicality_cmd == "admissible":
        data = _parse_json(args.cone, "--cone")
        try:
            cone = AffineCone.deserialize(data)
        except (KeyError, ValueError, TypeError) as e:
            raise CliError(f"invalid cone: {e}") from e
        eta = _parse_eta(args, cone.dim)
        verdict = weights.is_admissible(cone, eta)
        payload = {
            "input": {
                "cone": cone.serialize(),
                "eta": [format_scalar(c) for c in eta.coords],
            },
            "admissible": verdict,
        }
        _emit(args, payload, [f"admissible: {verdict}"])
        return EXIT_OK
    raise CliError("unknown classicality subcommand")


# ---------------------------------------------------------------------------
# g2 / clifford


def cmd_g2(args) -> int:
    try:
        x = parse_rational(args.x)
        y = parse_rational(args.y)
        point = g2.G2TorusPoint(x, y)
    except (ValueError, ZeroDivisionError) as e:
        raise CliError(f"invalid torus point: {e}") from e
    embedded = g2.embed_so7(point)
    ts, td, ok = g2.spin_restriction_check(point)
    payload = {
        "input": {"x": format_scalar(x), "y": format_scalar(y)},
        "embedding": embedded.serialize(),
        "trace_spin": format_scalar(ts),
        "trace_std": format_scalar(td),
        "restriction_ok": ok,
    }
    lines = [
        f"embedded class: c={format_scalar(embedded.c)} "
        f"a=({', '.join(format_scalar(v) for v in embedded.a)})",
        f"trace spin = {format_scalar(ts)}, trace std = {format_scalar(td)}",
        f"8 = 7 (+) 1 restriction: {'OK' if ok else 'FAIL'}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_INTERNAL_DISAGREEMENT


def _parse_multivector(blob: str, n: int, what: str) -> clifford.Multivector:
    data = _parse_json(blob, what)
    if "n" not in data:
        data = {"n": n, "terms": data.get("terms", data)}
    if data["n"] != n:
        raise CliError(f"{what}: rank mismatch with --n")
    try:
        return clifford.Multivector.deserialize(data)
    except (KeyError, ValueError, TypeError) as e:
        raise CliError(f"invalid multivector for {what}: {e}") from e


def cmd_clifford(args) -> int:
    n = args.n
    if args.clifford_cmd == "mul":
        a = _parse_multivector(args.a, n, "--a")
        b = _parse_multivector(args.b, n, "--b")
        prod = clifford.cliff_mul(a, b)
        payload = {
            "input": {"a": a.serialize(), "b": b.serialize(), "anticommutator": args.anticommutator},
            "product": prod.serialize(),
        }
        lines = [f"a*b = {prod}"]
        if args.anticommutator:
            anti = prod + clifford.cliff_mul(b, a)
            payload["anticommutator"] = anti.serialize()
            lines.append(f"a*b + b*a = {anti}")
        _emit(args, payload, lines)
        return EXIT_OK
    if args.clifford_cmd == "norm":
        x = _parse_multivector(args.x, n, "--x")
        try:
            norm = clifford.spinor_norm(x)
        except clifford.NotInGSpinError as e:
            print(str(e), file=sys.stderr)
            return EXIT_DOMAIN
        payload = {"input": {"x": x.serialize()}, "spinor_norm": format_scalar(norm)}
        _emit(args, payload, [f"spinor norm: {format_scalar(norm)}"])
        return EXIT_OK
    if args.clifford_cmd == "go":
        x = _parse_multivector(args.x, n, "--x")
        try:
            matrix, sim = clifford.gspin_to_go(x)
        except clifford.NotInGSpinError as e:
            print(str(e), file=sys.stderr)
            return EXIT_DOMAIN
        payload = {
            "input": {"x": x.serialize()},
            "matrix": [[format_scalar(v) for v in row] for row in matrix],
            "similitude": format_scalar(sim),
        }
        lines = ["orthogonal image (rows):"]
        lines.extend("  " + " ".join(format_scalar(v) for v in row) for row in matrix)
        lines.append(f"similitude factor: {format_scalar(sim)}")
        _emit(args, payload, lines)
        return EXIT_OK
    raise CliError("unknown clifford subcommand")


# ---------------------------------------------------------------------------
# store


def cmd_store(args) -> int:
    records = _load_store(getattr(args, "infile"))
    payload = {
        "input": {"records": [r.serialize() for r in records]},
        "count": len(records),
    }
    lines = [f"valid store: {len(records)} records"]
    if args.store_cmd == "ingest":
        text = satake.dump_store(records)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        payload["out"] = args.out
        lines.append(f"canonicalized store written to {args.out}")
    _emit(args, payload, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gspin-kit",
        description="Exact computations in general spin groups: conjugacy, "
        "local factors, weight predicates, slope bounds.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("conj", help="conjugacy criteria for two torus points")
    p.add_argument("--t1", required=True, help='point JSON {"n":2,"c":"6","a":["2","3"]}')
    p.add_argument("--t2", required=True)
    add_json(p)
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("lfactor", help="Euler factors for a JSONL store")
    p.add_argument("--store", required=True)
    p.add_argument("--rep", choices=satake.REPRESENTATIONS, default="spin")
    add_json(p)
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("lsum", help="truncated partial L-value over a store")
    p.add_argument("--store", required=True)
    p.add_argument("--rep", choices=satake.REPRESENTATIONS, default="spin")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--report-dir", help="write terms.csv and a convergence figure here")
    add_json(p)
    p.set_defaults(func=cmd_lsum)

    p = sub.add_parser("weights", help="Hodge-side predicates and shifts")
    wsub = p.add_subparsers(dest="weights_cmd", required=True)
    pc = wsub.add_parser("check", help="regularity and exclusion patterns")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--mu", required=True, help="comma-separated coordinates")
    add_json(pc)
    pc.set_defaults(func=cmd_weights)
    ps = wsub.add_parser("cshift", help="similitude normalization shift")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--mu", required=True, help="n+1 coordinates, similitude first")
    ps.add_argument("--inverse", action="store_true")
    add_json(ps)
    ps.set_defaults(func=cmd_weights)

    p = sub.add_parser("classicality", help="small-slope bounds and cones")
    csub = p.add_subparsers(dest="classicality_cmd", required=True)
    pb = csub.add_parser("bound", help="small-slope classicality bound")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--w", required=True, help="weight, similitude first")
    pb.add_argument("--vbeta", required=True, help="valuation of the eigenvalue")
    pb.add_argument("--eta", help="cocharacter exponents, similitude first")
    add_json(pb)
    pb.set_defaults(func=cmd_classicality)
    pa = csub.add_parser("admissible", help="cone admissibility")
    pa.add_argument("--cone", required=True, help='cone JSON {"functionals":...,"thresholds":...}')
    pa.add_argument("--eta")
    add_json(pa)
    pa.set_defaults(func=cmd_classicality)

    p = sub.add_parser("g2", help="exceptional-torus checks")
    gsub = p.add_subparsers(dest="g2_cmd", required=True)
    pg = gsub.add_parser("check", help="embedding and 8 = 7 (+) 1 restriction")
    pg.add_argument("--x", required=True)
    pg.add_argument("--y", required=True)
    add_json(pg)
    pg.set_defaults(func=cmd_g2)

    p = sub.add_parser("clifford", help="Clifford algebra operations")
    clsub = p.add_subparsers(dest="clifford_cmd", required=True)
    pm = clsub.add_parser("mul", help="product of two multivectors")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--a", required=True)
    pm.add_argument("--b", required=True)
    pm.add_argument("--anticommutator", action="store_true")
    add_json(pm)
    pm.set_defaults(func=cmd_clifford)
    pn = clsub.add_parser("norm", help="spinor norm of an even multivector")
    pn.add_argument("--n", type=int, required=True)
    pn.add_argument("--x", required=True)
    add_json(pn)
    pn.set_defaults(func=cmd_clifford)
    pgo = clsub.add_parser("go", help="orthogonal image of a GSpin element")
    pgo.add_argument("--n", type=int, required=True)
    pgo.add_argument("--x", required=True)
    add_json(pgo)
    pgo.set_defaults(func=cmd_clifford)

    p = sub.add_parser("store", help="JSONL parameter store utilities")
    ssub = p.add_subparsers(dest="store_cmd", required=True)
    pv = ssub.add_parser("validate", help="parse and validate a store")
    pv.add_argument("--in", dest="infile", required=True)
    add_json(pv)
    pv.set_defaults(func=cmd_store)
    pi = ssub.add_parser("ingest", help="validate and rewrite canonicalized")
    pi.add_argument("--in", dest="infile", required=True)
    pi.add_argument("--out", required=True)
    add_json(pi)
    pi.set_defaults(func=cmd_store)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    try:
        return args.func(args)
    except CliError as e:
        print(str(e), file=sys.stderr)
        return e.code
    except TwistNotRepresentable as e:
        print(str(e), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
