"""Command-line front end.

Exit codes: 0 success or verified, 1 a mathematical negative (impure object,
failed verification), 2 an input error.  ``--format json`` prints the
underlying data deterministically (sorted keys).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import FogusError, FormatError, ImpureObject
from .exactq import Matrix, format_rational
from . import complexes as cx
from . import homext as he
from . import ogus_core as og
from . import serialization as ser
from . import verify as vf
from . import weights as wt
from .weights import FOgObject, Verdict


class MathNegative(Exception):
    """Raised to leave with exit code 1 after the report was printed."""


def _load(ref: str, fog_prime: bool | None = None):
    return ser.load_object(ref, fog_prime=fog_prime)


def _load_complex(ref: str):
    data, folder = ser.read_json(ref)
    return ser.complex_from_json(data, ref, folder)


def _probe(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise FormatError(f"--probe: expected comma-separated primes, got {text!r}") from None
    if not ps:
        raise FormatError("--probe: empty probe set")
    for p in ps:
        if not og.is_prime(p):
            raise FormatError(f"--probe: {p} is not a prime")
    return ps


def _mat(m: Matrix):
    return ser.matrix_to_json(m)


def _write(path: str, data) -> None:
    try:
        Path(path).write_text(ser.dumps(data))
    except OSError as exc:
        raise FormatError(f"{path}: cannot write ({exc.strerror})") from None


# --------------------------------------------------------------------- verbs


def cmd_validate(args):
    data, folder = ser.read_json(args.file)
    if isinstance(data, dict) and "terms" in data:
        C = ser.complex_from_json(data, args.file, folder)
        return {"kind": "complex", "valid": True, "degrees": list(C.degrees)}
    if isinstance(data, dict) and "incl" in data:
        T = ser.extension_from_json(data, args.file, folder)
        return {"kind": "extension", "valid": True, "dim": T.E.dim}
    if isinstance(data, dict) and "b" in data:
        b = ser.element_from_json(data, args.file)
        return {"kind": "element", "valid": True, "places": sorted(b)}
    if isinstance(data, dict) and "f_dR" in data:
        f = ser.morphism_from_json(data, args.file, folder)
        return {"kind": "morphism", "valid": True, "shape": list(f.f_dR.shape)}
    if isinstance(data, dict) and ("tail_gen" in data or "exceptional" in data and "dim" not in data):
        if not (args.source and args.target):
            raise FormatError(f"{args.file}: cocycle files need --source and --target objects")
        x = ser.cocycle_from_json(data, _load(args.source), _load(args.target), args.file)
        return {"kind": "cocycle", "valid": True, "support": list(x.support)}
    X = ser.object_from_json(data, args.file)
    out = {"kind": "object", "valid": True, "dim": X.dim, "tail": list(og.base_of(X).tail),
           "places": list(og.base_of(X).places)}
    if isinstance(X, FOgObject):
        report = wt.check_weight_filtration(X)
        out["weights"] = list(X.weights.jumps)
        out["purity"] = report.verdict.value
        out["fog_prime"] = X.fog_prime
        if report.verdict is not Verdict.PURE and not X.fog_prime:
            out["valid"] = False
            raise MathNegative(out)
    return out


def cmd_hom(args):
    mode = args.mode
    fog_prime = mode == "fog-prime"
    M, N = _load(args.M, fog_prime or None), _load(args.N, fog_prime or None)
    weighted = isinstance(M, FOgObject) and isinstance(N, FOgObject)
    if mode is None:
        mode = "fog" if weighted else "og"
    if mode in ("fog", "fog-prime"):
        if not weighted:
            raise FormatError("--fog needs objects with a weights field")
        wt.validate_fog(M)
        wt.validate_fog(N)
        basis = [f.f_dR for f in wt.hom_space_fog(M, N)]
    else:
        basis = [f.f_dR for f in og.hom_space(M, N)]
    return {"mode": mode, "dim": len(basis), "basis": [_mat(b) for b in basis]}


def cmd_ihom(args):
    M, N = _load(args.M), _load(args.N)
    if isinstance(M, FOgObject) and isinstance(N, FOgObject):
        H = wt.internal_hom_fog(M, N)
    else:
        H = og.internal_hom(M, N)
    out = ser.object_to_json(H)
    if args.output:
        _write(args.output, out)
    return out


def cmd_twist(args):
    M = _load(args.M)
    T = wt.tate_twist_fog(M, args.n) if isinstance(M, FOgObject) else og.tate_twist(M, args.n)
    out = ser.object_to_json(T)
    if args.output:
        _write(args.output, out)
    return out


def cmd_check_pure(args):
    M = _load(args.M)
    if not isinstance(M, FOgObject):
        raise FormatError(f"{args.M}: purity needs a weights field")
    tol = wt.parse_tolerance(args.tol) if args.tol else None
    report = wt.check_weight_filtration(M, tol)
    if args.place is not None:
        report = report.restricted([None if args.place == "tail" else int(args.place)])
        if not report.entries:
            raise FormatError(f"--place {args.place}: not a place of this object")
    entries = [{
        "weight": e.index,
        "place": "tail" if e.place is None else e.place,
        "verdict": e.verdict.value,
        "intervals": [[format_rational(iv.lower), format_rational(iv.upper), iv.multiplicity]
                      for iv in e.intervals],
    } for e in report.entries]
    out = {"verdict": report.verdict.value, "pieces": entries}
    if report.verdict is not Verdict.PURE:
        raise MathNegative(out)
    return out


def _ext_objects(args):
    M, N = _load(args.M), _load(args.N)
    mode = "og" if getattr(args, "og", False) or not (
        isinstance(M, FOgObject) and isinstance(N, FOgObject)) else "fog"
    if mode == "fog":
        wt.validate_fog(M)
        wt.validate_fog(N)
    return M, N, mode


def cmd_ext1(args):
    M, N, mode = _ext_objects(args)
    probe = _probe(args.probe) if args.probe else None
    xs, classes = [], []
    for ref in args.cocycles:
        data, _ = ser.read_json(ref)
        x = ser.cocycle_from_json(data, M, N, ref, mode)
        h = he.is_coboundary(x, probe)
        xs.append(x)
        classes.append({"file": ref, "coboundary": h is not None,
                        "h": None if h is None else _mat(h)})
    return {"mode": mode, "probe": list(probe) if probe else None,
            "rank": he.ext1_rank(M, N, xs, mode, probe), "classes": classes}


def cmd_build_ext(args):
    M, N, mode = _ext_objects(args)
    data, _ = ser.read_json(args.X)
    x = ser.cocycle_from_json(data, M, N, args.X, mode)
    out = ser.extension_to_json(he.build_extension(x))
    _write(args.output, out)
    return {"written": args.output, "dim": M.dim + N.dim}


def _load_extension(ref: str):
    data, folder = ser.read_json(ref)
    return ser.extension_from_json(data, ref, folder)


def cmd_extract_class(args):
    T = _load_extension(args.E)
    x = he.extract_class(T)
    return ser.cocycle_to_json(x)


def cmd_baer_sum(args):
    T = he.baer_sum(_load_extension(args.E1), _load_extension(args.E2))
    out = ser.extension_to_json(T)
    if args.output:
        _write(args.output, out)
    return out


def cmd_ext(args):
    M, N = _load_complex(args.M), _load_complex(args.N)
    probe = _probe(args.probe)
    dim, basis = cx.ext_groups(M, N, args.degree, probe, weights=not args.og)
    return {"degree": args.degree, "probe": list(probe), "weights": not args.og, "dim": dim,
            "basis": [[format_rational(x) for x in basis.col(j)] for j in range(basis.cols)]}


def cmd_kill_cocycle(args):
    M, N = _load_complex(args.M), _load_complex(args.N)
    data, _ = ser.read_json(args.B)
    b = ser.element_from_json(data, args.B)
    probe = _probe(args.probe) if args.probe else tuple(sorted(b))
    if not probe:
        raise FormatError("kill-cocycle: empty probe (give --probe or a nonempty b)")
    r = cx.kill_cocycle(M, N, b, probe)
    _write(args.output, ser.complex_to_json(r.E))
    qis = cx.is_quasi_iso(r.qis)
    out = {"written": args.output, "probe": list(probe), "quasi_isomorphism": qis,
           "degrees": list(r.E.degrees)}
    if not qis:
        raise MathNegative(out)
    return out


def cmd_verify(args):
    names = list(vf.SUITES) if args.suite == "all" else [args.suite]
    results = [vf.run_suite(n, args.seed, args.trials) for n in names]
    out = {"seed": args.seed, "suites": [r.to_json() for r in results],
           "passed": all(r.passed for r in results)}
    if not out["passed"]:
        raise MathNegative(out)
    return out


# ----------------------------------------------------------------- plumbing


def _render(verb: str, out) -> str:
    """Short human-readable form; the JSON form carries everything."""
    if verb == "verify":
        lines = []
        for s in out["suites"]:
            status = "PASS" if s["passed"] else "FAIL"
            info = ", ".join(f"{k}={v}" for k, v in sorted(s["details"].items()) if k != "cases")
            lines.append(f"{status} {s['name']}" + (f" ({info})" if info else ""))
            lines.extend(f"  {f}" for f in s["failures"][:10])
        return "\n".join(lines)
    if verb == "check-pure":
        lines = [f"verdict: {out['verdict']}"]
        for e in out["pieces"]:
            lines.append(f"  Gr_{e['weight']} at {e['place']}: {e['verdict']}")
        return "\n".join(lines)
    if verb == "hom":
        lines = [f"Hom ({out['mode']}): dimension {out['dim']}"]
        lines.extend(f"  {b}" for b in out["basis"])
        return "\n".join(lines)
    if verb == "ext1":
        lines = [f"rank: {out['rank']}"]
        for c in out["classes"]:
            state = f"coboundary of {c['h']}" if c["coboundary"] else "nontrivial"
            lines.append(f"  {c['file']}: {state}")
        return "\n".join(lines)
    if verb == "ext":
        return f"Ext^{out['degree']} over probe {out['probe']}: dimension {out['dim']}"
    if isinstance(out, dict) and "kind" in out:
        extra = ", ".join(f"{k}={v}" for k, v in out.items() if k not in ("kind", "valid"))
        return f"{out['kind']}: {'valid' if out['valid'] else 'INVALID'} ({extra})"
    return ser.dumps(out).rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default: text)")
    p = argparse.ArgumentParser(prog="fogus", parents=[common],
                                description="Filtered Ogus objects: Hom, Ext and extensions over Q.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate any supported file")
    s.add_argument("file")
    s.add_argument("--source", help="source object, for cocycle files")
    s.add_argument("--target", help="target object, for cocycle files")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("hom", parents=[common], help="basis of Hom(M, N)")
    s.add_argument("M")
    s.add_argument("N")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--og", dest="mode", action="store_const", const="og")
    g.add_argument("--fog", dest="mode", action="store_const", const="fog")
    g.add_argument("--fog-prime", dest="mode", action="store_const", const="fog-prime")
    s.set_defaults(fn=cmd_hom, mode=None)

    s = sub.add_parser("ihom", parents=[common], help="internal Hom object")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_ihom)

    s = sub.add_parser("twist", parents=[common], help="Tate twist M(n)")
    s.add_argument("M")
    s.add_argument("n", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_twist)

    s = sub.add_parser("check-pure", parents=[common], help="purity of the graded pieces")
    s.add_argument("M")
    s.add_argument("--tol", help="certification tolerance (default $FOGUS_DEFAULT_TOL or 1e-20)")
    s.add_argument("--place", help="restrict to one prime, or 'tail'")
    s.set_defaults(fn=cmd_check_pure)

    s = sub.add_parser("ext1", parents=[common], help="rank of cocycle classes in Ext^1(M, N)")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("--cocycles", nargs="+", required=True)
    s.add_argument("--probe", help="truncate to these primes, e.g. 2,3")
    s.add_argument("--og", action="store_true", help="ignore weights")
    s.set_defaults(fn=cmd_ext1)

    s = sub.add_parser("build-ext", parents=[common], help="extension E_x of a cocycle")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("X")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--og", action="store_true", help="ignore weights")
    s.set_defaults(fn=cmd_build_ext)

    s = sub.add_parser("extract-class", parents=[common], help="cocycle of an extension file")
    s.add_argument("E")
    s.set_defaults(fn=cmd_extract_class)

    s = sub.add_parser("baer-sum", parents=[common], help="Baer sum of two extensions")
    s.add_argument("E1")
    s.add_argument("E2")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_baer_sum)

    s = sub.add_parser("ext", parents=[common], help="Ext^i of complexes over a probe")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--probe", required=True)
    s.add_argument("--og", action="store_true", help="ignore weights")
    s.set_defaults(fn=cmd_ext)

    s = sub.add_parser("kill-cocycle", parents=[common], help="complex E killing a degree-0 element")
    s.add_argument("M")
    s.add_argument("N")
    s.add_argument("B")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--probe", help="defaults to the primes appearing in B")
    s.set_defaults(fn=cmd_kill_cocycle)

    s = sub.add_parser("verify", parents=[common], help="run a self-verification suite")
    s.add_argument("suite", choices=sorted(vf.SUITES) + ["all"])
    s.add_argument("--seed", type=int, default=vf.DEFAULT_SEED)
    s.add_argument("--trials", type=int)
    s.set_defaults(fn=cmd_verify)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    code = 0
    try:
        out = args.fn(args)
    except MathNegative as neg:
        out, code = neg.args[0], 1
    except ImpureObject as exc:
        out, code = {"error": str(exc), "kind": "impure"}, 1
    except (FogusError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"fogus {args.verb}: error: {exc}", file=stderr)
        return 2
    if args.format == "json":
        stdout.write(ser.dumps(out))
    elif "error" in out:
        print(f"fogus {args.verb}: {out['error']}", file=stdout)
    else:
        print(_render(args.verb, out), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
