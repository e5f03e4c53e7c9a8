"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical rejection (singular or
non-integral input), 3 unknown (no certificate, unsupported residue field).
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .errors import G1MinError, NonIntegralCoefficient, NonIntegralLevel, SingularInput, UnsupportedResidueField
from .fiber import classify_fiber, normality
from .invariants import invariants
from .jacobian import jacobian, level, minimal_discriminant_from_invariants
from .minimise import Status, is_minimal, minimise_global, minimise_local

OK, USAGE, REJECTED, UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    p = _Parser(prog="g1min", description="Invariants, special fibers and minimisation of genus one equations.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_model(name, help_, prime=False):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("model", help="model file (JSON)")
        if prime:
            sp.add_argument("--prime", type=int, help="the prime p (defaults to the file's)")
        return sp

    with_model("invariants", "print c4, c6 and the discriminant")
    with_model("classify-fiber", "classify the reduction mod p", prime=True)
    with_model("normality", "normality verdict at p", prime=True)
    with_model("level", "level against the Jacobian at p", prime=True)
    with_model("jacobian", "minimal model and discriminant of the Jacobian")
    sp = with_model("is-minimal", "three-valued minimality verdict at p", prime=True)
    sp.add_argument("--depth", type=int, default=3)
    sp = with_model("minimise", "minimise at one prime or globally", prime=True)
    sp.add_argument("--global", dest="global_", action="store_true", help="minimise at every prime")
    sp.add_argument("--depth", type=int, default=3)
    sp = sub.add_parser("gen-instance", help="planted instance with known levels", parents=[common])
    sp.add_argument("--A", type=int, required=True)
    sp.add_argument("--B", type=int, required=True)
    sp.add_argument("--degree", type=int, choices=(1, 2, 3, 4), required=True)
    sp.add_argument("--plant", action="append", default=[], metavar="P:K", help="plant level K at prime P")
    sp.add_argument("--seed", type=int, default=0)
    return p


def _prime(args, mf):
    p = args.prime if args.prime is not None else mf.prime
    if p is None:
        raise UsageError("a prime is required (--prime or the model file's 'prime')")
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise UsageError(f"{p} is not prime")
    return p


def _tristate(x):
    return {True: "yes", False: "no", None: "unknown"}[x]


def _run(args):
    """Return (exit code, JSON payload, text lines)."""
    cmd = args.command
    if cmd == "gen-instance":
        from .testgen import generate_instance
        levels = {}
        for item in args.plant:
            try:
                p, k = (int(x) for x in item.split(":"))
            except ValueError as exc:
                raise UsageError(f"--plant expects P:K, got {item!r}") from exc
            levels[p] = levels.get(p, 0) + k
        phi, rec = generate_instance(args.A, args.B, args.degree, levels, args.seed)
        payload = {"model": io.model_to_dict(phi), "planted": {str(p): k for p, k in sorted(levels.items())},
                   "base_levels": {str(p): k for p, k in sorted(rec.base_levels.items())},
                   "disc_min": io.q(rec.delta_min)}
        return OK, payload, [io.dumps(phi).rstrip()]
    mf = io.load(args.model)
    phi = mf.equation
    if cmd == "invariants":
        inv = invariants(phi)
        return OK, io.invariants_payload(inv), [f"c4={inv.c4} c6={inv.c6} Δ={inv.disc}"]
    if cmd == "jacobian":
        c4, c6, disc = invariants(phi)
        if disc == 0:
            raise SingularInput("discriminant is zero")
        J = jacobian(c4, c6)
        rep = minimal_discriminant_from_invariants(c4, c6)
        payload = {"model": io.model_to_dict(J.model), "u": io.q(J.u),
                   "minimal_model": io.model_to_dict(rep.minimal_model), "disc_min": io.q(rep.delta_min)}
        return OK, payload, [f"jacobian {list(map(str, J.model.coeffs))} (u={J.u})",
                             f"minimal model {list(map(str, rep.minimal_model.coeffs))} Δ_min={rep.delta_min}"]
    if cmd == "minimise" and args.global_:
        gc = minimise_global(phi, args.depth)
        code = OK if gc.certified else UNKNOWN
        lines = [f"final {list(map(str, gc.final.coeffs))}", f"Δ_final={gc.delta_final} Δ_min={gc.delta_min}"]
        lines += [f"p={p}: {len(c.moves)} moves, level {c.level}, {c.status.value}" for p, c in sorted(gc.local.items())]
        return code, io.global_payload(gc), lines
    p = _prime(args, mf)
    if cmd == "classify-fiber":
        cls, pos = classify_fiber(phi, p)
        return OK, io.fiber_payload(cls, pos), [cls.label]
    if cmd == "normality":
        v = normality(phi, p)
        code = UNKNOWN if v.is_normal is None else OK
        return code, io.verdict_payload(v), [f"normal: {_tristate(v.is_normal)} ({v.criterion})"]
    if cmd == "level":
        lv = level(phi, p)
        payload = {"prime": p, "level": lv.value, "disc_valuation": lv.disc_valuation,
                   "minimal_valuation": lv.minimal_valuation}
        return OK, payload, [f"level {lv.value} (v(Δ)={lv.disc_valuation}, minimal {lv.minimal_valuation})"]
    if cmd == "is-minimal":
        verdict, cert = is_minimal(phi, p, args.depth)
        code = UNKNOWN if verdict is None else OK
        return code, io.certificate_payload(cert), [f"minimal: {_tristate(verdict)} ({cert.input_status.value})"]
    cert = minimise_local(phi, p, args.depth)
    code = OK if cert.status is Status.MINIMAL_CERTIFIED else UNKNOWN
    lines = [f"final {list(map(str, cert.final.coeffs))}",
             f"v(Δ): {' -> '.join(map(str, cert.valuations))}; level {cert.level}; {cert.status.value}"]
    lines += [f"  move {i + 1}: {m.tag} (drop {12 * m.k})" for i, m in enumerate(cert.moves)]
    return code, io.certificate_payload(cert), lines


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = _parser().parse_args(argv)
        code, payload, lines = _run(args)
    except UsageError as exc:
        print(f"g1min: usage error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, io.ModelFormatError) as exc:
        print(f"g1min: {exc}", file=sys.stderr)
        return USAGE
    except (SingularInput, NonIntegralCoefficient, NonIntegralLevel) as exc:
        code, payload, lines = REJECTED, {"error": type(exc).__name__, "message": str(exc)}, \
            [f"rejected: {type(exc).__name__}: {exc}"]
    except UnsupportedResidueField as exc:
        code, payload, lines = UNKNOWN, {"error": type(exc).__name__, "message": str(exc)}, \
            [f"unknown: {exc}"]
    except G1MinError as exc:
        code, payload, lines = REJECTED, {"error": type(exc).__name__, "message": str(exc)}, \
            [f"rejected: {type(exc).__name__}: {exc}"]
    if as_json:
        print(io.report(argv, payload, code))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
