"""Command-line front end: JSON in, one JSON report out, typed exit codes.

Exit codes: 0 success, 2 precondition violation, 3 verification failure
(adequacy violations included), 4 I/O trouble.  Reports are byte-stable
for identical inputs and seeds, except the timing_ms field.  Exact
scalars travel as strings like "3/4" or "1/2+5/3 i"; float syntax is
accepted only behind --approx.
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from time import perf_counter

from .errors import PreconditionError, VerificationError
from .exact_algebra import parse_exact, scalar_to_json
from .factorizer import (can_factor_three, cohn_family_4,
                         cohn_family_relations, cohn_holo_5, factor_constant,
                         factor_count_bound, pad_avoid_singular)
from .fiber_solver import (complete_generic_even, complete_nongeneric_even,
                           complete_odd, interior_sample)
from .obstruction import (LoopSamples, axis_continuation_degrees,
                          continuous_section_h3, holo_obstruction_certificate,
                          sample_loop, shrinking_circle_degrees,
                          winding_number)
from .submersion_spray import (check_lemma_submersive, frame_rank,
                               sl2_jacobian)
from ._verify import verify_suite
from .word_core import (PhiTemplate, SL2, eval_word, format_point,
                        in_singular_set, middle_Q, sl2_from_json, sl2_to_json,
                        word_from_json, word_to_json)
from .exact_algebra import ExactComplex, MultiPoly, poly_to_json


def _parse_scalar(text: str, approx: bool = False):
    text = text.strip()
    try:
        return parse_exact(text)
    except (PreconditionError, ValueError):
        pass
    if not approx:
        raise PreconditionError(
            f"scalar {text!r} is not exact; pass --approx to allow floats")
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise PreconditionError(f"unreadable scalar {text!r}") from exc


def _parse_point(text: str, approx: bool = False) -> list:
    return [_parse_scalar(part, approx) for part in text.split(",")]


def _load_input(args) -> object:
    path = getattr(args, "input", None)
    if not path:
        raise PreconditionError("this command needs --input <file.json>")
    with open(path) as fh:
        return json.load(fh)


def _cmd_expand(args):
    if args.n < 3:
        raise PreconditionError("middle polynomials need N >= 3")
    q = middle_Q(args.n)
    unimodular = (q[0] * q[3] - q[1] * q[2]) == MultiPoly.one(args.n - 2)
    if not unimodular:
        raise VerificationError("middle product lost unimodularity")
    return {
        "n": args.n,
        "nvars": args.n - 2,
        "vars": [f"z{j}" for j in range(2, args.n)],
        "Q": [poly_to_json(p) for p in q],
        "unimodular": unimodular,
        "exact": True,
    }, 0


def _cmd_jacobian(args):
    if args.point is not None:
        point = _parse_point(args.point, args.approx)
    else:
        data = _load_input(args)
        from .word_core import parse_point
        point = parse_point(data["point"] if isinstance(data, dict) else data)
    if len(point) != args.n:
        raise PreconditionError(
            f"point length {len(point)} does not match --n {args.n}")
    frame = sl2_jacobian(PhiTemplate(args.n), point)
    return {
        "n": args.n,
        "point": format_point(point),
        "rank": frame_rank(frame),
        "singular": in_singular_set(point, args.n),
        "exact": frame.exact,
        "columns": [[scalar_to_json(x) for x in col]
                    for col in frame.columns],
    }, 0


def _cmd_lemma_check(args):
    rep = check_lemma_submersive(args.n, args.samples, seed=args.seed)
    ok = not rep["violations"] and all(r < 3 for r in rep["singular_ranks"])
    rep["verified"] = ok
    rep["exact"] = True
    return rep, 0 if ok else 3


def _target_from_input(args) -> SL2:
    data = _load_input(args)
    if isinstance(data, dict) and "target" in data:
        data = data["target"]
    return sl2_from_json(data)


def _cmd_fiber_solve(args):
    target = _target_from_input(args)
    n = args.n
    z1 = _parse_scalar(args.z1, args.approx) if args.z1 is not None else 0
    a, b = target.a, target.b
    if n % 2 == 0:
        a_zero = ExactComplex.coerce(a).is_zero if target.is_exact \
            else complex(a) == 0
        if not a_zero:
            ip = interior_sample(n, a, "Q1", seed=args.seed)
            fc = complete_generic_even(target, ip)
        else:
            ip = interior_sample(n, b, "Q2", seed=args.seed)
            fc = complete_nongeneric_even(target, z1, ip.values[:-1])
    else:
        b_zero = ExactComplex.coerce(b).is_zero if target.is_exact \
            else complex(b) == 0
        if not b_zero:
            ip = interior_sample(n, b, "Q2", seed=args.seed)
            fc = complete_odd(target, ip, "generic")
        else:
            ip = interior_sample(n, a, "Q1", seed=args.seed)
            fc = complete_odd(target, ip, "nongeneric", z1=z1)
    return {
        "n": n,
        "branch": fc.branch,
        "target": sl2_to_json(target),
        "interior": format_point(fc.interior),
        "point": format_point(fc.point),
        "verified": fc.verified,
        "exact": target.is_exact,
        "eq4_residual": None if fc.eq4_residual is None
        else scalar_to_json(fc.eq4_residual),
        "z1_free": None if fc.z1_free is None else scalar_to_json(fc.z1_free),
    }, 0


def _cmd_factor_const(args):
    target = _target_from_input(args)
    f = factor_constant(target)
    payload = f.to_json()
    payload["exact"] = target.is_exact
    payload["three_factor"] = {p: can_factor_three(target, p)
                               for p in ("ULU", "LUL")}
    return payload, 0


def _cmd_pad(args):
    data = _load_input(args)
    if isinstance(data, dict) and "word" in data:
        data = data["word"]
    word = word_from_json(data)
    padded = pad_avoid_singular(word)
    before, after = eval_word(word), eval_word(padded)
    if before.is_exact and after.is_exact:
        match = before == after
    else:
        match = max(abs(complex(x) - complex(y)) for x, y in
                    zip(before.entries, after.entries)) < 1e-10
    if not match:
        raise VerificationError("padded word changed the product")
    return {
        "original": word_to_json(word),
        "padded": word_to_json(padded),
        "length": len(padded),
        "product_match": match,
        "exact": before.is_exact,
    }, 0


def _cmd_cohn(args):
    z = _parse_scalar(args.z, args.approx)
    w = _parse_scalar(args.w, args.approx)
    if args.factors == 5:
        f = cohn_holo_5(complex(z), complex(w), dps=args.dps)
        payload = f.to_json()
        payload["mode"] = "holo5"
        payload["dps"] = args.dps
        payload["exact"] = False
        return payload, 0
    if args.h3 is None:
        raise PreconditionError("the 4-factor family needs --h3")
    h3 = _parse_scalar(args.h3, args.approx)
    f = cohn_family_4(z, w, h3)
    payload = f.to_json()
    payload["mode"] = "family4"
    payload["exact"] = f.target.is_exact
    hs = [fac.entry for fac in f.word.factors]
    rels = cohn_family_relations(z, w, hs)
    payload["relation_residuals"] = [scalar_to_json(r) if f.target.is_exact
                                     else abs(complex(r)) for r in rels]
    return payload, 0


def _cmd_winding(args):
    if args.input:
        data = _load_input(args)
        if isinstance(data, dict) and "values" in data:
            data = data["values"]
        values = tuple(complex(v[0], v[1]) if isinstance(v, list) else
                       complex(v) for v in data)
        loop = LoopSamples(values)
        source = "input"
    else:
        loop = sample_loop(
            lambda th: continuous_section_h3(0, args.radius *
                                             cmath.exp(1j * th)),
            args.samples)
        source = "w^2/|w|^(3/2)"
    return {
        "winding": winding_number(loop),
        "samples_used": len(loop.values),
        "source": source,
        "radius": args.radius if not args.input else None,
    }, 0


def _cmd_certificate(args):
    d_probe = complex(_parse_scalar(args.d, approx=True))
    cert = holo_obstruction_certificate(d_probe, args.radius, args.samples,
                                        required_degree=args.required)
    continuation = axis_continuation_degrees([d_probe, d_probe / 10],
                                             args.radius, args.samples)
    shrink = shrinking_circle_degrees(cmath.exp, samples=args.samples)
    payload = cert.to_json()
    payload["evidence"]["continuation_degrees"] = list(continuation)
    payload["evidence"]["shrink_degrees"] = shrink
    return payload, 0


def _cmd_bound(args):
    counts = {}
    for part in args.k.split(","):
        try:
            key, value = part.split("=")
            counts[int(key)] = int(value)
        except ValueError as exc:
            raise PreconditionError(
                f"malformed --k entry {part!r}; expected i=Ki") from exc
    missing = [i for i in range(2, args.n + 1) if i not in counts]
    if missing:
        raise PreconditionError(f"--k misses indices {missing}")
    value = factor_count_bound(args.n, counts)
    return {
        "n": args.n,
        "k": {str(i): counts[i] for i in sorted(counts)},
        "bound": value,
    }, 0


def _cmd_verify_suite(args):
    rep = verify_suite(seed=args.seed, scale=args.scale)
    return rep, 0 if rep["all_pass"] else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2factor",
        description="Exact unipotent factorization toolkit for SL2")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--input", help="JSON input file")
        p.add_argument("--approx", action="store_true",
                       help="allow float scalars")
        return p

    p = add("expand", _cmd_expand, help="middle polynomials Q1..Q4")
    p.add_argument("--n", type=int, required=True)

    p = add("jacobian", _cmd_jacobian, help="tangent frame and rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", help="comma-separated scalars z1..zN")

    p = add("lemma-check", _cmd_lemma_check,
            help="rank 3 off the singular set, lower on it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("fiber-solve", _cmd_fiber_solve,
            help="closed-form fiber completion over a target")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--z1", help="free boundary coordinate (non-generic)")

    add("factor-const", _cmd_factor_const,
        help="at most four factors for one matrix")

    add("pad", _cmd_pad, help="length +2 padding avoiding the singular set")

    p = add("cohn", _cmd_cohn, help="Cohn matrix factorizations")
    p.add_argument("--z", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--factors", type=int, choices=(4, 5), default=5)
    p.add_argument("--h3", help="free parameter of the 4-factor family")
    p.add_argument("--dps", type=int, help="mpmath working precision")

    p = add("winding", _cmd_winding, help="winding number of a loop")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=256)

    p = add("certificate", _cmd_certificate,
            help="no holomorphic 4-factor Cohn word")
    p.add_argument("--d", default="1/2", help="fiber probe zw = D")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--required", type=int, default=2)

    p = add("bound", _cmd_bound, help="composite factor-count bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", required=True, help="comma list i=Ki")

    p = add("verify-suite", _cmd_verify_suite,
            help="run the whole acceptance battery")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--scale", choices=("quick", "full"), default="quick")

    return parser


def _emit(payload: dict, command: str, t0: float) -> None:
    payload = dict(payload)
    payload["command"] = command
    payload["timing_ms"] = round((perf_counter() - t0) * 1000.0, 3)
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = perf_counter()
    try:
        payload, code = args.fn(args)
    except PreconditionError as exc:
        _emit({"error": {"code": "precondition", "message": str(exc)}},
              args.command, t0)
        return 2
    except VerificationError as exc:
        _emit({"error": {"code": "verification", "message": str(exc)}},
              args.command, t0)
        return 3
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": {"code": "io", "message": str(exc)}},
              args.command, t0)
        return 4
    _emit(payload, args.command, t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
