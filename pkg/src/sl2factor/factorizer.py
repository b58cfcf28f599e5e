"""Factorization of SL2 matrices into unipotent triangular factors.

Constant matrices factor into at most four elementary factors, with the
branch chosen by which entries vanish:

    c != 0:        U((a-1)/c) L(c) U((d-1)/c)
    c = 0, b != 0: L((d-1)/b) U(b) L((a-1)/b)
    b = c = 0:     U(a-1) L(1) U(1/a - 1) L(-a)

The holomorphic-family content is the Cohn matrix

    C(z, w) = [[1 + zw, z^2], [-w^2, 1 - zw]],

which admits an entire five-factor factorization built from h1 =
(e^{zw} - 1 - zw)/w^2, h2 = -(1 + w^2) e^{-zw}, h3 = e^{zw} - 1, h4 = 1,
with the final upper entry read off from the partial-product inverse, and
a four-factor pointwise family on {zw != 1} parametrized by a free h3.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import PreconditionError, VerificationError
from .exact_algebra import ExactComplex, is_exact_scalar, scalar_to_json
from .word_core import (ElementaryFactor, FunctionHandle, LOWER, SL2, UPPER,
                        Word, eval_word, sl2_to_json, word_to_json)

APPROX_TOL = 1e-10
SERIES_CUTOFF = 1e-3
SERIES_TERMS = 12


def _exactify(x):
    return ExactComplex.coerce(x) if is_exact_scalar(x) else x


def _is_zero(x) -> bool:
    if is_exact_scalar(x):
        return ExactComplex.coerce(x).is_zero
    return x == 0


@dataclass(frozen=True)
class Factorization:
    """A word of triangular factors together with its replayed product."""

    word: Word
    target: SL2
    verified: bool
    residual: object = 0

    @property
    def factor_count(self) -> int:
        return len(self.word)

    def to_json(self) -> dict:
        return {
            "word": word_to_json(self.word),
            "target": sl2_to_json(self.target),
            "factor_count": self.factor_count,
            "verified": self.verified,
            "residual": float(abs(self.residual)),
        }


def _finish(word: Word, target: SL2) -> Factorization:
    prod = eval_word(word)
    if prod.is_exact and target.is_exact:
        if prod != target:
            raise VerificationError("factor word does not reproduce target")
        return Factorization(word, target, True, 0)
    residual = max(abs(complex(x) - complex(y))
                   for x, y in zip(prod.entries, target.entries))
    if residual >= APPROX_TOL:
        raise VerificationError(
            f"factor word residual {residual:.3e} exceeds tolerance")
    return Factorization(word, target, True, residual)


def factor_constant(m: SL2) -> Factorization:
    """At most four triangular factors for any single SL2 matrix."""
    a, b, c, d = (_exactify(x) for x in m.entries)
    one = 1
    if _is_zero(b) and _is_zero(c):
        if a == ExactComplex.coerce(1) or (not m.is_exact and
                                           abs(complex(a) - 1) < APPROX_TOL):
            word = Word(())  # identity
        else:
            word = Word.of((UPPER, a - one), (LOWER, one),
                           (UPPER, one / a - one), (LOWER, -a))
    elif not _is_zero(c):
        word = Word.of((UPPER, (a - one) / c), (LOWER, c),
                       (UPPER, (d - one) / c))
    else:
        word = Word.of((LOWER, (d - one) / b), (UPPER, b),
                       (LOWER, (a - one) / b))
    return _finish(word, m)


def can_factor_three(m: SL2, pattern: str) -> bool:
    """Whether m admits the given three-factor pattern.

    "ULU" works exactly when c != 0, or m is itself upper elementary;
    "LUL" when b != 0, or m is lower elementary.  Nontrivial diagonal
    matrices fail both.
    """
    a, b, c, d = m.entries
    one = ExactComplex.coerce(1) if m.is_exact else 1
    if pattern == "ULU":
        return (not _is_zero(c)) or (a == one and d == one)
    if pattern == "LUL":
        return (not _is_zero(b)) or (a == one and d == one)
    raise PreconditionError("pattern must be 'ULU' or 'LUL'")


def factor_unit_corner(b, c, d) -> Factorization:
    """Length-4 lower-first word for [[1, b], [c, d]] with d = 1 + bc."""
    b, c, d = _exactify(b), _exactify(c), _exactify(d)
    if not _is_zero(d - (1 + b * c)):
        raise PreconditionError("unit corner needs d = 1 + bc")
    target = SL2(1, b, c, d)
    word = Word.of((LOWER, c - 1), (UPPER, 0), (LOWER, 1), (UPPER, b))
    return _finish(word, target)


def factor_offdiag_zero(a, c) -> Factorization:
    """Length-4 lower-first word for [[a, 0], [c, 1/a]], a != 0."""
    a, c = _exactify(a), _exactify(c)
    if _is_zero(a):
        raise PreconditionError("needs a != 0")
    target = SL2(a, 0, c, 1 / a)
    word = Word.of((LOWER, (c - 1) / a), (UPPER, a - 1), (LOWER, 1),
                   (UPPER, 1 / a - 1))
    return _finish(word, target)


def pad_avoid_singular(word: Word) -> Word:
    """Same product, two more factors, interior entries not all zero.

    The first factor M(g) is rewritten as M(g + 1) Mbar(0) M(g' = -1),
    using that same-side factors multiply additively and Mbar(0) is the
    identity.  The new third entry -1 sits among the interior slots of
    the longer word, so the padded point avoids the all-zero-interior
    singular set.
    """
    if len(word) == 0:
        raise PreconditionError("cannot pad an empty word")
    if not word.is_alternating:
        raise PreconditionError("padding expects an alternating word")
    first = word.factors[0]
    if isinstance(first.entry, FunctionHandle):
        raise PreconditionError("first entry must be shiftable by 1")
    g = first.entry
    side = first.side
    other = UPPER if side == LOWER else LOWER
    zero, neg_one = g - g, g - g - 1
    padded = Word((ElementaryFactor(side, g + 1),
                   ElementaryFactor(other, zero),
                   ElementaryFactor(side, neg_one)) + word.factors[1:])
    return padded


def factor_count_bound(n: int, counts) -> int:
    """Composite bound 1 + sum_{i=2..n} (K(i) + 3) on factor counts.

    counts may be a callable i -> K(i) or a mapping/sequence indexed by i.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    def k_of(i):
        try:
            value = counts(i) if callable(counts) else counts[i]
        except (KeyError, IndexError) as exc:
            raise PreconditionError(f"missing factor count for i = {i}") \
                from exc
        if not isinstance(value, int) or value < 0:
            raise PreconditionError("factor counts must be nonnegative ints")
        return value
    return 1 + sum(k_of(i) + 3 for i in range(2, n + 1))


# ---------------------------------------------------------------------------
# Cohn matrices


def cohn_eval(z, w) -> SL2:
    """C(z, w) = [[1 + zw, z^2], [-w^2, 1 - zw]]; det is 1 identically."""
    z, w = _exactify(z), _exactify(w)
    zw = z * w
    return SL2(1 + zw, z * z, -(w * w), 1 - zw)


@dataclass(frozen=True)
class CohnTarget:
    z: object
    w: object

    @property
    def matrix(self) -> SL2:
        return cohn_eval(self.z, self.w)


def _raw_mul(p, q):
    (a, b, c, d), (e, f, g, h) = p, q
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _raw_lower(g):
    return (1 + 0 * g, 0 * g, g, 1 + 0 * g)


def _raw_upper(g):
    return (1 + 0 * g, g, 0 * g, 1 + 0 * g)


def _h1_series(z, w):
    # (e^{zw} - 1 - zw)/w^2 = z^2 * sum_k (zw)^k / (k+2)!
    zw = z * w
    acc = 0 * z
    fact = 2
    power = 1 + 0 * z
    for k in range(SERIES_TERMS):
        acc = acc + power / fact
        power = power * zw
        fact = fact * (k + 3)
    return z * z * acc


def _cohn5_h_values(z, w, exp: Callable):
    zw = z * w
    if abs(complex(zw)) < SERIES_CUTOFF:
        h1 = _h1_series(z, w)
    else:
        h1 = (exp(zw) - 1 - zw) / (w * w)
    h2 = -(1 + w * w) * exp(-zw)
    h3 = exp(zw) - 1
    h4 = 1 + 0 * z
    return h1, h2, h3, h4


def _cohn5_full(z, w, exp: Callable):
    """h values, closing entry, raw product, residual, conditioning."""
    h1, h2, h3, h4 = _cohn5_h_values(z, w, exp)
    target = cohn_eval(z, w)
    traw = target.entries  # callers pass complex or mpc, never exact
    # prefix inverse: L(-h4) U(-h3) L(-h2) U(-h1) applied to the target
    pre = _raw_lower(-h4)
    cond = max(abs(x) for x in pre)
    for m in (_raw_upper(-h3), _raw_lower(-h2), _raw_upper(-h1)):
        pre = _raw_mul(pre, m)
        cond = max(cond, max(abs(x) for x in pre))
    closed = _raw_mul(pre, traw)
    big_h2 = closed[1]
    prod = _raw_upper(h1)
    for m in (_raw_lower(h2), _raw_upper(h3), _raw_lower(h4),
              _raw_upper(big_h2)):
        prod = _raw_mul(prod, m)
        cond = max(cond, max(abs(x) for x in prod))
    residual = max(abs(x - y) for x, y in zip(prod, traw))
    return (h1, h2, h3, h4, big_h2), target, float(residual), float(cond)


def cohn_holo_5(z, w, dps: int | None = None) -> Factorization:
    """Entire five-factor word U(h1) L(h2) U(h3) L(h4) U(H2) for C(z, w).

    With dps set, every entry is evaluated in mpmath working precision;
    otherwise double precision is used and the verification tolerance is
    scaled by the size of the intermediate products, which grow like
    e^{2|Re(zw)|}.  The verified flag is strict (residual < 1e-10).
    """
    if dps is not None:
        import mpmath
        with mpmath.workdps(dps):
            zm, wm = mpmath.mpc(complex(z)), mpmath.mpc(complex(w))
            hs, target, residual, cond = _cohn5_full(zm, wm, mpmath.exp)
    else:
        zc, wc = complex(z), complex(w)
        hs, target, residual, cond = _cohn5_full(zc, wc, cmath.exp)
        if residual > max(APPROX_TOL, 1e-12 * cond):
            raise VerificationError(
                f"five-factor residual {residual:.3e} exceeds what "
                f"conditioning {cond:.3e} explains")
    h1, h2, h3, h4, big_h2 = hs
    word = Word.of((UPPER, h1), (LOWER, h2), (UPPER, h3), (LOWER, h4),
                   (UPPER, big_h2))
    return Factorization(word, target, float(residual) < APPROX_TOL,
                         float(residual))


def cohn_family_relations(z, w, h: Sequence) -> tuple:
    """Residuals of the four relations equivalent to the product being C."""
    z, w = _exactify(z), _exactify(w)
    h1, h2, h3, h4 = (_exactify(x) for x in h)
    zw = z * w
    u = 1 - zw
    return (h2 * h3 + zw,
            u * h1 + h3 - z * z,
            h2 + u * h4 + w * w,
            h1 * h2 + u * h1 * h4 + h3 * h4 - zw)


def cohn_family_4(z, w, h3) -> Factorization:
    """Four-factor words for C(z, w) away from zw = 1, one per h3 != 0:

    h2 = -zw/h3, h1 = (z^2 - h3)/(1 - zw), h4 = (-w^2 - h2)/(1 - zw).
    """
    z, w, h3 = _exactify(z), _exactify(w), _exactify(h3)
    zw = z * w
    if _is_zero(1 - zw):
        raise PreconditionError("family needs zw != 1")
    if _is_zero(h3):
        raise PreconditionError("family needs h3 != 0")
    h2 = -zw / h3
    h1 = (z * z - h3) / (1 - zw)
    h4 = (-(w * w) - h2) / (1 - zw)
    word = Word.of((UPPER, h1), (LOWER, h2), (UPPER, h3), (LOWER, h4))
    return _finish(word, cohn_eval(z, w))


def _builtin(name: str, fn: Callable) -> FunctionHandle:
    return FunctionHandle(name, fn)


def _cohn5_entry(index: int) -> Callable:
    def entry(z, w):
        hs, _, _, _ = _cohn5_full(complex(z), complex(w), cmath.exp)
        return hs[index]
    return entry


BUILTIN_ENTRIES: Mapping[str, FunctionHandle] = {
    name: _builtin(name, _cohn5_entry(i))
    for i, name in enumerate(
        ["cohn5_h1", "cohn5_h2", "cohn5_h3", "cohn5_h4", "cohn5_H2"])
}


def cohn_holo_5_word() -> Word:
    """The five-factor word with named function entries in (z, w)."""
    return Word.of((UPPER, BUILTIN_ENTRIES["cohn5_h1"]),
                   (LOWER, BUILTIN_ENTRIES["cohn5_h2"]),
                   (UPPER, BUILTIN_ENTRIES["cohn5_h3"]),
                   (LOWER, BUILTIN_ENTRIES["cohn5_h4"]),
                   (UPPER, BUILTIN_ENTRIES["cohn5_H2"]))
