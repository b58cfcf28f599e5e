"""Exact scalars and sparse multivariate polynomials.

Scalars are Gaussian rationals: an ExactComplex holds a Fraction real part
and a Fraction imaginary part, so sums, products and quotients of matrix
entries never leave the field and every algebraic identity in the package
(unimodularity, tangency, graph formulas) can be tested as literal equality
with no tolerance.

A MultiPoly is a sparse polynomial over that field: a map from exponent
tuples (one entry per variable) to nonzero ExactComplex coefficients.
Construction canonicalizes (zero coefficients dropped, exponent lengths
checked), so structural equality is mathematical equality.  Serialization
orders terms graded-lexicographically, highest first, which keeps JSON
output byte-stable.

Approximate scalars are plain Python complex; mpmath numbers also work
wherever a point is substituted, since evaluation only needs +, * and **.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import PreconditionError

Rational = Fraction

_FRAC = r"\d+(?:/\d+)?"
_RE_REAL = re.compile(rf"^[+-]?{_FRAC}$")
_RE_COMPLEX = re.compile(rf"^(?P<re>[+-]?{_FRAC})?(?P<sign>[+-])(?P<im>(?:{_FRAC})?)i$")
_RE_PURE_IM = re.compile(rf"^(?P<sign>[+-]?)(?P<im>(?:{_FRAC})?)i$")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class ExactComplex:
    """Gaussian rational p/q + r/s i with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @staticmethod
    def coerce(x) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactComplex(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactComplex")

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def norm2(self) -> Fraction:
        # |x|^2, stays rational
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return ExactComplex(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (ExactComplex(1) / self) ** (-n)
        out = ExactComplex(1)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"ExactComplex({self.re!r}, {self.im!r})"


EC_ZERO = ExactComplex(0)
EC_ONE = ExactComplex(1)
EC_I = ExactComplex(0, 1)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_exact(x: ExactComplex) -> str:
    """Canonical string form: "p/q" when real, else "p/q+r/s i"."""
    x = ExactComplex.coerce(x)
    if x.im == 0:
        return _fmt_frac(x.re)
    sign = "+" if x.im > 0 else "-"
    return f"{_fmt_frac(x.re)}{sign}{_fmt_frac(abs(x.im))} i"


def parse_exact(s: str) -> ExactComplex:
    """Parse "p/q" or "p/q+r/s i" (whitespace tolerated) into an ExactComplex."""
    t = "".join(s.split())
    if _RE_REAL.match(t):
        return ExactComplex(Fraction(t))
    m = _RE_COMPLEX.match(t)
    if m and m.group("re") is not None:
        im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im = -im
        return ExactComplex(Fraction(m.group("re")), im)
    m = _RE_PURE_IM.match(t)
    if m:
        im = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im = -im
        return ExactComplex(0, im)
    raise PreconditionError(f"not an exact scalar: {s!r}")


def is_exact_scalar(x) -> bool:
    return isinstance(x, (ExactComplex, int, Fraction))


def require_finite(x: complex) -> complex:
    """Reject NaN/Inf before they leak into results."""
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise PreconditionError(f"non-finite approximate scalar: {z!r}")
    return z


def scalar_to_json(x):
    """Exact scalars -> canonical string; approximate -> [re, im] floats."""
    if is_exact_scalar(x):
        return format_exact(ExactComplex.coerce(x))
    z = complex(x)
    return [z.real, z.imag]


def scalar_from_json(v):
    if isinstance(v, str):
        return parse_exact(v)
    if isinstance(v, (int, float)):
        return ExactComplex(v) if isinstance(v, int) else complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise PreconditionError(f"not a scalar encoding: {v!r}")


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial over ExactComplex in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | Iterable = ()):
        if nvars < 0:
            raise PreconditionError("nvars must be nonnegative")
        clean: dict[tuple, ExactComplex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise PreconditionError(
                    f"exponent length {len(exp)} != nvars {nvars}")
            if any(e < 0 for e in exp):
                raise PreconditionError("negative exponent")
            c = ExactComplex.coerce(coeff)
            if exp in clean:
                c = clean[exp] + c
            if c.is_zero:
                clean.pop(exp, None)
            else:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors -----------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    @staticmethod
    def one(nvars: int) -> "MultiPoly":
        return MultiPoly.constant(nvars, 1)

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: ExactComplex.coerce(c)})

    @staticmethod
    def variable(nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise PreconditionError(f"variable index {index} out of range")
        exp = tuple(1 if i == index else 0 for i in range(nvars))
        return MultiPoly(nvars, {exp: EC_ONE})

    # predicates -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                      reverse=True)

    # ring operations --------------------------------------------------------

    def _coerce_operand(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise PreconditionError(
                    f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if is_exact_scalar(other):
            return MultiPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        merged = dict(self.terms)
        for exp, c in o.terms.items():
            merged[exp] = merged.get(exp, EC_ZERO) + c
        return MultiPoly(self.nvars, merged)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        out: dict[tuple, ExactComplex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, EC_ZERO) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MultiPoly.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce_operand(other) if not isinstance(other, MultiPoly) \
            else other
        if o is None or not isinstance(o, MultiPoly):
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    __hash__ = None

    # calculus / evaluation --------------------------------------------------

    def diff(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.nvars:
            raise PreconditionError(f"variable index {var} out of range")
        out: dict[tuple, ExactComplex] = {}
        for exp, c in self.terms.items():
            k = exp[var]
            if k == 0:
                continue
            e = tuple(v - 1 if i == var else v for i, v in enumerate(exp))
            out[e] = c * k
        return MultiPoly(self.nvars, out)

    def eval(self, point: Sequence):
        if len(point) != self.nvars:
            raise PreconditionError(
                f"point length {len(point)} != nvars {self.nvars}")
        exact = all(is_exact_scalar(x) for x in point)
        if exact:
            pt = [ExactComplex.coerce(x) for x in point]
            acc = EC_ZERO
            for exp, c in self.terms.items():
                term = c
                for x, e in zip(pt, exp):
                    if e:
                        term = term * x ** e
                acc = acc + term
            return acc
        acc = 0
        for exp, c in self.terms.items():
            term = complex(c)
            for x, e in zip(point, exp):
                if e:
                    term = term * x ** e
            acc = acc + term
        return acc

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}")
                for i, e in enumerate(exp) if e)
            cs = format_exact(c)
            if mono:
                parts.append(mono if cs == "1" else
                             f"-{mono}" if cs == "-1" else
                             f"({cs})*{mono}" if (c.im != 0 or c.re < 0)
                             else f"{cs}*{mono}")
            else:
                parts.append(f"({cs})" if c.im != 0 else cs)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()})"


def poly_ring_op(op: str, p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Canonical-form add/sub/mul of two polynomials on the same variables."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PreconditionError(f"unknown ring op {op!r}")


def poly_diff(p: MultiPoly, var: int) -> MultiPoly:
    """Formal partial derivative with respect to variable `var`."""
    return p.diff(var)


def poly_eval(p: MultiPoly, point: Sequence):
    """Substitute a point; exact in, exact out, approximate in, complex out."""
    return p.eval(point)


def poly_equal(p: MultiPoly, q: MultiPoly) -> bool:
    if p.nvars != q.nvars:
        raise PreconditionError(
            f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    return p.terms == q.terms


def poly_embed(p: MultiPoly, nvars: int, offset: int = 0) -> MultiPoly:
    """Reindex variable i to i+offset inside a wider variable set."""
    if offset < 0 or p.nvars + offset > nvars:
        raise PreconditionError("embedding does not fit")
    pad_hi = nvars - p.nvars - offset
    out = {}
    for exp, c in p.terms.items():
        out[(0,) * offset + exp + (0,) * pad_hi] = c
    return MultiPoly(nvars, out)


def poly_to_json(p: MultiPoly) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [
            {"exp": list(exp), "re": _fmt_frac(c.re), "im": _fmt_frac(c.im)}
            for exp, c in p.sorted_terms()
        ],
    }


def poly_from_json(data: Mapping) -> MultiPoly:
    try:
        nvars = int(data["nvars"])
        terms = {tuple(t["exp"]): ExactComplex(Fraction(t["re"]),
                                               Fraction(t["im"]))
                 for t in data["terms"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed polynomial JSON: {exc}") from exc
    return MultiPoly(nvars, terms)


def compile_approx(p: MultiPoly) -> Callable[[Sequence[complex]], complex]:
    """Bake a polynomial into a fast float evaluator (used by flow loops)."""
    data = [(complex(c), exp) for exp, c in p.terms.items()]

    def run(point: Sequence[complex]) -> complex:
        acc = 0j
        for c, exp in data:
            t = c
            for x, e in zip(point, exp):
                if e == 1:
                    t *= x
                elif e:
                    t *= x ** e
            acc += t
        return acc

    return run
