"""Elementary factors, words, SL2 matrices, and the product map Phi_N.

An elementary factor is L(g) = [[1,0],[g,1]] or U(g) = [[1,g],[0,1]].
A word is a finite sequence of factors; its evaluation is the left-to-right
matrix product.  Phi_N is the alternating word whose j-th entry is the j-th
coordinate: lower for odd j, upper for even j (lower-first convention), so
Phi_N(z_1..z_N) = M_1(z_1) M_2(z_2) ... M_N(z_N).

The middle polynomials Q1..Q4 are the symbolic entries of the interior
product M_2(z_2) ... M_{N-1}(z_{N-1}); they satisfy Q1*Q4 - Q2*Q3 = 1 and
drive the fiber solvers.  middle_Q builds them by the two-step recursion
Q = Q~ * U(s) * L(t) (even length) or Q = Q~ * L(s) * U(t) (odd length);
middle_Q_brute multiplies the factors one by one and is kept as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import PreconditionError, VerificationError
from .exact_algebra import (
    EC_ONE,
    ExactComplex,
    MultiPoly,
    format_exact,
    is_exact_scalar,
    parse_exact,
    poly_from_json,
    poly_to_json,
    scalar_from_json,
    scalar_to_json,
)

LOWER = "L"
UPPER = "U"

APPROX_DET_TOL = 1e-10


def _other_side(side: str) -> str:
    return UPPER if side == LOWER else LOWER


@dataclass(frozen=True)
class FunctionHandle:
    """Named evaluable entry, e.g. an entire function of (z, w)."""

    name: str
    fn: Callable

    def __call__(self, *args):
        return self.fn(*args)


@dataclass(frozen=True)
class ElementaryFactor:
    side: str
    entry: object

    def __post_init__(self):
        if self.side not in (LOWER, UPPER):
            raise PreconditionError(f"side must be 'L' or 'U', got {self.side!r}")


@dataclass(frozen=True)
class Word:
    factors: tuple[ElementaryFactor, ...]

    def __init__(self, factors=()):
        object.__setattr__(self, "factors", tuple(factors))
        for f in self.factors:
            if not isinstance(f, ElementaryFactor):
                raise PreconditionError("word items must be ElementaryFactor")

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def concat(self, other: "Word") -> "Word":
        return Word(self.factors + other.factors)

    @property
    def is_alternating(self) -> bool:
        return all(a.side != b.side
                   for a, b in zip(self.factors, self.factors[1:]))

    @staticmethod
    def of(*pairs) -> "Word":
        """Word.of(("L", 2), ("U", 3), ...) convenience constructor."""
        return Word(ElementaryFactor(s, e) for s, e in pairs)


def _is_mp_number(x) -> bool:
    return type(x).__module__.startswith("mpmath")


def _det_is_unit(a, b, c, d) -> bool:
    det = a * d - b * c
    if isinstance(det, MultiPoly):
        return det == MultiPoly.one(det.nvars)
    if is_exact_scalar(det):
        return ExactComplex.coerce(det) == EC_ONE
    return abs(det - 1) < APPROX_DET_TOL


class SL2:
    """2x2 unimodular matrix over one scalar kind (exact, approx, or poly)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        vals = _unify_scalars([a, b, c, d])
        if not _det_is_unit(*vals):
            raise VerificationError("determinant is not 1 "
                                    "(approx mode: numeric instability)")
        for name, v in zip(("a", "b", "c", "d"), vals):
            object.__setattr__(self, name, v)

    def __setattr__(self, name, value):
        raise AttributeError("SL2 is immutable")

    @staticmethod
    def identity() -> "SL2":
        return SL2(1, 0, 0, 1)

    @staticmethod
    def lower(g) -> "SL2":
        one, zero = _one_zero_like(g)
        return SL2(one, zero, g, one)

    @staticmethod
    def upper(g) -> "SL2":
        one, zero = _one_zero_like(g)
        return SL2(one, g, zero, one)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def is_exact(self) -> bool:
        return is_exact_scalar(self.a)

    def __matmul__(self, other: "SL2") -> "SL2":
        return SL2(self.a * other.a + self.b * other.c,
                   self.a * other.b + self.b * other.d,
                   self.c * other.a + self.d * other.c,
                   self.c * other.b + self.d * other.d)

    def inverse(self) -> "SL2":
        return SL2(self.d, -self.b, -self.c, self.a)

    def det(self):
        return self.a * self.d - self.b * self.c

    def __eq__(self, other):
        if not isinstance(other, SL2):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"SL2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _one_zero_like(g):
    if isinstance(g, MultiPoly):
        return MultiPoly.one(g.nvars), MultiPoly.zero(g.nvars)
    return 1, 0


def _unify_scalars(vals: list):
    """Coerce a mixed list of entries to one scalar kind.

    Priority: any MultiPoly -> polynomials; any mpmath number -> mpmath;
    any float/complex -> complex; otherwise ExactComplex.
    """
    if any(isinstance(v, MultiPoly) for v in vals):
        nv = {v.nvars for v in vals if isinstance(v, MultiPoly)}
        if len(nv) != 1:
            raise PreconditionError("mixed variable counts in one matrix")
        n = nv.pop()
        out = []
        for v in vals:
            if isinstance(v, MultiPoly):
                out.append(v)
            elif is_exact_scalar(v):
                out.append(MultiPoly.constant(n, v))
            else:
                raise PreconditionError(
                    "cannot mix approximate scalars with polynomials")
        return out
    if any(_is_mp_number(v) for v in vals):
        import mpmath as mp
        return [v if _is_mp_number(v) else mp.mpc(complex(v)) for v in vals]
    if any(isinstance(v, (float, complex)) for v in vals):
        return [complex(v) for v in vals]
    return [ExactComplex.coerce(v) for v in vals]


def _eval_entry(entry, point: Sequence):
    if isinstance(entry, MultiPoly):
        # no point means symbolic expansion: keep the polynomial itself
        return entry if len(point) == 0 else entry.eval(point)
    if isinstance(entry, FunctionHandle):
        return entry(*point)
    if is_exact_scalar(entry):
        return ExactComplex.coerce(entry)
    if isinstance(entry, (float, complex)) or _is_mp_number(entry):
        return entry
    raise PreconditionError(f"entry not evaluable: {entry!r}")


def eval_word(w: Word, point: Sequence = ()) -> SL2:
    """Multiply out a word; symbolic and function entries get `point`."""
    if not len(w):
        return SL2.identity()
    vals = _unify_scalars([_eval_entry(f.entry, point) for f in w])
    out = None
    for f, g in zip(w.factors, vals):
        m = SL2.lower(g) if f.side == LOWER else SL2.upper(g)
        out = m if out is None else out @ m
    return out


def word_inverse(w: Word) -> Word:
    """Reverse the factors and negate the entries."""
    out = []
    for f in reversed(w.factors):
        if isinstance(f.entry, FunctionHandle):
            raise PreconditionError("cannot invert a function-handle entry")
        out.append(ElementaryFactor(f.side, -f.entry))
    return Word(out)


@dataclass(frozen=True)
class PhiTemplate:
    """Alternating-word template of length N with a fixed first side."""

    n: int
    first_side: str = LOWER

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("template length must be >= 1")
        if self.first_side not in (LOWER, UPPER):
            raise PreconditionError("first side must be 'L' or 'U'")

    def side_of(self, j: int) -> str:
        # j is 1-based position in the word
        return self.first_side if j % 2 == 1 else _other_side(self.first_side)

    def word_symbolic(self) -> Word:
        return Word(
            ElementaryFactor(self.side_of(j), MultiPoly.variable(self.n, j - 1))
            for j in range(1, self.n + 1))

    def word_at(self, values: Sequence) -> Word:
        if len(values) != self.n:
            raise PreconditionError(
                f"expected {self.n} coordinates, got {len(values)}")
        return Word(ElementaryFactor(self.side_of(j), values[j - 1])
                    for j in range(1, self.n + 1))


def expand_phi(t: PhiTemplate) -> SL2:
    """Full symbolic entries of Phi_N as polynomials in z_1..z_N."""
    return eval_word(t.word_symbolic())


def middle_Q(n: int) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """Entries of M_2(z_2)...M_{N-1}(z_{N-1}) as polynomials in z_2..z_{N-1}.

    Built by appending factor pairs to the two-shorter word: for even length
    Q = Q~ * U(s) * L(t), for odd length Q = Q~ * L(s) * U(t), with s, t the
    two newest variables.  Upper-first alternation throughout (position j in
    the full word is upper exactly when j is even).
    """
    if n < 3:
        raise PreconditionError("middle polynomials need N >= 3")
    m = n - 2

    def var(j: int) -> MultiPoly:
        # z_j for j = 2..n-1
        return MultiPoly.variable(m, j - 2)

    if n % 2 == 0:
        # base N=4: U(z2) L(z3)
        q1, q2, q3, q4 = (1 + var(2) * var(3), var(2), var(3),
                          MultiPoly.one(m))
        start = 6
    else:
        # base N=3: the single factor U(z2)
        q1, q2, q3, q4 = (MultiPoly.one(m), var(2), MultiPoly.zero(m),
                          MultiPoly.one(m))
        start = 5
    for k in range(start, n + 1, 2):
        s, t = var(k - 2), var(k - 1)
        if n % 2 == 0:
            q1, q2, q3, q4 = ((1 + s * t) * q1 + t * q2, s * q1 + q2,
                              (1 + s * t) * q3 + t * q4, s * q3 + q4)
        else:
            q1, q2, q3, q4 = (q1 + s * q2, t * q1 + (1 + s * t) * q2,
                              q3 + s * q4, t * q3 + (1 + s * t) * q4)
    return q1, q2, q3, q4


def middle_Q_brute(n: int) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """Same entries by factor-at-a-time multiplication (oracle path)."""
    if n < 3:
        raise PreconditionError("middle polynomials need N >= 3")
    m = n - 2
    word = Word(
        ElementaryFactor(LOWER if j % 2 == 1 else UPPER,
                         MultiPoly.variable(m, j - 2))
        for j in range(2, n))
    prod = eval_word(word)
    return prod.a, prod.b, prod.c, prod.d


def in_singular_set(point: Sequence, n: int) -> bool:
    """True iff all interior coordinates z_2..z_{N-1} are (exactly) zero."""
    if len(point) != n:
        raise PreconditionError(f"expected {n} coordinates, got {len(point)}")
    for x in point[1:-1]:
        if is_exact_scalar(x):
            if not ExactComplex.coerce(x).is_zero:
                return False
        elif x != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON


def factor_to_json(f: ElementaryFactor):
    if isinstance(f.entry, MultiPoly):
        return {"side": f.side, "entry": poly_to_json(f.entry)}
    if isinstance(f.entry, FunctionHandle):
        return {"side": f.side, "entry": f.entry.name}
    return {"side": f.side, "entry": scalar_to_json(f.entry)}


def word_to_json(w: Word) -> list:
    return [factor_to_json(f) for f in w]


def _entry_from_json(v, builtins: Mapping[str, FunctionHandle] | None):
    if isinstance(v, dict):
        return poly_from_json(v)
    if isinstance(v, str):
        try:
            return parse_exact(v)
        except PreconditionError:
            if builtins and v in builtins:
                return builtins[v]
            raise PreconditionError(f"unknown entry name {v!r}")
    return scalar_from_json(v)


def word_from_json(data, builtins: Mapping[str, FunctionHandle] | None = None
                   ) -> Word:
    if not isinstance(data, list):
        raise PreconditionError("word JSON must be a list of factors")
    out = []
    for item in data:
        try:
            side, entry = item["side"], item["entry"]
        except (TypeError, KeyError) as exc:
            raise PreconditionError(f"malformed factor: {item!r}") from exc
        out.append(ElementaryFactor(side, _entry_from_json(entry, builtins)))
    return Word(out)


def sl2_to_json(mtx: SL2) -> dict:
    return {k: scalar_to_json(v) for k, v in zip("abcd", mtx.entries)}


def sl2_from_json(data: Mapping) -> SL2:
    try:
        vals = [scalar_from_json(data[k]) for k in "abcd"]
    except (TypeError, KeyError) as exc:
        raise PreconditionError(f"malformed SL2 JSON: {data!r}") from exc
    return SL2(*vals)


def format_point(point: Sequence) -> list:
    return [scalar_to_json(x) for x in point]


def parse_point(data) -> list:
    if not isinstance(data, list):
        raise PreconditionError("point must be a JSON list of scalars")
    return [scalar_from_json(v) for v in data]
