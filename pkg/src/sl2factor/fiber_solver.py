"""Closed-form fiber completions of Phi_N over a target SL2 matrix.

Writing Phi_N = L(z_1) * Q * U(z_N) for even N (Q the middle product)
and multiplying out gives the fiber equations

    a = Q1,  b = Q2 + Q1 z_N,  c = Q3 + Q1 z_1,
    d = Q4 + Q2 z_1 + Q3 z_N + Q1 z_1 z_N.

Generically (a != 0) the fiber is a graph over the interior level set
{Q1 = a}: z_1 = (c - Q3)/a and z_N = (b - Q2)/a, with the d-equation
automatic by unimodularity.  When a = 0 (so bc = -1), the interior
satisfies Q1 = 0, Q2 = b, the next-to-boundary variable is determined by
the shorter prefix R = M_2...M_{N-2} via z_{N-1} = -R1/b, and z_1 runs
free with z_N = (d - Q4 - b z_1)/c.

For odd N the word ends with a lower factor, Phi_N = L(z_1) * Q * L(z_N),
and the same elimination gives b = Q2; generically (b != 0) the fiber is a
graph over {Q2 = b} with z_1 = (d - Q4)/b, z_N = (a - Q1)/b, and in the
non-generic branch (b = 0, hence ad = 1) the interior satisfies Q1 = a and
Q2 = 0 with z_1 free and z_N = a (c - Q3 - a z_1).

Every completion is verified by multiplying the word back out; exact
inputs verify by literal equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError, SamplingBudgetError, VerificationError
from .exact_algebra import ExactComplex, is_exact_scalar
from ._random import random_exact, rng_from_seed
from .word_core import PhiTemplate, SL2, eval_word

MAX_SAMPLE_TRIES = 64
APPROX_TOL = 1e-10


def _exactify(x):
    return ExactComplex.coerce(x) if is_exact_scalar(x) else x


def _is_zero(x) -> bool:
    if is_exact_scalar(x):
        return ExactComplex.coerce(x).is_zero
    return x == 0


def _middle_factor(j: int, value) -> SL2:
    # position j of the full word: lower for odd j, upper for even j
    return SL2.lower(value) if j % 2 == 1 else SL2.upper(value)


def _middle_product(values: Sequence, first_j: int = 2) -> SL2:
    prod = SL2.identity()
    for offset, v in enumerate(values):
        prod = prod @ _middle_factor(first_j + offset, _exactify(v))
    return prod


def _matrices_match(m1: SL2, m2: SL2) -> bool:
    if m1.is_exact and m2.is_exact:
        return m1 == m2
    return max(abs(complex(x) - complex(y))
               for x, y in zip(m1.entries, m2.entries)) < APPROX_TOL


@dataclass(frozen=True)
class InteriorPoint:
    """Values of z_2..z_{N-1} lying exactly on a Q-level set."""

    n: int
    stratum: str  # "Q1" or "Q2"
    level: object
    values: tuple

    def q_entries(self):
        q = _middle_product(self.values)
        return q.a, q.b, q.c, q.d


@dataclass(frozen=True)
class FiberCompletion:
    """A full point of Phi_N^{-1}(target), with the verification replayed."""

    n: int
    branch: str
    point: tuple
    target: SL2
    verified: bool
    eq4_residual: object = None
    z1_free: object = None

    @property
    def interior(self) -> tuple:
        return self.point[1:-1]


def _verify_completion(n, branch, point, target, eq4=None, z1_free=None
                       ) -> FiberCompletion:
    prod = eval_word(PhiTemplate(n).word_at(point))
    if not _matrices_match(prod, target):
        raise VerificationError(
            f"completion failed to reproduce the target (branch {branch})")
    return FiberCompletion(n, branch, tuple(point), target, True, eq4, z1_free)


def interior_sample(n: int, level, stratum: str = "Q1", seed=None,
                    rng=None) -> InteriorPoint:
    """Random interior point solving the requested Q-level constraint.

    The last one or two interior variables are solved linearly through the
    trailing factor of the middle word; draws whose linear coefficient
    vanishes are rejected (at most MAX_SAMPLE_TRIES redraws).  Stratum
    semantics depend on parity, mirroring the fiber branches:

      N even, "Q1": Q1 = level           (generic branch)
      N even, "Q2": Q1 = 0, Q2 = level   (non-generic, level != 0)
      N odd,  "Q2": Q2 = level           (generic branch)
      N odd,  "Q1": Q1 = level, Q2 = 0   (non-generic, level != 0)
    """
    if n < 4:
        raise PreconditionError("fibers need N >= 4")
    if stratum not in ("Q1", "Q2"):
        raise PreconditionError("stratum must be 'Q1' or 'Q2'")
    level = _exactify(level)
    rng = rng_from_seed(seed) if rng is None else rng
    even = n % 2 == 0
    generic = (stratum == "Q1") if even else (stratum == "Q2")
    if not generic and _is_zero(level):
        raise PreconditionError(
            "non-generic stratum needs a nonzero level (unimodularity)")
    for _ in range(MAX_SAMPLE_TRIES):
        if generic:
            draws = [random_exact(rng) for _ in range(n - 3)]
            r = _middle_product(draws)
            if even:
                # append L(t): Q1 = R1 + t R2
                if _is_zero(r.b):
                    continue
                t = (level - r.a) / r.b
            else:
                # append U(t): Q2 = R1 t + R2
                if _is_zero(r.a):
                    continue
                t = (level - r.b) / r.a
            values = tuple(draws) + (t,)
        else:
            draws = [random_exact(rng) for _ in range(n - 4)]
            rp = _middle_product(draws)
            if even:
                # solve z_{N-2} (upper): R2 = R'1 s + R'2 = level
                if _is_zero(rp.a):
                    continue
                s = (level - rp.b) / rp.a
                t = -rp.a / level  # then Q1 = R1 + t level = 0
            else:
                # solve z_{N-2} (lower): R1 = R'1 + s R'2 = level
                if _is_zero(rp.b):
                    continue
                s = (level - rp.a) / rp.b
                t = -rp.b / level  # then Q2 = level t + R2 = 0
            values = tuple(draws) + (s, t)
        pt = InteriorPoint(n, stratum, level, values)
        q1, q2, _, _ = pt.q_entries()
        if generic:
            target_ok = (q1 == level) if even else (q2 == level)
        else:
            target_ok = (q1 == 0 and q2 == level) if even \
                else (q1 == level and q2 == 0)
        if not target_ok:
            raise VerificationError("interior solve produced wrong level")
        return pt
    raise SamplingBudgetError(
        f"no usable draw in {MAX_SAMPLE_TRIES} tries (N={n}, {stratum})")


def complete_generic_even(target: SL2, interior: InteriorPoint
                          ) -> FiberCompletion:
    """Graph formula over {Q1 = a}: z_1 = (c - Q3)/a, z_N = (b - Q2)/a."""
    n = interior.n
    if n % 2 != 0:
        raise PreconditionError("even-length branch")
    a, b, c, d = (_exactify(x) for x in target.entries)
    if _is_zero(a):
        raise PreconditionError("generic branch needs a != 0")
    q1, q2, q3, q4 = interior.q_entries()
    if q1 != a:
        raise PreconditionError("interior is off the level set Q1 = a")
    z1 = (c - q3) / a
    zn = (b - q2) / a
    # the d-equation comes for free; its cleared residual must vanish
    eq4 = a * (q4 + q2 * z1 + q3 * zn + q1 * z1 * zn - d)
    return _verify_completion(n, "generic", (z1, *interior.values, zn),
                              target, eq4=eq4)


def complete_nongeneric_even(target: SL2, z1, prefix: Sequence
                             ) -> FiberCompletion:
    """Non-generic branch (a = 0): z_{N-1} = -R1/b, z_1 free,
    z_N = (d - Q4 - b z_1)/c."""
    n = len(prefix) + 3
    if n % 2 != 0 or n < 4:
        raise PreconditionError("prefix must cover z_2..z_{N-2}, N even")
    a, b, c, d = (_exactify(x) for x in target.entries)
    if not _is_zero(a):
        raise PreconditionError("non-generic branch needs a = 0")
    if _is_zero(b):
        raise PreconditionError("a = 0 forces b != 0")
    z1 = _exactify(z1)
    r = _middle_product([_exactify(x) for x in prefix])
    if r.b != b:
        raise PreconditionError("prefix is off the level set R2 = b")
    zn1 = -r.a / b
    interior = tuple(_exactify(x) for x in prefix) + (zn1,)
    q = _middle_product(interior)
    zn = (d - q.d - b * z1) / c
    return _verify_completion(n, "nongeneric", (z1, *interior, zn),
                              target, z1_free=z1)


def complete_odd(target: SL2, interior: InteriorPoint, branch: str,
                 z1=0) -> FiberCompletion:
    """Odd-length analogs: graph over {Q2 = b} when b != 0, else z_1 free
    on the {Q1 = a, Q2 = 0} interior."""
    n = interior.n
    if n % 2 == 0 or n < 5:
        raise PreconditionError("odd-length branch needs N odd >= 5")
    a, b, c, d = (_exactify(x) for x in target.entries)
    q1, q2, q3, q4 = interior.q_entries()
    if branch == "generic":
        if _is_zero(b):
            raise PreconditionError("generic branch needs b != 0")
        if q2 != b:
            raise PreconditionError("interior is off the level set Q2 = b")
        z1s = (d - q4) / b
        zn = (a - q1) / b
        return _verify_completion(n, "generic", (z1s, *interior.values, zn),
                                  target)
    if branch == "nongeneric":
        if not _is_zero(b):
            raise PreconditionError("non-generic branch needs b = 0")
        if q1 != a or not _is_zero(q2):
            raise PreconditionError(
                "interior must satisfy Q1 = a and Q2 = 0")
        z1 = _exactify(z1)
        zn = a * (c - q3 - a * z1)
        return _verify_completion(n, "nongeneric", (z1, *interior.values, zn),
                                  target, z1_free=z1)
    raise PreconditionError(f"unknown branch {branch!r}")


def fiber_transport_dim1(p: Sequence, alpha, beta) -> tuple:
    """(z1, z2) -> (z1, beta/alpha * z2), carrying {z1 z2 = alpha} levels
    onto {z1 z2 = beta} levels."""
    if _is_zero(alpha) or _is_zero(beta):
        raise PreconditionError("transport scalars must be nonzero")
    if len(p) != 2:
        raise PreconditionError("dimension-1 transport takes a pair")
    z1, z2 = (_exactify(x) for x in p)
    return (z1, (_exactify(beta) / _exactify(alpha)) * z2)


def fiber_transport_dim2(p: Sequence, alpha) -> tuple:
    """(z1, z2, z3) -> (alpha z1, z2/alpha, alpha z3); scales the level of
    P2 = z1 + z3 + z1 z2 z3 by alpha."""
    if _is_zero(alpha):
        raise PreconditionError("transport scalar must be nonzero")
    if len(p) != 3:
        raise PreconditionError("dimension-2 transport takes a triple")
    al = _exactify(alpha)
    z1, z2, z3 = (_exactify(x) for x in p)
    return (al * z1, z2 / al, al * z3)


def f5_param(z1, c) -> tuple:
    """Graph chart (z1, c) -> (z1, c, (c-1)/z1, (1-z1)/c) whose last-two
    coordinates put (z1, *, *) on the level set z1 + z3 + z1 z2 z3 = 1."""
    z1 = _exactify(z1)
    c = _exactify(c)
    if _is_zero(z1) or _is_zero(c):
        raise PreconditionError("chart needs z1 != 0 and c != 0")
    return (z1, c, (c - 1) / z1, (1 - z1) / c)
