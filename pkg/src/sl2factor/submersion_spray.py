"""Jacobian frames for Phi_N and conserved-quantity vector field flows.

The derivative of Phi_N at a point, right-translated back to the identity,
has j-th column A_j E_j A_j^{-1} where A_j is the prefix product
M_1...M_{j-1} and E_j is e21 for a lower factor, e12 for an upper one
(the trailing factor of the derivative cancels because e21*L(x) = e21 and
e12*U(x) = e12).  Columns are stored in sl2 coordinates (e21, e12, d12):
the element [[p, q], [r, -p]] has coordinates (r, q, p).

Phi_N is submersive exactly where some interior coordinate is nonzero; the
rank computations here make that a checkable statement, exactly over the
Gaussian rationals or numerically via SVD.

Vector fields V = P_l d/dz_k - P_k d/dz_l (P_j the partial of P) are
tangent to every level set of P, which makes P a conserved quantity of
their flows; flow_rk4 integrates them with the classical fixed-step
fourth-order scheme and reports the drift in P.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .exact_algebra import (
    ExactComplex,
    MultiPoly,
    compile_approx,
    is_exact_scalar,
    poly_diff,
    poly_embed,
    require_finite,
)
from .word_core import (
    LOWER,
    PhiTemplate,
    SL2,
    expand_phi,
    in_singular_set,
    middle_Q,
)

APPROX_RANK_TOL = 1e-8


@dataclass(frozen=True)
class TangentFrame:
    """N tangent columns of Phi_N in the (e21, e12, d12) basis."""

    columns: tuple
    exact: bool


def sl2_jacobian(t: PhiTemplate, point: Sequence) -> TangentFrame:
    """Right-translated Jacobian columns of Phi_N at a point.

    Accepts exact, approximate, or polynomial coordinates; the symbolic
    case returns columns with MultiPoly entries.
    """
    if len(point) != t.n:
        raise PreconditionError(f"expected {t.n} coordinates")
    vals = list(point)
    exact = all(is_exact_scalar(x) for x in vals)
    symbolic = any(isinstance(x, MultiPoly) for x in vals)
    if not exact and not symbolic:
        vals = [require_finite(x) for x in vals]
    prefix = None  # A_j as SL2; None means identity
    cols = []
    for j in range(1, t.n + 1):
        if prefix is None:
            al, be, ga, de = 1, 0, 0, 1
        else:
            al, be, ga, de = prefix.a, prefix.b, prefix.c, prefix.d
        if t.side_of(j) == LOWER:
            # A e21 A^{-1} = [[bd, -b^2], [d^2, -bd]]
            col = (de * de, -(be * be), be * de)
        else:
            # A e12 A^{-1} = [[-ac, a^2], [-c^2, ac]]
            col = (-(ga * ga), al * al, -(al * ga))
        cols.append(col)
        factor = SL2.lower(vals[j - 1]) if t.side_of(j) == LOWER \
            else SL2.upper(vals[j - 1])
        prefix = factor if prefix is None else prefix @ factor
    return TangentFrame(tuple(cols), exact and not symbolic)


def frame_minor_det(f: TangentFrame, js: tuple[int, int, int]):
    """Determinant of the 3x3 minor on columns js (0-based); any ring."""
    c = [f.columns[j] for j in js]
    return (c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
            - c[1][0] * (c[0][1] * c[2][2] - c[0][2] * c[2][1])
            + c[2][0] * (c[0][1] * c[1][2] - c[0][2] * c[1][1]))


def _exact_rank(rows: list[list[ExactComplex]]) -> int:
    # Gaussian elimination over the Gaussian rationals
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    rank = 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if not rows[r][col].is_zero:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, nrows):
            if rows[r][col].is_zero:
                continue
            factor = rows[r][col] / pv
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def frame_rank(f: TangentFrame) -> int:
    """Rank of the frame: exact elimination, or SVD at threshold 1e-8."""
    if f.exact:
        rows = [[ExactComplex.coerce(col[i]) for col in f.columns]
                for i in range(3)]
        return _exact_rank(rows)
    mat = np.array([[complex(col[i]) for col in f.columns]
                    for i in range(3)], dtype=complex)
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > APPROX_RANK_TOL * sv[0]))


def check_lemma_submersive(n: int, samples: int, seed: int = 0) -> dict:
    """Sample rank behaviour: 3 off the singular set, < 3 on it.

    Random points are exact Gaussian rationals with at least one interior
    coordinate forced nonzero; singular probes run over (z1, 0, .., 0, zN)
    corners.  Returns a report dict; an empty "violations" list is the
    expected outcome.
    """
    if n < 4:
        raise PreconditionError("submersivity testing needs N >= 4")
    from ._random import random_exact, random_exact_nonzero, rng_from_seed
    rng = rng_from_seed(seed)
    t = PhiTemplate(n)
    violations = []
    for i in range(samples):
        pt = [random_exact(rng) for _ in range(n)]
        # force a nonzero interior coordinate so the point avoids S_N
        idx = rng.randrange(1, n - 1)
        pt[idx] = random_exact_nonzero(rng)
        rank = frame_rank(sl2_jacobian(t, pt))
        if rank != 3:
            violations.append({"index": i, "rank": rank})
    singular_ranks = []
    probes = [(0, 0), (1, 0), (0, 1), (5, 7), (-3, 2)]
    for z1, zn in probes:
        pt = [ExactComplex(z1)] + [ExactComplex(0)] * (n - 2) + [ExactComplex(zn)]
        assert in_singular_set(pt, n)
        rank = frame_rank(sl2_jacobian(t, pt))
        singular_ranks.append(rank)
        if rank >= 3:
            violations.append({"singular_probe": [z1, zn], "rank": rank})
    return {
        "n": n,
        "samples": samples,
        "seed": seed,
        "violations": violations,
        "singular_ranks": singular_ranks,
    }


@dataclass(frozen=True)
class VectorFieldSpec:
    """Field P_l d/dz_k - P_k d/dz_l on the variables of the polynomial P.

    k and l are 0-based indices into P's variables.  Instances come from
    v_field_spec (interior variables, P = Q1 of the middle word) or
    w_field_spec (leading variables, P the upper-right entry of the
    truncated word); arbitrary P is allowed.
    """

    p: MultiPoly
    k: int
    l: int

    def __post_init__(self):
        if self.k == self.l:
            raise PreconditionError("field indices must differ")
        for idx in (self.k, self.l):
            if not 0 <= idx < self.p.nvars:
                raise PreconditionError(f"index {idx} out of range")

    @property
    def pk(self) -> MultiPoly:
        return poly_diff(self.p, self.k)

    @property
    def pl(self) -> MultiPoly:
        return poly_diff(self.p, self.l)


def v_field_spec(n: int, k: int, l: int, level_var: bool = False
                 ) -> VectorFieldSpec:
    """Interior field on z_2..z_{N-1} conserving Q1 (k, l are z-indices).

    With level_var=True the polynomial becomes Q1 - a in one extra
    variable, the form used for the symbolic tangency identity.
    """
    if not 2 <= k < l <= n - 1:
        raise PreconditionError("need 2 <= k < l <= N-1")
    q1 = middle_Q(n)[0]
    p = q1
    if level_var:
        m = q1.nvars
        p = poly_embed(q1, m + 1, 0) - MultiPoly.variable(m + 1, m)
    return VectorFieldSpec(p, k - 2, l - 2)


def w_field_spec(n: int, k: int, l: int) -> VectorFieldSpec:
    """Field on z_1..z_{N-2} conserving the upper-right entry of the
    truncated product M_1(z_1)...M_{N-2}(z_{N-2})."""
    if not 1 <= k < l <= n - 2:
        raise PreconditionError("need 1 <= k < l <= N-2")
    # setting the last two coordinates of Phi_N to zero just drops the
    # last two factors, so the entry is Phi_{N-2}^{12}; the first factor
    # is lower triangular, so z_1 never appears in it
    p = expand_phi(PhiTemplate(n - 2)).b
    return VectorFieldSpec(p, k - 1, l - 1)


def vfield_apply(spec: VectorFieldSpec, q: MultiPoly) -> MultiPoly:
    """Apply the derivation: P_l * dq/dz_k - P_k * dq/dz_l."""
    if q.nvars != spec.p.nvars:
        raise PreconditionError("variable-count mismatch")
    return spec.pl * poly_diff(q, spec.k) - spec.pk * poly_diff(q, spec.l)


@dataclass(frozen=True)
class FlowResult:
    end: tuple
    p_start: complex
    p_end: complex

    @property
    def drift(self) -> complex:
        return self.p_end - self.p_start


def flow_rk4(spec: VectorFieldSpec, start: Sequence, t: float, step: float,
             direction: complex = 1.0) -> FlowResult:
    """Integrate the field with classical fixed-step RK4.

    `direction` multiplies the field by a unit scalar (i gives the
    imaginary-time flow, useful for long-time runs of fields whose
    real-time orbits grow exponentially); the conserved quantity is
    unaffected because the field kills P either way.
    """
    if step <= 0:
        raise PreconditionError("step must be positive")
    if t < 0:
        raise PreconditionError("nonnegative time only")
    state = [require_finite(complex(x)) for x in start]
    if len(state) != spec.p.nvars:
        raise PreconditionError("start point has wrong length")
    pk = compile_approx(spec.pk)
    pl = compile_approx(spec.pl)
    pfun = compile_approx(spec.p)
    k_idx, l_idx = spec.k, spec.l
    d = complex(direction)

    def deriv(s: list[complex]) -> tuple[complex, complex]:
        return d * pl(s), -d * pk(s)

    p_start = pfun(state)
    remaining = float(t)
    while remaining > 1e-15:
        h = step if remaining >= step else remaining
        s0 = state
        a1, b1 = deriv(s0)
        s1 = list(s0); s1[k_idx] += 0.5 * h * a1; s1[l_idx] += 0.5 * h * b1
        a2, b2 = deriv(s1)
        s2 = list(s0); s2[k_idx] += 0.5 * h * a2; s2[l_idx] += 0.5 * h * b2
        a3, b3 = deriv(s2)
        s3 = list(s0); s3[k_idx] += h * a3; s3[l_idx] += h * b3
        a4, b4 = deriv(s3)
        state = list(s0)
        state[k_idx] += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4)
        state[l_idx] += h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4)
        require_finite(state[k_idx])
        require_finite(state[l_idx])
        remaining -= h
    return FlowResult(tuple(state), p_start, pfun(state))
