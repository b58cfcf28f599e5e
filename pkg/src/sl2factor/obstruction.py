"""Winding-number degrees obstructing holomorphic 4-factor words for Cohn.

Over the punctured fiber {zw = D}, any continuous 4-factor section of the
Cohn family is pinned by its h3 component, a map C* -> C*.  A continuous
section of degree 2 exists (h3 = w^2/|w|^{3/2}), but a holomorphic h3
would extend across the axes, forcing it into the divisor options
{1, z, w, zw} up to units.  Their fiber degrees are 0, -1, +1, 0, never
2, so no holomorphic 4-factor factorization exists; five factors do.

Degrees are measured by sampled winding numbers: sum of principal-branch
angular increments over a closed loop, divided by 2 pi.  Sampling is
adequate when every increment stays below pi/2; then rounding recovers
the exact integer.  The fiber orientation convention is the
w-parametrization (z = D/w) with counterclockwise loops; the
z-parametrization degree is its orientation reverse.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InadequateSamplingError, PreconditionError, \
    VerificationError
from .exact_algebra import ExactComplex, is_exact_scalar

TWO_PI = 2.0 * math.pi
DEFAULT_SAMPLES = 256
SAMPLE_CAP = 2 ** 16
CLAIM_NO_HOLO_4 = "no-holo-4-factorization"


@dataclass(frozen=True)
class LoopSamples:
    """Closed loop of nonzero values; construction enforces adequacy."""

    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise PreconditionError("a loop needs at least two samples")
        if any(v == 0 for v in vals):
            raise PreconditionError("loop value vanishes; winding undefined")
        incs = tuple(cmath.phase(b / a)
                     for a, b in zip(vals, vals[1:] + vals[:1]))
        if any(abs(t) >= math.pi / 2 for t in incs):
            raise InadequateSamplingError(
                "angular step >= pi/2; refine the sampling")
        object.__setattr__(self, "increments", incs)


def winding_number(loop: LoopSamples) -> int:
    """Degree of the sampled loop around 0; exact once adequacy holds."""
    return round(sum(loop.increments) / TWO_PI)


def sample_loop(f: Callable[[float], complex], samples: int = DEFAULT_SAMPLES,
                cap: int = SAMPLE_CAP) -> LoopSamples:
    """Sample f on [0, 2pi), doubling the count until adequacy holds."""
    if samples < 2:
        raise PreconditionError("need at least two samples")
    n = samples
    while True:
        vals = tuple(complex(f(TWO_PI * k / n)) for k in range(n))
        try:
            return LoopSamples(vals)
        except InadequateSamplingError:
            if n >= cap:
                raise
            n = min(2 * n, cap)


def circle_winding(f: Callable[[complex], complex], radius: float,
                   samples: int = DEFAULT_SAMPLES) -> int:
    """Winding of f around the counterclockwise circle of given radius."""
    if radius <= 0:
        raise PreconditionError("radius must be positive")
    loop = sample_loop(lambda th: f(radius * cmath.exp(1j * th)), samples)
    return winding_number(loop)


def section_degree_on_fiber(h3: Callable[[complex, complex], complex], D,
                            radius: float = 1.0,
                            samples: int = DEFAULT_SAMPLES) -> int:
    """Winding of theta -> h3(D/w, w) along w = radius e^{i theta}."""
    Dc = complex(D)
    if Dc == 0:
        raise PreconditionError("fiber parameter D must be nonzero")
    return circle_winding(lambda w: complex(h3(Dc / w, w)), radius, samples)


def _fiber_degree_z_param(h3, D, radius: float, samples: int) -> int:
    Dc = complex(D)
    return circle_winding(lambda z: complex(h3(z, Dc / z)), radius, samples)


def cohn_continuous_section(z, w) -> tuple:
    """Continuous (not holomorphic) 4-factor section on {zw != 1}.

    h3 = w^2/|w|^{3/2} extends by 0 across w = 0, and h2 = -zw/h3
    simplifies to -z |w|^{3/2}/w, which also vanishes there; h1 and h4
    follow from the family relations.  At w = 0 the tuple is
    (z^2, 0, 0, 0).
    """
    zc, wc = complex(z), complex(w)
    if zc * wc == 1:
        raise PreconditionError("section needs zw != 1")
    if wc == 0:
        h3 = 0j
        h2 = 0j
    else:
        scale = abs(wc) ** 1.5
        h3 = wc * wc / scale
        h2 = -zc * scale / wc
    h1 = (zc * zc - h3) / (1 - zc * wc)
    h4 = (-(wc * wc) - h2) / (1 - zc * wc)
    return (h1, h2, h3, h4)


def continuous_section_h3(z, w) -> complex:
    """Just the h3 = w^2/|w|^{3/2} component, the degree carrier."""
    wc = complex(w)
    if wc == 0:
        return 0j
    return wc * wc / abs(wc) ** 1.5


def section_near_D1(z, w) -> tuple:
    """Section (0, -w/z, z^2, w/z) for z != 0, exact on {zw = 1}.

    The four family relations hold identically in (z, w), so the product
    equals C(z, w) wherever z != 0, not only near zw = 1.
    """
    if is_exact_scalar(z) and is_exact_scalar(w):
        z, w = ExactComplex.coerce(z), ExactComplex.coerce(w)
        zero = ExactComplex.coerce(0)
        vanishes = z.is_zero
    else:
        z, w = complex(z), complex(w)
        zero = 0j
        vanishes = z == 0
    if vanishes:
        raise PreconditionError("section needs z != 0")
    return (zero, -w / z, z * z, w / z)


DIVISOR_OPTIONS = ("1", "z", "w", "zw")


def _divisor_evaluator(name: str) -> Callable[[complex, complex], complex]:
    return {
        "1": lambda z, w: 1.0 + 0j,
        "z": lambda z, w: z,
        "w": lambda z, w: w,
        "zw": lambda z, w: z * w,
    }[name]


def divisor_degrees(D, radius: float = 1.0,
                    samples: int = DEFAULT_SAMPLES) -> list:
    """Fiber degrees of the divisor options {1, z, w, zw}: [0, -1, 1, 0]."""
    return [section_degree_on_fiber(_divisor_evaluator(name), D, radius,
                                    samples)
            for name in DIVISOR_OPTIONS]


def axis_continuation_degrees(d_values: Sequence, radius: float = 1.0,
                              samples: int = DEFAULT_SAMPLES,
                              h3: Callable = None) -> tuple:
    """Degrees of the continuous section in both fiber parametrizations.

    For every D in the sequence (all nonzero, typically shrinking toward
    0) the winding is measured with the loop running in w (z = D/w) and
    again with the loop running in z (w = D/z).  A stable answer across
    the sequence is required; orientation reversal makes the pair sum to
    zero.  The default section gives (+2, -2).
    """
    if not d_values:
        raise PreconditionError("need at least one fiber parameter")
    fn = continuous_section_h3 if h3 is None else h3
    pairs = set()
    for D in d_values:
        if complex(D) == 0:
            raise PreconditionError("fiber parameters must be nonzero")
        pairs.add((section_degree_on_fiber(fn, D, radius, samples),
                   _fiber_degree_z_param(fn, D, radius, samples)))
    if len(pairs) != 1:
        raise VerificationError(
            f"continuation degrees unstable across the sequence: {pairs}")
    return pairs.pop()


def shrinking_circle_degrees(f: Callable[[complex], complex],
                             radii: Sequence = (0.5, 0.25, 0.125, 0.0625),
                             samples: int = DEFAULT_SAMPLES) -> list:
    """Windings of f on circles shrinking toward 0 inside the D = 0 axis.

    A map continuous and nonvanishing at the origin gives all zeros; this
    is the degree a holomorphic section would be forced to have.
    """
    if not radii:
        raise PreconditionError("need at least one radius")
    return [circle_winding(f, r, samples) for r in radii]


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable verdict with the numeric evidence inside."""

    claim: str
    required_degree: int
    achieved: tuple
    verdict: bool
    evidence: dict

    def __post_init__(self):
        if self.verdict != (self.required_degree not in self.achieved):
            raise VerificationError(
                "certificate verdict contradicts its own degree lists")

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "required_degree": self.required_degree,
            "achieved": list(self.achieved),
            "verdict": self.verdict,
            "evidence": dict(self.evidence),
        }


def certificate_from_json(data: dict) -> Certificate:
    return Certificate(data["claim"], data["required_degree"],
                       tuple(data["achieved"]), data["verdict"],
                       dict(data.get("evidence", {})))


def holo_obstruction_certificate(d_probe, radius: float = 1.0,
                                 samples: int = DEFAULT_SAMPLES,
                                 required_degree: int = 2) -> Certificate:
    """Certificate that no holomorphic 4-factor Cohn factorization exists.

    A holomorphic section's h3 restricts on the fiber {zw = D} to a unit
    times one of the divisor options {1, z, w, zw}; units contribute no
    degree (checked for e^{zw}).  The achieved degrees [0, -1, 1, 0] miss
    the degree 2 that the continuous section realizes and that the
    restriction h3 = z^2 on {zw = 1} forces.
    """
    Dc = complex(d_probe)
    if Dc == 0:
        raise PreconditionError("probe fiber must be off the axes (D != 0)")
    achieved = divisor_degrees(Dc, radius, samples)
    unit_degree = section_degree_on_fiber(
        lambda z, w: cmath.exp(z * w), Dc, radius, samples)
    section_degree = section_degree_on_fiber(continuous_section_h3, Dc,
                                             radius, samples)
    evidence = {
        "h3_options": list(DIVISOR_OPTIONS),
        "probe": [Dc.real, Dc.imag],
        "radius": float(radius),
        "samples": int(samples),
        "unit_degree_e_zw": unit_degree,
        "continuous_section_degree": section_degree,
    }
    verdict = required_degree not in achieved
    return Certificate(CLAIM_NO_HOLO_4, required_degree, tuple(achieved),
                       verdict, evidence)
