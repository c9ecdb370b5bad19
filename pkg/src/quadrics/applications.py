"""Convexity-theory and level-set applications of the pencil machinery.

Positive-combination certificates, emptiness tests, membership of points in
the image of the sphere under the quadratic map, support-function bounds for
that image, Betti numbers of affine level sets of the map, and the diagonal
family that attains the sharp total-Betti bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .betti import analyze
from .circle import (
    Arc,
    CircleSubset,
    PlanarCone,
    betti_pair,
    canonical_angle,
    omega_set,
    open_half_circle,
)
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InvalidInputError, NumericalError
from .filtration import (
    FiltrationReport,
    filtration_for_cone,
    index_profile,
    level_subset,
)
from .pencil import QuadraticPencil

PI = math.pi
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Certificate:
    """Outcome of a definiteness or membership query.

    kind is one of positive_combination, emptiness, membership, refutation.
    theta is the certified direction on the circle when one exists; margin the
    smallest eigenvalue achieved there.
    """

    kind: str
    theta: float | None = None
    margin: float | None = None
    witness: tuple | None = None
    mu: int | None = None
    warning: str | None = None

    @property
    def omega(self) -> tuple[float, float] | None:
        if self.theta is None:
            return None
        return (math.cos(self.theta), math.sin(self.theta))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "theta": self.theta,
            "omega": list(self.omega) if self.omega is not None else None,
            "margin": self.margin,
            "witness": list(self.witness) if self.witness is not None else None,
            "mu": self.mu,
            "warning": self.warning,
        }


def _lambda_min(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0])


def _lambda_max(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[-1])


def _arc_midpoints(subset: CircleSubset) -> list[float]:
    if subset.is_full():
        return [0.0, PI / 2, PI, 3 * PI / 2]
    mids = []
    for item in subset.items:
        if isinstance(item, Arc):
            mids.append(canonical_angle(0.5 * (item.start + item.end)))
        else:
            mids.append(item.theta)
    return mids


def _longest_arc_midpoint(subset: CircleSubset) -> float:
    best_theta, best_len = None, -1.0
    for item in subset.items:
        if isinstance(item, Arc) and item.length > best_len:
            best_len = item.length
            best_theta = canonical_angle(0.5 * (item.start + item.end))
    if best_theta is None:
        for item in subset.items:
            return item.theta
        raise NumericalError("no arc to certify from")
    return best_theta


def calabi(p: QuadraticPencil, cfg: ToleranceConfig = DEFAULT_CONFIG,
           filtration: FiltrationReport | None = None) -> Certificate:
    """A positive definite combination of the two forms, or its refutation.

    The combination exists exactly when the top superlevel set over the full
    circle is nonempty; the certificate direction is the midpoint of its
    longest arc.  For fewer than three variables the certified equivalence
    with emptiness of the common zero locus fails, so a warning is attached.
    """
    filt = filtration if filtration is not None else \
        filtration_for_cone(p, PlanarCone.zero(), cfg)
    dim = p.dim
    warning = None
    if dim < 3:
        warning = ("with fewer than three variables a jointly definite "
                   "combination may fail to exist for an empty zero locus")
    if filt.mu == dim:
        top = filt.omega(dim)
        theta = _longest_arc_midpoint(top)
        margin = _lambda_min(p.at(theta))
        if margin <= 0.0:
            raise NumericalError("certificate direction failed verification")
        return Certificate("positive_combination", theta=theta, margin=margin,
                           mu=filt.mu, warning=warning)
    best_theta, best_margin = 0.0, -math.inf
    for th in _arc_midpoints(filt.profile.domain) + \
            [canonical_angle(b) for b in filt.profile.breakpoint_angles()]:
        m = _lambda_min(p.at(th))
        if m > best_margin:
            best_theta, best_margin = th, m
    return Certificate("refutation", theta=best_theta, margin=best_margin,
                       mu=filt.mu, warning=warning)


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    mu: int
    certificate: Certificate | None


def is_empty_x(p: QuadraticPencil, cone: PlanarCone,
               cfg: ToleranceConfig = DEFAULT_CONFIG) -> EmptinessResult:
    """Whether the solution set in projective space is empty.

    Emptiness is read off the homology: a nonempty compact set has positive
    total Betti number, and the top filtration level filling up forces
    emptiness directly.  For the zero cone in at least three variables an
    emptiness verdict carries a positive-combination certificate.
    """
    res = analyze(p, cone, cfg)
    empty = res.report.empty
    cert = None
    if empty and cone.kind == "zero" and p.dim >= 3:
        cert = calabi(p, cfg, filtration=res.filtration)
        if cert.kind != "positive_combination":
            raise NumericalError("emptiness verdict without a certificate")
    return EmptinessResult(empty, res.filtration.mu, cert)


def image_membership(p: QuadraticPencil, c: tuple[float, float],
                     cfg: ToleranceConfig = DEFAULT_CONFIG
                     ) -> tuple[bool, Certificate]:
    """Whether c lies in the image of the unit sphere under the quadratic map.

    Shifting both forms by the sphere form reduces membership to emptiness of
    the shifted common zero locus; non-membership yields a separating
    direction along which the shifted family is positive definite.
    """
    if p.dim < 3:
        raise InvalidInputError("image membership requires at least three variables")
    shifted = p.shifted(c[0], c[1])
    filt = filtration_for_cone(shifted, PlanarCone.zero(), cfg)
    if filt.mu < p.dim:
        return (True, Certificate("membership", mu=filt.mu))
    cert = calabi(shifted, cfg, filtration=filt)
    return (False, Certificate("emptiness", theta=cert.theta, margin=cert.margin,
                               mu=filt.mu))


def support_function(p: QuadraticPencil, theta: float) -> float:
    """Largest eigenvalue of the family at theta: the support value of the
    sphere image in that direction."""
    return _lambda_max(p.at(theta))


# ---------------------------------------------------------------------------
# level sets of the quadratic map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelProblem:
    """An affine level problem q(x) = c or q(x) <= c componentwise."""

    pencil: QuadraticPencil
    c: tuple[float, float]
    mode: str = "eq"

    def __post_init__(self):
        if self.mode not in ("eq", "ineq"):
            raise InvalidInputError("mode must be 'eq' or 'ineq'")

    @property
    def cone(self) -> PlanarCone | None:
        return PlanarCone.nonpositive_quadrant() if self.mode == "ineq" else None


@dataclass(frozen=True)
class LevelSetResult:
    nonempty: bool
    b_tilde: tuple[int, ...]
    min_negative_index: int | None  # None when the half circle is empty


def _negative_direction_halfcircle(c: tuple[float, float],
                                   tol: float) -> CircleSubset:
    """{omega : <omega, c> < 0}, empty when c = 0."""
    if math.hypot(c[0], c[1]) == 0.0:
        return CircleSubset.empty(tol)
    return open_half_circle(math.atan2(-c[1], -c[0]), tol)


def _level_result(p: QuadraticPencil, domain: CircleSubset,
                  cfg: ToleranceConfig) -> LevelSetResult:
    n = p.n
    if domain.is_empty():
        # the level value is already attainable at the origin
        return LevelSetResult(True, tuple([0] * (n + 1)), None)
    prof = index_profile(p, domain, cfg)
    min_minus = min(v.i_minus for v in prof.all_values())
    nonempty = min_minus != 0
    if not nonempty:
        return LevelSetResult(False, tuple([0] * (n + 1)), min_minus)
    levels = [level_subset(prof, lambda v, kk=k: v.i_minus <= kk)
              for k in range(0, n + 3)]
    b_tilde = []
    for k in range(0, n + 1):
        first = betti_pair(levels[k + 1], levels[k])[0]
        second = betti_pair(levels[k + 2], levels[k + 1])[1]
        b_tilde.append(first + second)
    return LevelSetResult(True, tuple(b_tilde), min_minus)


def level_set_betti(problem: LevelProblem,
                    cfg: ToleranceConfig = DEFAULT_CONFIG) -> LevelSetResult:
    """Nonemptiness and reduced Betti numbers of the affine level set q = c.

    The test runs over the open half circle of directions pairing negatively
    with c; the level set is empty exactly when the negative index vanishes
    somewhere there.  An empty half circle (c = 0) means the level set is the
    cone over its spherical section, hence nonempty and contractible.
    """
    if problem.mode != "eq":
        raise InvalidInputError("level_set_betti expects an equality problem")
    domain = _negative_direction_halfcircle(problem.c, cfg.tol_angle)
    return _level_result(problem.pencil, domain, cfg)


def inequality_level_set(problem: LevelProblem,
                         cfg: ToleranceConfig = DEFAULT_CONFIG) -> LevelSetResult:
    """Same as level_set_betti for the componentwise system q <= c.

    Directions are restricted to the polar arc of the nonpositive quadrant.
    """
    if problem.mode != "ineq":
        raise InvalidInputError("inequality_level_set expects an inequality problem")
    half = _negative_direction_halfcircle(problem.c, cfg.tol_angle)
    quadrant_arc = omega_set(PlanarCone.nonpositive_quadrant(), cfg.tol_angle)
    domain = quadrant_arc.intersect(half)
    return _level_result(problem.pencil, domain, cfg)


def solve_level_problem(problem: LevelProblem,
                        cfg: ToleranceConfig = DEFAULT_CONFIG) -> LevelSetResult:
    if problem.mode == "eq":
        return level_set_betti(problem, cfg)
    return inequality_level_set(problem, cfg)


# ---------------------------------------------------------------------------
# the extremal diagonal family
# ---------------------------------------------------------------------------

def extremal_family(n: int) -> QuadraticPencil:
    """The diagonal pair with k-th entries at the (n+1)-st roots of unity.

    Its index profile alternates between the two middle values, each attained
    n+1 times around the circle, and its solution set attains the sharp total
    Betti number 2n.
    """
    if n < 1:
        raise InvalidInputError("the extremal family needs n >= 1")
    angles = 2.0 * PI * np.arange(n + 1) / (n + 1)
    return QuadraticPencil(np.diag(np.cos(angles)), np.diag(np.sin(angles)))
