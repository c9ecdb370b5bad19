"""Homological outputs of a two-form pencil with a planar cone constraint.

Everything funnels through an integer table built from the component counts
of the superlevel filtration and the orientation class of the top eigenspace
bundle.  Antidiagonal three-term sums of the table give the Betti numbers of
the solution set in projective space; the first column gives the ranks of the
inclusion-induced maps; alternating sums give the Euler characteristic.  The
relative pair formula gives the reduced Betti numbers of the spherical double
cover in low degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circle import (
    PlanarCone,
    betti_circle,
    betti_pair,
    canonical_angle,
    closed_half_circle,
    euler_circle,
)
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InvalidInputError, NumericalError
from .filtration import FiltrationReport, filtration_for_cone
from .pencil import QuadraticPencil, degenerate_locus, inertia

PI = math.pi
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpectralTable:
    """The integer table encoding the homology of the solution set.

    rows[j] = (e0, e1, e2) for 0 <= j <= n; entries outside that range are
    zero.  c sits in column 0 at row mu (when mu <= n), d in column 2 at row
    mu - 1; both vanish when the top eigenspace bundle is nonorientable.
    """

    n: int
    mu: int
    nu: int
    c: int
    d: int
    rows: tuple[tuple[int, int, int], ...]
    w1_nonzero: bool

    def entry(self, i: int, j: int) -> int:
        if 0 <= j <= self.n and 0 <= i <= 2:
            return self.rows[j][i]
        return 0

    def display_rows(self) -> list[list[int]]:
        """Rows ordered top to bottom from j = n down to j = 0."""
        return [list(self.rows[j]) for j in range(self.n, -1, -1)]


@dataclass(frozen=True)
class BettiReport:
    """Betti numbers of the solution set and inclusion ranks."""

    b: tuple[int, ...]
    total: int
    chi: int
    ranks: tuple[int, ...]
    empty: bool


def build_table(p: QuadraticPencil, cone: PlanarCone,
                cfg: ToleranceConfig = DEFAULT_CONFIG,
                filtration: FiltrationReport | None = None) -> SpectralTable:
    """Assemble the table from the filtration of the pencil over the cone."""
    filt = filtration if filtration is not None else filtration_for_cone(p, cone, cfg)
    n = p.n
    mu = filt.mu
    if filt.w1_nonzero:
        c, d = 0, 0
    else:
        c, d = 1, betti_circle(filt.omega(mu))[1]
    rows = []
    for j in range(0, n + 1):
        e0 = 1 if j > mu else (c if j == mu else 0)
        e1 = 0
        e2 = 0
        if j <= mu - 1:
            b0j, b1j = betti_circle(filt.omega(j + 1))
            e1 = b0j - 1
            e2 = d if j == mu - 1 else b1j
        rows.append((e0, e1, e2))
    return SpectralTable(n=n, mu=mu, nu=filt.nu, c=c, d=d,
                         rows=tuple(rows), w1_nonzero=filt.w1_nonzero)


def betti_x(table: SpectralTable) -> BettiReport:
    """Betti numbers from antidiagonal sums; empty when the top level fills."""
    n = table.n
    if table.mu == n + 1:
        zeros = tuple([0] * (n + 1))
        return BettiReport(zeros, 0, 0, zeros, True)
    b = []
    ranks = []
    for k in range(0, n + 1):
        b.append(table.entry(0, n - k) + table.entry(1, n - k - 1)
                 + table.entry(2, n - k - 2))
        ranks.append(table.entry(0, n - k))
    total = sum(b)
    chi = sum((-1) ** k * bk for k, bk in enumerate(b))
    return BettiReport(tuple(b), total, chi, tuple(ranks), total == 0)


def betti_complement(p: QuadraticPencil, cone: PlanarCone,
                     cfg: ToleranceConfig = DEFAULT_CONFIG,
                     filtration: FiltrationReport | None = None) -> list[int]:
    """Betti numbers of the complement of the solution set in projective space.

    In degree zero only the component count of the first superlevel set
    enters; the literal cycle term would overcount components of a nonempty
    complement.
    """
    filt = filtration if filtration is not None else filtration_for_cone(p, cone, cfg)
    n = p.n
    out = []
    for k in range(0, n + 1):
        b0k = betti_circle(filt.omega(k + 1))[0]
        if k == 0:
            out.append(b0k)
        else:
            out.append(b0k + betti_circle(filt.omega(k))[1])
    return out


def euler_x(p: QuadraticPencil, cone: PlanarCone,
            cfg: ToleranceConfig = DEFAULT_CONFIG,
            filtration: FiltrationReport | None = None) -> int:
    """Euler characteristic via the alternating sum of superlevel counts.

    Cross-checked against the alternating sum of the table's Betti numbers;
    a mismatch raises, since both must agree exactly for integer inputs.
    """
    filt = filtration if filtration is not None else filtration_for_cone(p, cone, cfg)
    n = p.n
    chi_ambient = 1 if n % 2 == 0 else 0
    acc = chi_ambient
    for j in range(0, n + 1):
        acc += (-1) ** (j + 1) * euler_circle(filt.omega(j + 1))
    chi = (-1) ** n * acc
    table = build_table(p, cone, cfg, filtration=filt)
    report = betti_x(table)
    if not report.empty and chi != report.chi:
        raise NumericalError(
            f"Euler characteristic mismatch: levelwise {chi} vs table {report.chi}")
    if report.empty:
        return 0
    return chi


@dataclass(frozen=True)
class SphereBettiEntry:
    """One degree of the spherical double cover's homology.

    reduced is the reduced Betti number when the formula determines it
    (degrees below n - 2); absolute adds the component correction in degree
    zero.  Out-of-range degrees carry only the transfer upper bound."""

    k: int
    determined: bool
    reduced: int | None
    absolute: int | None
    transfer_bound: int


def betti_y(p: QuadraticPencil, cone: PlanarCone,
            cfg: ToleranceConfig = DEFAULT_CONFIG,
            filtration: FiltrationReport | None = None) -> list[SphereBettiEntry]:
    """Reduced Betti numbers of the solution set on the sphere, where known."""
    filt = filtration if filtration is not None else filtration_for_cone(p, cone, cfg)
    n = p.n
    table = build_table(p, cone, cfg, filtration=filt)
    report = betti_x(table)
    entries: list[SphereBettiEntry] = []
    if report.empty:
        for k in range(0, n + 1):
            entries.append(SphereBettiEntry(k, True, 0, 0, 0))
        return entries
    for k in range(0, n + 1):
        bound = 2 * report.b[k]
        if k < n - 2:
            pair1 = betti_pair(filt.omega(n - k), filt.omega(n - k + 1))[0]
            pair2 = betti_pair(filt.omega(n - k - 1), filt.omega(n - k))[1]
            reduced = pair1 + pair2
            absolute = reduced + (1 if k == 0 else 0)
            entries.append(SphereBettiEntry(k, True, reduced, absolute, bound))
        else:
            entries.append(SphereBettiEntry(k, False, None, None, bound))
    return entries


def check_bounds(report: BettiReport, smooth: bool = False) -> list[str]:
    """Violated complexity bounds, empty when all hold.

    The total is compared against twice the ambient dimension; for smooth
    inputs each Betti number is compared against its dimension-free bound.
    """
    n = len(report.b) - 1
    violations = []
    if report.total > 2 * n:
        violations.append(f"total Betti number {report.total} exceeds {2 * n}")
    if smooth:
        for k, bk in enumerate(report.b):
            if bk > 2 * (k + 2):
                violations.append(f"b_{k} = {bk} exceeds {2 * (k + 2)}")
    return violations


# ---------------------------------------------------------------------------
# index decomposition along a split circle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndexDecomposition:
    rho_plus: int
    rho_minus: int
    lambda_plus: int
    lambda_minus: int
    theta: int
    i_plus_predicted: int
    i_plus_measured: int


def index_decomposition(p: QuadraticPencil, eta_theta: float, omega_theta: float,
                        cfg: ToleranceConfig = DEFAULT_CONFIG) -> IndexDecomposition:
    """Positive index at omega from root bookkeeping on the split circle.

    The degenerate locus is split by the sign of the counterclockwise jump;
    the counts on the two arcs from -eta to omega and omega to eta, plus the
    number of conjugate root pairs, reconstruct the positive index.
    Requires a locus of simple real roots with both probe angles regular.
    """
    locus = degenerate_locus(p, cfg)
    if locus.identically_singular:
        raise InvalidInputError("index decomposition requires a nonsingular family")
    if any(pt.multiplicity != 1 for pt in locus.points):
        raise InvalidInputError("index decomposition requires simple roots")
    eta = canonical_angle(eta_theta)
    omega = canonical_angle(omega_theta)
    angles = locus.angles
    gap_guard = 1e-6
    for probe in (eta, omega):
        if inertia(p.at(probe), cfg, scale=p.scale()).i_zero != 0:
            raise InvalidInputError("probe angle lies on the degenerate locus")
        if angles and min(abs((probe - z + PI) % TWO_PI - PI) for z in angles) < gap_guard:
            raise InvalidInputError("probe angle too close to the degenerate locus")
    pos = (omega - (eta + PI)) % TWO_PI
    if not (gap_guard < pos < PI - gap_guard):
        raise InvalidInputError(
            "omega must lie strictly inside the counterclockwise arc from -eta to eta")

    # split the locus by counterclockwise jump sign
    step = min(1e-3, _min_gap(angles) / 8.0) if angles else 1e-3
    z_plus: list[float] = []
    z_minus: list[float] = []
    for z in angles:
        before = inertia(p.at(z - step), cfg, scale=p.scale()).i_plus
        after = inertia(p.at(z + step), cfg, scale=p.scale()).i_plus
        if after - before == 1:
            z_plus.append(z)
        elif after - before == -1:
            z_minus.append(z)
        else:
            raise NumericalError(f"jump at {z} is not unit; locus not simple")

    def count_on_arc(zs: list[float], lo: float, hi_offset: float) -> int:
        # arc from lo counterclockwise by hi_offset
        return sum(1 for z in zs if 0.0 < (z - lo) % TWO_PI < hi_offset)

    start = canonical_angle(eta + PI)
    rho_plus = count_on_arc(z_plus, start, pos)
    rho_minus = count_on_arc(z_minus, start, pos)
    lam_plus = count_on_arc(z_plus, omega, PI - pos)
    lam_minus = count_on_arc(z_minus, omega, PI - pos)
    theta = locus.theta_pairs
    predicted = rho_plus + lam_minus + theta
    measured = inertia(p.at(omega), cfg, scale=p.scale()).i_plus
    return IndexDecomposition(rho_plus, rho_minus, lam_plus, lam_minus,
                              theta, predicted, measured)


def _min_gap(angles: list[float]) -> float:
    if len(angles) < 2:
        return TWO_PI
    s = sorted(angles)
    gaps = [(s[(i + 1) % len(s)] - s[i]) % TWO_PI for i in range(len(s))]
    return min(g for g in gaps if g > 0)


def half_circle_bound(p: QuadraticPencil, cone: PlanarCone, eta_theta: float,
                      cfg: ToleranceConfig = DEFAULT_CONFIG,
                      filtration: FiltrationReport | None = None) -> list[int]:
    """Per-degree bounds from component counts on the two half circles at eta.

    For a nonsingular solution set the degree-k Betti number is at most the
    returned bound whenever the superlevel set at n - k is nonempty; in lower
    degrees the Betti number is the rank class alone (at most one) and the
    empty superlevel set contributes zero to the table row.
    """
    if inertia(p.at(eta_theta), cfg, scale=p.scale()).i_zero != 0:
        raise InvalidInputError("the splitting angle must be regular")
    filt = filtration if filtration is not None else filtration_for_cone(p, cone, cfg)
    n = p.n
    c1 = closed_half_circle(eta_theta)
    c2 = closed_half_circle(eta_theta + PI)
    out = []
    for k in range(0, n + 1):
        om = filt.omega(n - k)
        out.append(betti_circle(om.intersect(c1))[0]
                   + betti_circle(om.intersect(c2))[0])
    return out


# ---------------------------------------------------------------------------
# aggregate result
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnalysisResult:
    filtration: FiltrationReport
    table: SpectralTable
    report: BettiReport
    chi: int


def analyze(p: QuadraticPencil, cone: PlanarCone,
            cfg: ToleranceConfig = DEFAULT_CONFIG) -> AnalysisResult:
    """The full pipeline: filtration, table, Betti numbers, Euler number."""
    filt = filtration_for_cone(p, cone, cfg)
    table = build_table(p, cone, cfg, filtration=filt)
    report = betti_x(table)
    chi = euler_x(p, cone, cfg, filtration=filt)
    return AnalysisResult(filt, table, report, chi)


def result_json(res: AnalysisResult) -> dict:
    return {
        "b": list(res.report.b),
        "total": res.report.total,
        "chi": res.chi,
        "ranks": list(res.report.ranks),
        "table": res.table.display_rows(),
        "mu": res.table.mu,
        "nu": res.table.nu,
        "w1": res.table.w1_nonzero,
        "empty": res.report.empty,
    }
