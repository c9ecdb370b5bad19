"""Linear algebra of a pencil of two symmetric forms over the circle.

The central object is the family omega -> cos(theta) Q0 + sin(theta) Q1.
This module computes inertia triples, the degenerate locus (angles where the
determinant of the family vanishes, with multiplicities and the count of
non-real projective roots), and the small positive-definite shift that makes
every degenerate point simple with unit inertia jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import chebyshev as cheb

from .circle import canonical_angle
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InvalidInputError, NumericalError

TWO_PI = 2.0 * math.pi
PI = math.pi

# relative symmetry tolerance for input matrices
TOL_SYM = 1e-12
# |Im(root)| below IMAG_TOL * (1 + |Re|) counts as a real root; generous enough
# that a numerically split double root is still recognized as real
IMAG_TOL = 1e-6
# relative threshold for trimming trailing interpolation coefficients
TRIM_TOL = 1e-10


def _as_symmetric(m, what: str) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{what} must be a square matrix")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if float(np.max(np.abs(a - a.T))) > TOL_SYM * scale:
        raise InvalidInputError(f"{what} is not symmetric within tolerance")
    sym = 0.5 * (a + a.T)
    sym.setflags(write=False)
    return sym


class InertiaTriple(NamedTuple):
    """Counts of positive, negative and (numerically) zero eigenvalues."""

    i_plus: int
    i_minus: int
    i_zero: int

    @property
    def dim(self) -> int:
        return self.i_plus + self.i_minus + self.i_zero


@dataclass(frozen=True, eq=False)
class QuadraticPencil:
    """A pair of symmetric forms acting on R^(n+1)."""

    q0: np.ndarray
    q1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q0", _as_symmetric(self.q0, "Q0"))
        object.__setattr__(self, "q1", _as_symmetric(self.q1, "Q1"))
        if self.q0.shape != self.q1.shape:
            raise InvalidInputError("Q0 and Q1 must have equal dimensions")
        if self.dim < 1:
            raise InvalidInputError("pencil dimension must be at least 1")

    @property
    def dim(self) -> int:
        return self.q0.shape[0]

    @property
    def n(self) -> int:
        return self.dim - 1

    def scale(self) -> float:
        """A spectral-norm scale of the pair, used for relative tolerances."""
        s0 = float(np.linalg.norm(self.q0, 2)) if self.dim else 0.0
        s1 = float(np.linalg.norm(self.q1, 2)) if self.dim else 0.0
        return max(s0, s1)

    def at(self, theta: float) -> np.ndarray:
        return math.cos(theta) * self.q0 + math.sin(theta) * self.q1

    def derivative_at(self, theta: float) -> np.ndarray:
        return -math.sin(theta) * self.q0 + math.cos(theta) * self.q1

    def evaluate(self, x: np.ndarray) -> tuple[float, float]:
        x = np.asarray(x, dtype=float)
        return (float(x @ self.q0 @ x), float(x @ self.q1 @ x))

    def shifted(self, c0: float, c1: float) -> "QuadraticPencil":
        """The pencil of (q0 - c0*g, q1 - c1*g) with g the unit-sphere form."""
        eye = np.eye(self.dim)
        return QuadraticPencil(self.q0 - c0 * eye, self.q1 - c1 * eye)

    def to_json(self) -> dict:
        return {"n": self.n, "Q0": self.q0.tolist(), "Q1": self.q1.tolist()}

    @staticmethod
    def from_json(data: dict) -> "QuadraticPencil":
        try:
            q0 = data["Q0"]
            q1 = data["Q1"]
        except KeyError as exc:
            raise InvalidInputError(f"problem JSON missing key {exc}") from exc
        p = QuadraticPencil(q0, q1)
        if "n" in data and int(data["n"]) != p.n:
            raise InvalidInputError("declared n does not match matrix dimension")
        return p


def pencil_at(p: QuadraticPencil, theta: float) -> np.ndarray:
    """The symmetric matrix of the family at angle theta."""
    return p.at(theta)


def inertia(m: np.ndarray, cfg: ToleranceConfig = DEFAULT_CONFIG,
            scale: float | None = None) -> InertiaTriple:
    """Eigenvalue sign counts of a symmetric matrix.

    Eigenvalues within cfg.tol_eig * scale of zero count as zero; by default
    the scale is the matrix's own spectral norm.  Evaluations of a matrix
    family must pass the family's scale instead, so that a member that is a
    tiny multiple of a definite matrix still reads as degenerate.
    """
    a = _as_symmetric(m, "matrix")
    try:
        w = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue solver failed: {exc}") from exc
    if scale is None:
        scale = float(np.max(np.abs(w))) if w.size else 0.0
    thr = cfg.tol_eig * scale
    plus = int(np.sum(w > thr))
    minus = int(np.sum(w < -thr))
    return InertiaTriple(plus, minus, a.shape[0] - plus - minus)


def sylvester_check(m: np.ndarray, t: np.ndarray,
                    cfg: ToleranceConfig = DEFAULT_CONFIG) -> bool:
    """Whether inertia is preserved under the congruence m -> t' m t."""
    a = _as_symmetric(m, "matrix")
    t = np.asarray(t, dtype=float)
    return inertia(a, cfg) == inertia(t.T @ a @ t, cfg)


# ---------------------------------------------------------------------------
# degenerate locus of the pencil
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegeneratePoint:
    theta: float
    multiplicity: int


@dataclass(frozen=True)
class DegenerateLocus:
    """Roots on the circle of the determinant of the family.

    points come in antipodal pairs carrying the algebraic multiplicity of the
    underlying projective root; theta_pairs counts conjugate pairs of
    non-real projective roots.  identically_singular means the determinant
    vanishes for every angle.
    """

    points: tuple[DegeneratePoint, ...]
    theta_pairs: int
    identically_singular: bool

    @property
    def angles(self) -> list[float]:
        return [p.theta for p in self.points]

    def real_projective_count(self) -> int:
        """Number of real projective roots counted with multiplicity."""
        return sum(p.multiplicity for p in self.points) // 2


def _cluster_periodic(values: list[float], period: float, tol: float) -> list[tuple[float, int]]:
    """Cluster near-equal values on a circle of the given period."""
    if not values:
        return []
    vals = sorted(v % period for v in values)
    clusters: list[list[float]] = [[vals[0]]]
    for v in vals[1:]:
        if v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    # wraparound: last cluster may continue into the first
    if len(clusters) > 1 and (vals[0] + period) - clusters[-1][-1] <= tol:
        first = clusters.pop(0)
        clusters[-1].extend(v + period for v in first)
    return [(sum(c) / len(c) % period, len(c)) for c in clusters]


def _polish_simple_root(p: QuadraticPencil, theta: float, eps: float = 0.0,
                        shift: np.ndarray | None = None, iters: int = 3) -> float:
    """Newton refinement of a simple zero of the smallest eigenvalue."""
    offset = eps * shift if shift is not None else 0.0
    for _ in range(iters):
        m = p.at(theta) - offset
        w, v = np.linalg.eigh(m)
        k = int(np.argmin(np.abs(w)))
        lam = w[k]
        vec = v[:, k]
        slope = float(vec @ p.derivative_at(theta) @ vec)
        if abs(slope) < 1e-9:
            break
        step = -lam / slope
        if abs(step) > 1e-2:
            break
        theta += step
    return theta


def cluster_tol(cfg: ToleranceConfig) -> float:
    return max(10.0 * cfg.tol_angle, 3e-6)


def degenerate_locus(p: QuadraticPencil,
                     cfg: ToleranceConfig = DEFAULT_CONFIG) -> DegenerateLocus:
    """Locate all circle angles where the family drops rank.

    The determinant in the affine chart t -> det(Q0 + t*Q1) is interpolated
    from n+2 Chebyshev nodes; roots come from the companion (colleague)
    matrix of the fitted polynomial.  A degree drop of d signals a projective
    root at the vertical direction with multiplicity d.
    """
    dim = p.dim
    s = p.scale()
    if s == 0.0:
        return DegenerateLocus((), 0, True)
    a0 = p.q0 / s
    a1 = p.q1 / s

    # a degree-(n+1) form vanishing at n+2 distinct projective points is zero
    singular_everywhere = True
    for i in range(dim + 1):
        th = PI * (i + 0.5) / (dim + 1)
        m = math.cos(th) * a0 + math.sin(th) * a1
        w = np.linalg.eigvalsh(m)
        if float(np.min(np.abs(w))) > 1e-8:
            singular_everywhere = False
            break
    if singular_everywhere:
        return DegenerateLocus((), 0, True)

    nodes = np.cos(PI * (2 * np.arange(dim + 1) + 1) / (2 * (dim + 1)))
    vals = np.array([np.linalg.det(a0 + t * a1) for t in nodes])
    coeffs = cheb.chebfit(nodes, vals, dim)
    top = float(np.max(np.abs(coeffs)))
    trimmed = cheb.chebtrim(coeffs, TRIM_TOL * top)
    inf_mult = dim - (len(trimmed) - 1)
    roots = cheb.chebroots(trimmed) if len(trimmed) > 1 else np.array([])

    proj: list[float] = []
    nonreal = 0
    for r in np.atleast_1d(roots):
        if abs(r.imag) <= IMAG_TOL * (1.0 + abs(r.real)):
            proj.append(math.atan(float(r.real)) % PI)
        else:
            nonreal += 1
    proj.extend([PI / 2] * inf_mult)
    if nonreal % 2 != 0:
        raise NumericalError("unpaired non-real root; tolerances inconsistent")

    clusters = _cluster_periodic(proj, PI, cluster_tol(cfg))
    points: list[DegeneratePoint] = []
    for center, mult in clusters:
        theta = center
        if mult == 1:
            theta = _polish_simple_root(p, center) % PI
        points.append(DegeneratePoint(canonical_angle(theta), mult))
        points.append(DegeneratePoint(canonical_angle(theta + PI), mult))
    points.sort(key=lambda q: q.theta)
    return DegenerateLocus(tuple(points), nonreal // 2, False)


# ---------------------------------------------------------------------------
# positive-definite regularization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularizedPencil:
    """The family omega -> omega Q - epsilon * p with p a positive form.

    p is the identity form by default; on repeated failure of the simplicity
    checks a seeded random positive perturbation of the identity is drawn.
    """

    pencil: QuadraticPencil
    epsilon: float
    shift: np.ndarray  # the positive-definite form p (matrix)
    breakpoints: tuple[float, ...]

    def at(self, theta: float) -> np.ndarray:
        return self.pencil.at(theta) - self.epsilon * self.shift


def _regularized_root_angles(p: QuadraticPencil, eps: float, shift: np.ndarray,
                             cfg: ToleranceConfig,
                             anchors: list[float] | None = None
                             ) -> list[tuple[float, int]]:
    """Clustered roots of det(omega Q - eps*shift) on the full circle.

    Uses a half-angle chart centered away from any root: with
    theta = phi0 + 2*atan(u), (1+u^2) * M(theta(u)) has polynomial entries in
    u of degree 2, so its determinant is a polynomial of degree <= 2(n+1).
    The interpolated determinant loses relative accuracy in high dimension,
    so crossings are additionally sought by branch-wise Newton anchored at
    the unshifted family's degenerate points; spurious interpolation roots
    are pruned downstream against the actual spectrum.
    """
    dim = p.dim
    s = p.scale()
    scale = max(s, eps)
    a0, a1 = p.q0 / scale, p.q1 / scale
    sh = (eps / scale) * shift

    def matrix_num(u: float, phi0: float) -> np.ndarray:
        c = math.cos(phi0) * (1 - u * u) - 2 * u * math.sin(phi0)
        si = math.sin(phi0) * (1 - u * u) + 2 * u * math.cos(phi0)
        return c * a0 + si * a1 - (1 + u * u) * sh

    # pick a chart center whose antipode is far from singular
    best_phi, best_gap = 0.0, -1.0
    for cand in (0.123456, 0.987654, 1.543210, 2.246810, 0.555555):
        m = p.at(cand + PI) / scale - (eps / scale) * shift
        gap = float(np.min(np.abs(np.linalg.eigvalsh(m))))
        if gap > best_gap:
            best_phi, best_gap = cand, gap
    phi0 = best_phi

    deg = 2 * dim
    nodes = np.cos(PI * (2 * np.arange(deg + 1) + 1) / (2 * (deg + 1)))
    vals = np.array([np.linalg.det(matrix_num(u, phi0)) for u in nodes])
    top = float(np.max(np.abs(vals)))
    if top == 0.0:
        raise NumericalError("regularized determinant vanished at all nodes")
    coeffs = cheb.chebfit(nodes, vals, deg)
    trimmed = cheb.chebtrim(coeffs, TRIM_TOL * float(np.max(np.abs(coeffs))))
    inf_mult = deg - (len(trimmed) - 1)
    roots = cheb.chebroots(trimmed) if len(trimmed) > 1 else np.array([])

    angles: list[float] = []
    suspects: list[float] = []
    for r in np.atleast_1d(roots):
        if abs(r.imag) <= IMAG_TOL * (1.0 + abs(r.real)):
            angles.append(canonical_angle(phi0 + 2.0 * math.atan(float(r.real))))
        elif abs(r.imag) <= 0.05 * (1.0 + abs(r.real)):
            # a stack of crossings too tight for global interpolation shows
            # up as a spray of slightly complex roots; keep the location
            suspects.append(canonical_angle(phi0 + 2.0 * math.atan(float(r.real))))
    angles.extend([canonical_angle(phi0 + PI)] * inf_mult)

    clusters = _cluster_periodic(angles, TWO_PI, cluster_tol(cfg))
    suspect_clusters = _cluster_periodic(suspects, TWO_PI, 1e-3)
    resolved: list[tuple[float, int]] = []
    handled_suspects: set[int] = set()
    for center, mult in clusters:
        near = [i for i, (sc, _) in enumerate(suspect_clusters)
                if abs((sc - center + PI) % TWO_PI - PI) < 1e-3]
        if mult == 1 and not near:
            resolved.append((center, 1))
            continue
        handled_suspects.update(near)
        split = _resolve_crossing_stack(p, eps, shift, center, cfg)
        if split is not None and len(split) >= mult:
            resolved.extend((t, 1) for t in split)
        else:
            resolved.append((center, mult))
    for i, (center, _) in enumerate(suspect_clusters):
        if i in handled_suspects:
            continue
        split = _resolve_crossing_stack(p, eps, shift, center, cfg)
        if split:
            resolved.extend((t, 1) for t in split)
    for anchor in anchors or []:
        split = _resolve_crossing_stack(p, eps, shift, anchor, cfg)
        if split:
            resolved.extend((t, 1) for t in split)
    resolved.sort()
    # neighbouring members of one stack resolve to the same crossings; keep
    # one copy of each
    deduped: list[tuple[float, int]] = []
    for theta, mult in resolved:
        if deduped and theta - deduped[-1][0] <= 1e-8:
            deduped[-1] = (deduped[-1][0], max(deduped[-1][1], mult))
        else:
            deduped.append((theta, mult))
    if len(deduped) >= 2 and (deduped[0][0] + TWO_PI) - deduped[-1][0] <= 1e-8:
        deduped[0] = (deduped[0][0], max(deduped[0][1], deduped[-1][1]))
        deduped.pop()
    return deduped


def _resolve_crossing_stack(p: QuadraticPencil, eps: float, shift: np.ndarray,
                            center: float,
                            cfg: ToleranceConfig) -> list[float] | None:
    """Separate near-coincident crossings of the shifted family branch-wise.

    Every eigenvalue branch that is small at the center is followed by
    Newton steps with eigenvector tracking; branches that converge to a
    genuine nearby zero yield one crossing each.  Returns the separated
    angles (well apart by the clustering tolerance), or None when the
    branches cannot be told apart.
    """
    scale = max(p.scale(), eps)
    m0 = p.at(center) - eps * shift
    w, v = np.linalg.eigh(m0)
    band = 100.0 * max(eps, cfg.tol_eig * scale)
    candidates = [i for i in range(len(w)) if abs(w[i]) <= band]
    if not candidates:
        return None
    roots: list[float] = []
    for idx in candidates:
        theta = center
        lam = float(w[idx])
        vec = v[:, idx]
        converged = False
        for _ in range(6):
            slope = float(vec @ p.derivative_at(theta) @ vec)
            if abs(slope) < 1e-10 * scale:
                break
            theta -= lam / slope
            if abs(theta - center) > 5e-3:
                break
            w2, v2 = np.linalg.eigh(p.at(theta) - eps * shift)
            j = int(np.argmax(np.abs(v2.T @ vec)))
            lam = float(w2[j])
            vec = v2[:, j]
            if abs(lam) <= 1e-10 * scale:
                converged = True
                break
        if converged:
            roots.append(canonical_angle(theta))
    if not roots:
        return None
    roots.sort()
    sep = 10.0 * cfg.tol_angle
    for a, b in zip(roots, roots[1:]):
        if b - a <= sep:
            return None
    return roots


def _validate_regularization(p: QuadraticPencil, eps: float, shift: np.ndarray,
                             clusters: list[tuple[float, int]],
                             cfg: ToleranceConfig) -> tuple[float, ...] | None:
    """Polish and prune roots, then verify simplicity and unit index jumps."""
    eye_term = eps * shift

    def family(theta: float) -> np.ndarray:
        return p.at(theta) - eye_term

    thr_scale = cfg.tol_eig * max(p.scale(), eps)
    # the interpolated determinant can spray phantom roots; polish every
    # cluster onto the spectrum and drop whatever is not an actual crossing
    # (the caller's root-count accounting guards against over-pruning)
    genuine: list[tuple[float, int]] = []
    for th, mult in clusters:
        z = canonical_angle(_polish_simple_root(p, th, eps, shift))
        if float(np.min(np.abs(np.linalg.eigvalsh(family(z))))) <= 1e2 * thr_scale:
            genuine.append((z, mult))
    if any(mult != 1 for _, mult in genuine):
        return None
    kept = sorted(z for z, _ in genuine)
    polished = []
    for z in kept:
        if polished and z - polished[-1] <= 1e-8:
            continue
        polished.append(z)
    if len(polished) >= 2 and (polished[0] + TWO_PI) - polished[-1] <= 1e-8:
        polished.pop()
    if polished:
        sep = 10.0 * cfg.tol_angle
        for i in range(len(polished)):
            gap = (polished[(i + 1) % len(polished)] - polished[i]) % TWO_PI
            if len(polished) > 1 and gap <= sep:
                return None
    m_count = len(polished)
    if m_count == 0:
        return ()
    minus = []
    for i in range(m_count):
        z = polished[i]
        z_next = polished[(i + 1) % m_count] + (TWO_PI if i == m_count - 1 else 0.0)
        w = np.linalg.eigvalsh(family(z))
        near_zero = int(np.sum(np.abs(w) <= 1e2 * thr_scale))
        if near_zero != 1:
            return None
        mid = 0.5 * (z + z_next)
        wm = np.linalg.eigvalsh(family(mid))
        if float(np.min(np.abs(wm))) <= 1e2 * thr_scale:
            return None
        minus.append(int(np.sum(wm < 0.0)))
    for i in range(m_count):
        if abs(minus[i] - minus[i - 1]) != 1:
            return None
    return tuple(polished)


def regularize(p: QuadraticPencil,
               cfg: ToleranceConfig = DEFAULT_CONFIG) -> RegularizedPencil:
    """Choose a shift size that makes the degenerate locus simple.

    Starts from cfg.epsilon_reg (auto-scaled when unset) and halves until the
    shifted family has only simple roots with inertia jumps of exactly one.
    The positive form is the identity; if every halving fails, a seeded random
    positive perturbation of the identity is tried.
    """
    dim = p.dim
    s = p.scale()
    if s == 0.0:
        raise NumericalError("zero pencil cannot be regularized")
    locus = degenerate_locus(p, cfg)
    # Root-count accounting against the original locus.  With simple original
    # roots each contributes exactly one crossing of the shifted family, so
    # any deficit means the shift exceeds the height of an eigenvalue bump
    # between two roots (a lost component) and any surplus means a positive
    # eigenvalue dips below the shift without vanishing (a fake cut); both
    # violate the spectrum separation the shift must preserve.  Multiple
    # roots split into several crossings, so only the lower bound applies.
    if locus.identically_singular:
        expected_roots, exact_count = None, False
    else:
        expected_roots = len(locus.points)
        exact_count = all(pt.multiplicity == 1 for pt in locus.points)
    if cfg.epsilon_reg is not None:
        eps0 = cfg.epsilon_reg
    else:
        gap = TWO_PI
        angs = locus.angles
        for i in range(len(angs)):
            d = (angs[(i + 1) % len(angs)] - angs[i]) % TWO_PI
            if len(angs) > 1 and d > 0:
                gap = min(gap, d)
        eps0 = s * min(1e-4, gap / 16.0)
        eps0 = max(eps0, s * 1e-8)

    rng = np.random.default_rng(cfg.seed)
    shift = np.eye(dim)
    for trial in range(3):
        eps = eps0
        for _ in range(36):
            try:
                clusters = _regularized_root_angles(p, eps, shift, cfg,
                                                    anchors=locus.angles)
            except NumericalError:
                eps *= 0.5
                continue
            bp = _validate_regularization(p, eps, shift, clusters, cfg)
            if bp is not None:
                total = len(bp)
                if expected_roots is None or (
                        total >= expected_roots
                        and (not exact_count or total == expected_roots)):
                    return RegularizedPencil(p, eps, shift, bp)
            eps *= 0.5
        # crossings of a shifted multiple eigenvalue are separated by the
        # spread of the perturbation's spectrum times the shift size, so the
        # perturbation must be generous to clear the clustering tolerance
        perturb = rng.standard_normal((dim, dim))
        perturb = 0.5 * (perturb + perturb.T)
        shift = np.eye(dim) + 0.3 * perturb / max(1.0, float(np.linalg.norm(perturb, 2)))
        wmin = float(np.min(np.linalg.eigvalsh(shift)))
        if wmin <= 0.1:
            shift = np.eye(dim)
    raise NumericalError("failed to find a regularizing shift size")


def regularized_inertia(reg: RegularizedPencil, theta: float,
                        cfg: ToleranceConfig = DEFAULT_CONFIG) -> InertiaTriple:
    return inertia(reg.at(theta), cfg, scale=max(reg.pencil.scale(), reg.epsilon))
