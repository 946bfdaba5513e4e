"""Monic real polynomials, root multisets, and symmetric-function transforms.

Coefficient convention: a monic polynomial of degree d is stored as the tuple
(f_1, ..., f_d) where p(t) = t^d + f_1 t^(d-1) + ... + f_d.  With roots a_i,
the elementary symmetric functions satisfy e_i(a) = (-1)^i f_i.

Root extraction (:func:`roots_of`) must recover multiplicities, which is the
delicate part: companion-matrix eigenvalues of an m-fold root spread like
eps^(1/m) (a mult-5 root scatters its eigenvalues over ~1e-3), while the mean
of such a cluster is first-order accurate.  The clustering below therefore
considers the cuts of a single-linkage dendrogram, admits a cluster only when
its diameter is explained either by the caller's cluster_tol or by the local
perturbation-theory splitting radius computed from p's own derivatives, and
accepts the coarsest admissible partition that reproduces the coefficients.
Ambiguity near the thresholds raises IllConditioned instead of guessing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .compositions import Composition
from .config import DEFAULT_CONFIG, SolverConfig
from .errors import (
    IllConditioned,
    InvalidRange,
    InvalidS,
    LengthMismatch,
    MismatchedDegree,
    NotHyperbolic,
)

_EPS = float(np.finfo(float).eps)
# safety multipliers in the admissible-splitting bound; see module docstring
_NOISE_FACTOR = 50.0
_SPLIT_SAFETY = 30.0


@dataclass(frozen=True)
class MonicPoly:
    """Monic polynomial t^d + f_1 t^(d-1) + ... + f_d, d >= 1."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable[float]):
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            raise InvalidRange("a monic polynomial needs degree >= 1")
        if not all(math.isfinite(c) for c in coeffs):
            raise InvalidRange(f"coefficients must be finite, got {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full_coeffs(self) -> np.ndarray:
        """Leading-first coefficient vector [1, f_1, ..., f_d]."""
        return np.array([1.0, *self.coeffs])

    def evaluate(self, t: float) -> float:
        return float(np.polyval(self.full_coeffs(), t))

    def coeff_scale(self) -> float:
        return 1.0 + max(abs(c) for c in self.coeffs)

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "MonicPoly":
        coeffs = data["coeffs"]
        if int(data["degree"]) != len(coeffs):
            raise MismatchedDegree(
                f"declared degree {data['degree']} but {len(coeffs)} coefficients"
            )
        return cls(coeffs)

    def __str__(self) -> str:
        return "t^%d + %s" % (
            self.degree,
            " + ".join(f"({c:g})t^{self.degree - i - 1}" for i, c in enumerate(self.coeffs)),
        )


@dataclass(frozen=True)
class RootMultiset:
    """Strictly increasing distinct roots with positive multiplicities."""

    roots: tuple[float, ...]
    mults: Composition

    def __init__(self, roots: Iterable[float], mults: Composition | Iterable[int]):
        roots = tuple(float(r) for r in roots)
        if not isinstance(mults, Composition):
            mults = Composition(mults)
        if len(roots) != mults.length:
            raise LengthMismatch(f"{len(roots)} roots but {mults.length} multiplicities")
        if any(a >= b for a, b in zip(roots, roots[1:])):
            raise InvalidRange(f"roots must be strictly increasing, got {roots}")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "mults", mults)

    @property
    def d(self) -> int:
        return self.mults.d


class SymKind(enum.Enum):
    ELEMENTARY = "elementary"
    POWERSUM = "powersum"


@dataclass(frozen=True)
class SymFuncVector:
    """First s values of a symmetric-function family (e_1..e_s or p_1..p_s)."""

    kind: SymKind
    values: tuple

    def __init__(self, kind: SymKind, values: Iterable):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "values", tuple(values))

    @property
    def s(self) -> int:
        return len(self.values)


def elem_to_power(v: SymFuncVector) -> SymFuncVector:
    """Newton's identities, e -> p:  p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k.

    Works on exact types (int/Fraction) as well as floats.
    """
    if v.kind is not SymKind.ELEMENTARY:
        raise InvalidRange("elem_to_power expects an ELEMENTARY vector")
    e = v.values
    p: list = []
    for k in range(1, len(e) + 1):
        acc = (-1) ** (k - 1) * k * e[k - 1]
        for i in range(1, k):
            acc += (-1) ** (i - 1) * e[i - 1] * p[k - i - 1]
        p.append(acc)
    return SymFuncVector(SymKind.POWERSUM, p)


def power_to_elem(v: SymFuncVector) -> SymFuncVector:
    """Newton's identities, p -> e:  e_k = (1/k) sum_{i<=k} (-1)^(i-1) e_{k-i} p_i."""
    if v.kind is not SymKind.POWERSUM:
        raise InvalidRange("power_to_elem expects a POWERSUM vector")
    p = v.values
    e: list = []
    for k in range(1, len(p) + 1):
        acc = 0
        for i in range(1, k + 1):
            prev = e[k - i - 1] if i < k else 1
            acc += (-1) ** (i - 1) * prev * p[i - 1]
        # divide exactly when the inputs are exact
        e.append(acc / k if not isinstance(acc, int) else _exact_div(acc, k))
    return SymFuncVector(SymKind.ELEMENTARY, e)


def _exact_div(num: int, den: int):
    if num % den == 0:
        return num // den
    from fractions import Fraction

    return Fraction(num, den)


def power_sums_from_coeffs(p: MonicPoly, s: int) -> tuple:
    """p_1..p_s of the roots of p, from coefficients alone."""
    if not 0 <= s <= p.degree:
        raise InvalidS(f"need 0 <= s <= degree, got s={s}, degree={p.degree}")
    e = [(-1) ** i * c for i, c in enumerate(p.coeffs[:s], start=1)]
    return elem_to_power(SymFuncVector(SymKind.ELEMENTARY, e)).values


def repeat_by(x: Sequence[float], u: Composition) -> tuple[float, ...]:
    """x_u: the vector with x_i repeated u_i times."""
    if len(x) != u.length:
        raise LengthMismatch(f"{len(x)} coordinates for composition of length {u.length}")
    out: list[float] = []
    for xi, ui in zip(x, u.parts):
        out.extend([float(xi)] * ui)
    return tuple(out)


def _expand_roots(values: Sequence[float], mults: Sequence[int]) -> np.ndarray:
    c = np.array([1.0])
    for r, m in zip(values, mults):
        for _ in range(m):
            c = np.convolve(c, [1.0, -float(r)])
    return c


def from_roots(r: RootMultiset) -> MonicPoly:
    """Expand prod (t - a_i)^(m_i)."""
    return MonicPoly(_expand_roots(r.roots, r.mults.parts)[1:])


def pi_u(x: Sequence[float], u: Composition) -> MonicPoly:
    """The polynomial prod_i (t - x_i)^(u_i); x need not be increasing."""
    if len(x) != u.length:
        raise LengthMismatch(f"{len(x)} coordinates for composition of length {u.length}")
    return MonicPoly(_expand_roots(x, u.parts)[1:])


def truncate_coeffs(p: MonicPoly, s: int) -> tuple[float, ...]:
    """The shared prefix (f_1, ..., f_s)."""
    if not 0 <= s <= p.degree:
        raise InvalidS(f"need 0 <= s <= degree, got s={s}, degree={p.degree}")
    return p.coeffs[:s]


# ---------------------------------------------------------------------------
# root extraction


def _dendrogram_cuts(pts: np.ndarray) -> list[list[list[int]]]:
    """Single-linkage partitions of the points, finest first."""
    n = len(pts)
    clusters: list[list[int]] = [[i] for i in range(n)]
    cuts = [[c[:] for c in clusters]]
    dist = np.abs(pts[:, None] - pts[None, :])
    while len(clusters) > 1:
        best = (math.inf, 0, 1)
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                gap = dist[np.ix_(clusters[a], clusters[b])].min()
                if gap < best[0]:
                    best = (gap, a, b)
        _, a, b = best
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
        cuts.append([c[:] for c in clusters])
    return cuts


def _derivative_table(full: np.ndarray) -> list[np.ndarray]:
    derivs = [full]
    for _ in range(len(full) - 1):
        derivs.append(np.polyder(derivs[-1]))
    return derivs


def _eval_magnitude(full: np.ndarray, c: complex) -> float:
    """Sum of term magnitudes of p at c; the roundoff scale of evaluating p."""
    d = len(full) - 1
    return float(np.sum(np.abs(full) * np.abs(c) ** np.arange(d, -1, -1)))


def _splitting_radius(derivs: list[np.ndarray], c: complex, m: int, scale_r: float) -> float:
    """Plausible eigenvalue-cluster radius of an m-fold root near c.

    First-order perturbation: coefficients carry relative noise ~eps, so an
    m-fold root can scatter by (noise / |p^(m)(c)/m!|)^(1/m).  When p^(m)(c)
    itself drowns in its own roundoff the radius is uncapped (a larger cluster
    is plausible); the residual gate still has the final word.
    """
    d = len(derivs) - 1
    noise = _NOISE_FACTOR * d * _EPS * _eval_magnitude(derivs[0], c)
    lead = abs(np.polyval(derivs[m], c)) / math.factorial(m)
    lead_noise = _NOISE_FACTOR * d * _EPS * _eval_magnitude(derivs[m], c) / math.factorial(m)
    if lead <= lead_noise or noise == 0.0:
        return float("inf") if noise > 0 else 0.0
    return float((noise / lead) ** (1.0 / m))


def _expansion_residual(full: np.ndarray, roots: Sequence[float], mults: Sequence[int]) -> float:
    got = _expand_roots(roots, mults)
    ref = np.abs(full) + 1.0
    return float(np.max(np.abs(got - full) / ref))


def _polish_center(derivs: list[np.ndarray], c: float, m: int) -> float:
    """Newton steps on p^(m-1), whose root at an exact m-fold root is simple."""
    g, gp = derivs[m - 1], derivs[m]
    for _ in range(3):
        den = np.polyval(gp, c)
        if den == 0:
            break
        step = np.polyval(g, c) / den
        if not np.isfinite(step) or abs(step) > 0.1 * (1.0 + abs(c)):
            break
        c = c - float(np.real(step))
    return float(c)


def _joint_refine(full: np.ndarray, centers: list[float], mults: list[int]) -> list[float]:
    """Gauss-Newton on all centers at once against the target coefficients.

    Newton on p^(m-1) locates each center on its own and stalls once a
    neighbouring root sits close enough to drown p^(m-1) in roundoff.  The
    joint step couples the centers through a Vandermonde-type Jacobian whose
    conditioning goes with first powers of the gaps, so correlated center
    errors cancel instead of capping the attainable residual.
    """
    x = np.asarray(centers, dtype=float)
    for _ in range(3):
        resid = _expand_roots(x, mults) - full
        cols = []
        for j, mj in enumerate(mults):
            quot = np.array([1.0])
            for k, (c, mk) in enumerate(zip(x, mults)):
                for _ in range(mk - 1 if k == j else mk):
                    quot = np.convolve(quot, [1.0, -float(c)])
            cols.append(-float(mj) * quot)
        jac = np.stack(cols, axis=1)
        try:
            step, *_ = np.linalg.lstsq(jac, -resid[1:], rcond=None)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        if np.max(np.abs(step)) > 0.1 * (1.0 + np.max(np.abs(x))):
            break
        x = x + step
    return [float(v) for v in x]


def roots_of(
    p: MonicPoly,
    cluster_tol: float | None = None,
    hyper_tol: float | None = None,
    config: SolverConfig = DEFAULT_CONFIG,
) -> RootMultiset:
    """Distinct real roots and multiplicities of a hyperbolic polynomial.

    Raises NotHyperbolic when some root cannot be reconciled with the real
    axis, and IllConditioned when the multiplicity structure is ambiguous at
    the working tolerances (adjacent roots within a factor 10 of cluster_tol,
    or no admissible clustering reproducing the coefficients).
    """
    full = p.full_coeffs()
    d = p.degree
    scale_c = p.coeff_scale()
    hyper = config.hyper_tol_rel * scale_c if hyper_tol is None else float(hyper_tol)
    if hyper <= 0 or (cluster_tol is not None and cluster_tol <= 0):
        raise InvalidRange("tolerances must be positive")

    # companion eigenvalues are backward stable; cluster means then cancel the
    # scatter of a multiple root to first order.  Any further polishing before
    # clustering would break exactly that cancellation.
    pts = np.roots(full)
    derivs = _derivative_table(full)

    scale_r = 1.0 + float(np.max(np.abs(pts))) if d else 1.0
    ctol = config.cluster_tol_rel * scale_r if cluster_tol is None else float(cluster_tol)

    chosen = None
    saw_admissible_real = False
    for part in reversed(_dendrogram_cuts(pts)):
        shapes_ok = True
        real_ok = True
        centers = []
        mults = []
        for cluster in part:
            sub = pts[cluster]
            m = len(cluster)
            center = complex(np.mean(sub))
            diam = 0.0 if m == 1 else float(np.max(np.abs(sub[:, None] - sub[None, :])))
            bound = ctol if m == 1 else max(ctol, _SPLIT_SAFETY * _splitting_radius(derivs, center, m, scale_r))
            if diam > bound:
                shapes_ok = False
                break
            if abs(center.imag) > hyper:
                real_ok = False
                break
            centers.append(center.real)
            mults.append(m)
        if not (shapes_ok and real_ok):
            continue
        saw_admissible_real = True
        # refine before gating: cluster means of strongly coupled multiple
        # roots keep a residual above the gate that the polish removes, while
        # a wrong partition stays bad no matter how hard it is polished
        centers = [_polish_center(derivs, c, m) for c, m in zip(centers, mults)]
        centers = _joint_refine(full, centers, mults)
        pairs = sorted(zip(centers, mults))
        centers = [c for c, _ in pairs]
        mults = [m for _, m in pairs]
        if _expansion_residual(full, centers, mults) <= 10.0 * config.verify_tol:
            chosen = (centers, mults)
            break

    if chosen is None:
        if saw_admissible_real:
            raise IllConditioned(
                "no admissible root clustering reproduces the coefficients of %s" % p
            )
        raise NotHyperbolic(f"{p} has roots off the real axis beyond tolerance {hyper:g}")

    centers, mults = chosen
    gaps = [b - a for a, b in zip(centers, centers[1:])]
    if any(g < 10.0 * ctol for g in gaps):
        raise IllConditioned(
            "adjacent roots of %s within the ambiguity band [%g, %g)" % (p, ctol, 10.0 * ctol)
        )
    return RootMultiset(centers, Composition(mults))


def composition_of(
    p: MonicPoly,
    cluster_tol: float | None = None,
    hyper_tol: float | None = None,
    config: SolverConfig = DEFAULT_CONFIG,
) -> Composition:
    """Multiplicities of the distinct roots, in increasing root order."""
    return roots_of(p, cluster_tol=cluster_tol, hyper_tol=hyper_tol, config=config).mults
