"""Weighted power-sum systems on the ordered chamber, and stratum geometry.

For a composition u of d and targets c_1..c_s derived from f, the variety is
{x in R^l : sum_j u_j x_j^i = c_i, i <= s} intersected with the closed chamber
x_1 <= ... <= x_l.  Points of it map to polynomials through
pi_u(x) = prod (t - x_j)^(u_j), landing in H_s(f), the set of monic degree-d
hyperbolic polynomials sharing f's first s coefficients.

Solvers: point strata (l <= s) are found by deterministic multistart damped
Newton on the square subsystem plus verification of the rest; interior points
of full-dimensional strata (l > s) by continuation from a solved length-s
point (split one repeated coordinate by +-delta, re-project by Newton with the
gap frozen, grow the gap), with a low-discrepancy sweep over l-s frozen
coordinates as fallback; meshes by marching the same frozen-coordinate solve
over a grid with warm starts.  Every returned polynomial h is verified against
|h_i - f_i| <= verify_tol * (1 + |f_i|) for i <= s.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .compositions import Composition
from .config import DEFAULT_CONFIG, SolverConfig
from .errors import (
    ContinuationStalled,
    EmptyGrid,
    InternalInconsistency,
    InvalidRange,
    InvalidS,
    LengthMismatch,
    MismatchedDegree,
)
from .polynomials import MonicPoly, pi_u, power_sums_from_coeffs

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class OrderedChamber:
    """The closed cone x_1 <= ... <= x_l; membership is exact."""

    l: int

    def contains(self, x: Sequence[float], strict: bool = False) -> bool:
        if len(x) != self.l:
            raise LengthMismatch(f"expected {self.l} coordinates, got {len(x)}")
        if strict:
            return all(a < b for a, b in zip(x, x[1:]))
        return all(a <= b for a, b in zip(x, x[1:]))


@dataclass(frozen=True)
class VandermondeSystem:
    """Equations p_i(x_u) = c_i, i = 1..s, with c derived from f by Newton's identities."""

    f: MonicPoly
    s: int
    u: Composition
    c: tuple[float, ...]

    def __init__(self, f: MonicPoly, s: int, u: Composition):
        if u.d != f.degree:
            raise MismatchedDegree(f"composition of {u.d} against degree {f.degree}")
        if not 0 <= s <= f.degree:
            raise InvalidS(f"need 0 <= s <= degree, got s={s}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "c", tuple(float(v) for v in power_sums_from_coeffs(f, s)))


def build_system(f: MonicPoly, s: int, u: Composition) -> VandermondeSystem:
    return VandermondeSystem(f, s, u)


def jacobian(sys: VandermondeSystem, x: Sequence[float]) -> np.ndarray:
    """The s x l matrix with entry (i, j) = i * u_j * x_j^(i-1).

    For square systems |det| equals |prod_i i*u_i| * |prod_{j<r} (x_j - x_r)|;
    only the magnitude is asserted anywhere (the sign convention is open).
    """
    l = sys.u.length
    if len(x) != l:
        raise LengthMismatch(f"expected {l} coordinates, got {len(x)}")
    xs = np.asarray(x, dtype=float)
    w = np.asarray(sys.u.parts, dtype=float)
    rows = []
    xp = np.ones(l)
    for i in range(1, sys.s + 1):
        rows.append(i * w * xp)
        xp = xp * xs
    return np.array(rows).reshape(sys.s, l)


class StratumTag(enum.Enum):
    EMPTY = "empty"
    POINT = "point"
    FULLDIM = "fulldim"


@dataclass(frozen=True)
class StratumClass:
    """Classification verdict; dim is -1, 0, or l - s.

    certified is False when the verdict rests on solver failure rather than
    on a verified witness or exact reasoning.
    """

    tag: StratumTag
    dim: int
    witness: MonicPoly | None
    certified: bool

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "dim": self.dim,
            "witness": None if self.witness is None else self.witness.to_json(),
            "certified": self.certified,
        }


# ---------------------------------------------------------------------------
# batched Newton machinery


def _halton(count: int, dim: int, seed: int, skip: int = 0) -> np.ndarray:
    """Deterministic low-discrepancy points in [0,1)^dim."""
    if dim > len(_PRIMES):
        raise InvalidRange(f"sweep dimension {dim} too large")
    start = 1 + (seed % 1000) + skip
    out = np.empty((count, dim))
    for j in range(dim):
        b = _PRIMES[j]
        for i in range(count):
            n, denom, h = start + i, 1.0, 0.0
            while n > 0:
                n, rem = divmod(n, b)
                denom *= b
                h += rem / denom
            out[i, j] = h
    return out


def _batch_F(X: np.ndarray, w: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Residuals of the first m weighted power sums; C is (N, m) or (m,)."""
    m = C.shape[-1]
    N = X.shape[0]
    F = np.empty((N, m))
    xp = X.copy()
    for i in range(m):
        F[:, i] = xp @ w
        if i + 1 < m:
            xp *= X
    return F - C


def _batch_J(X: np.ndarray, w: np.ndarray, m: int) -> np.ndarray:
    N, n = X.shape
    J = np.empty((N, m, n))
    xp = np.ones_like(X)
    for i in range(1, m + 1):
        J[:, i - 1, :] = i * w * xp
        xp *= X
    return J


def _newton_batch(
    X0: np.ndarray, w: Sequence[float], C: np.ndarray, config: SolverConfig
) -> np.ndarray:
    """Damped Newton on all starts at once; returns the converged endpoints."""
    w = np.asarray(w, dtype=float)
    X = np.array(X0, dtype=float)
    C = np.broadcast_to(np.asarray(C, dtype=float), (X.shape[0], np.asarray(C).shape[-1])).copy()
    scale = 1.0 + np.max(np.abs(C), axis=0)
    m = C.shape[1]
    active = np.ones(X.shape[0], dtype=bool)
    for _ in range(config.max_newton_iter):
        F = _batch_F(X, w, C)
        bad = ~np.isfinite(F).all(axis=1)
        if bad.any():
            X[bad] = 0.0
            F[bad] = _batch_F(X[bad], w, C[bad])
        res = np.max(np.abs(F) / scale, axis=1)
        active &= res > config.newton_tol
        if not active.any():
            break
        Xa, Fa = X[active], F[active]
        J = _batch_J(Xa, w, m)
        try:
            step = np.linalg.solve(J, Fa[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = (np.linalg.pinv(J) @ Fa[..., None])[..., 0]
        if not np.isfinite(step).all():
            step = np.where(np.isfinite(step), step, 0.0)
        # backtracking on the residual norm, independently per start
        base = np.linalg.norm(Fa / scale, axis=1)
        alpha = np.ones(len(Xa))
        Xn = Xa - step
        for _ in range(8):
            trial = np.linalg.norm(_batch_F(Xn, w, C[active]) / scale, axis=1)
            trial = np.where(np.isfinite(trial), trial, np.inf)
            worse = trial > (1.0 - 1e-4 * alpha) * base
            if not worse.any():
                break
            alpha = np.where(worse, alpha * 0.5, alpha)
            Xn = Xa - alpha[:, None] * step
        X[active] = Xn
    F = _batch_F(X, w, C)
    res = np.max(np.abs(F) / scale, axis=1)
    good = np.isfinite(X).all(axis=1) & (res <= config.newton_tol)
    return X[good]


def _merge_ties(x: Sequence[float], parts: Sequence[int], tie_tol: float):
    """Collapse coordinates closer than tie_tol; returns (roots, merged parts)."""
    roots: list[float] = []
    mults: list[int] = []
    for xi, ui in zip(x, parts):
        if roots and abs(xi - roots[-1]) <= tie_tol:
            # weighted merge keeps the power sums closest to the original
            total = mults[-1] + ui
            roots[-1] = (roots[-1] * mults[-1] + xi * ui) / total
            mults[-1] = total
        else:
            roots.append(float(xi))
            mults.append(int(ui))
    return roots, mults


# ---------------------------------------------------------------------------
# the solver session


class StratumSolver:
    """Shared state for classifying the strata of one H_s(f).

    Memoizes point solves and interior points so lattice construction and
    brute-force classification reuse work.  All randomness is a fixed Halton
    sequence parameterized by config.seed; identical inputs give identical
    outputs.
    """

    def __init__(self, f: MonicPoly, s: int, config: SolverConfig = DEFAULT_CONFIG):
        if not 0 <= s <= f.degree:
            raise InvalidS(f"need 0 <= s <= degree, got s={s}")
        self.f = f
        self.s = s
        self.d = f.degree
        self.config = config
        self.c = tuple(float(v) for v in power_sums_from_coeffs(f, s))
        self._coeff_scale = np.array([1.0 + abs(c) for c in f.coeffs[:s]])
        self._point_cache: dict[Composition, tuple | None] = {}
        self._interior_cache: dict[Composition, tuple | None] = {}
        self._stalled: set[Composition] = set()

    # -- geometry helpers

    def _box(self, parts: Sequence[int]) -> np.ndarray:
        """Per-coordinate bounds containing every chamber solution."""
        if self.s >= 2:
            c2 = max(self.c[1], 0.0)
            b = np.sqrt(c2 / np.asarray(parts, dtype=float)) * 1.1 + 1e-9
        else:
            cauchy = 1.0 + max(abs(c) for c in self.f.coeffs)
            b = np.full(len(parts), 2.0 * cauchy)
        return b

    def _coord_bounds(self, parts: Sequence[int]) -> list[tuple[float, float]]:
        """Per-coordinate range of the m-th ordered root under the c_2 sphere.

        Everything at or below index m weighs at least the prefix sum, and at
        or above it the suffix sum, so the centered second moment pins each
        ordered coordinate into its own interval around the mean.  The first
        coordinate can never exceed the mean, nor the last fall below it.
        """
        if self.s < 2:
            b = float(self._box(parts)[0])
            return [(-b, b)] * len(parts)
        d = float(sum(parts))
        mean = self.c[0] / d
        v2 = max(self.c[1] - self.c[0] ** 2 / d, 0.0)
        slack = 1e-9 * (1.0 + abs(mean))
        pre = np.cumsum(parts, dtype=float)
        suf = np.cumsum(parts[::-1], dtype=float)[::-1]
        out = []
        last = len(parts) - 1
        for m in range(len(parts)):
            lo = mean - math.sqrt(v2 / pre[m]) * 1.1 - slack
            hi = mean + math.sqrt(v2 / suf[m]) * 1.1 + slack
            if m == 0:
                hi = min(hi, mean + slack)
            if m == last:
                lo = max(lo, mean - slack)
            out.append((lo, hi))
        return out

    def _tie_tol(self, x: Sequence[float]) -> float:
        return self.config.solution_cluster_radius * (1.0 + max(abs(v) for v in x))

    def _amb_tol(self, x: Sequence[float]) -> float:
        """Gap size Newton cannot distinguish from a tie.

        At a tied solution the system Jacobian is singular and the residual
        is quadratic in the separation, so converged iterates may sit about
        sqrt(newton_tol) away from the merge point.
        """
        return 10.0 * math.sqrt(self.config.newton_tol) * (1.0 + max(abs(v) for v in x))

    def _verified(self, h: MonicPoly) -> bool:
        diff = np.abs(np.asarray(h.coeffs[: self.s]) - np.asarray(self.f.coeffs[: self.s]))
        return bool(np.all(diff <= self.config.verify_tol * self._coeff_scale))

    def _empty_by_sphere(self) -> bool:
        # sum u_j x_j^2 = c_2 has no solution at all when c_2 < 0
        return self.s >= 2 and self.c[1] < -self.config.verify_tol * (1.0 + abs(self.c[1]))

    # -- point strata (l <= s)

    def point(self, u: Composition):
        """The unique chamber solution for a label of length <= s, if any.

        Returns (h, x, actual composition) or None.
        """
        if u in self._point_cache:
            return self._point_cache[u]
        l = u.length
        if l > self.s:
            raise InvalidS(f"point solve needs length <= s, got {l} > {self.s}")
        result = None
        if not self._empty_by_sphere():
            if l == 1:
                xs = [np.array([self.c[0] / self.d])]
            else:
                box = self._box(u.parts)
                unit = _halton(self.config.n_starts, l, self.config.seed)
                cloud = (2.0 * unit - 1.0) * box
                # chamber-sorted copies help Newton land in the chamber
                cloud = np.vstack([cloud, np.sort(cloud, axis=1)])
                xs_all = _newton_batch(cloud, u.parts, np.asarray(self.c[:l]), self.config)
                xs = [xs_all[i] for i in range(len(xs_all))]
            result = self._select_point(u, xs)
        self._point_cache[u] = result
        return result

    def _select_point(self, u: Composition, candidates: Iterable[np.ndarray]):
        verified: list[tuple[np.ndarray, MonicPoly, Composition]] = []
        for x in candidates:
            tie = self._tie_tol(x)
            if any(b - a < -tie for a, b in zip(x, x[1:])):
                continue
            ordered = np.maximum.accumulate(x)
            # a singular Jacobian leaves converged iterates ~sqrt(newton_tol)
            # from a tie; prefer the coarser structure whenever it verifies
            for gap_tol in (self._amb_tol(x), tie):
                roots, mults = _merge_ties(ordered, u.parts, gap_tol)
                h = pi_u(roots, Composition(mults))
                if self._verified(h):
                    verified.append((np.asarray(roots), h, Composition(mults)))
                    break
        if not verified:
            return None
        # deduplicate by coefficient vector; two distinct survivors break uniqueness
        kept: list[tuple[np.ndarray, MonicPoly, Composition]] = []
        for item in sorted(verified, key=lambda t: t[1].coeffs):
            if all(
                max(
                    abs(a - b) / (1.0 + abs(b))
                    for a, b in zip(item[1].coeffs, other[1].coeffs)
                )
                > 100 * self.config.solution_cluster_radius
                for other in kept
            ):
                kept.append(item)
        if len(kept) > 1:
            raise InternalInconsistency(
                "two distinct verified polynomials in a point stratum: %s and %s"
                % (kept[0][1], kept[1][1])
            )
        roots, h, comp = kept[0]
        return h, tuple(float(r) for r in roots), comp

    # -- interior points (l > s)

    def interior(self, u: Composition):
        """A strictly increasing x with pi_u(x) in H_s(f), or None."""
        if u in self._interior_cache:
            return self._interior_cache[u]
        l = u.length
        if l <= self.s:
            raise InvalidS(f"interior needs length > s, got {l} <= {self.s}")
        result = self._interior_uncached(u)
        self._interior_cache[u] = result
        return result

    def _interior_uncached(self, u: Composition):
        l = u.length
        if self.s == 0:
            x = np.arange(l, dtype=float)
            return pi_u(x, u), tuple(x)
        if self.s == 1:
            idx = np.arange(1, l + 1, dtype=float)
            t = idx - float(np.dot(idx, u.parts)) / self.d
            x = t + self.c[0] / self.d
            return pi_u(x, u), tuple(float(v) for v in x)
        if self._empty_by_sphere():
            return None
        stalled = False
        for w in self._length_s_sublabels(u):
            got = self.point(w)
            if got is None:
                continue
            _, x, comp = got
            if comp != w:
                continue  # ties: fewer than s distinct roots, not liftable
            lifted = self._lift(np.asarray(x), w, u)
            if lifted is None:
                stalled = True
                continue
            h = pi_u(lifted, u)
            if self._verified(h):
                return h, tuple(float(v) for v in lifted)
        found = self._sweep_search(u)
        if found is not None:
            return found
        if stalled:
            self._stalled.add(u)
        return None

    def _length_s_sublabels(self, u: Composition) -> list[Composition]:
        sums = sorted(u.proper_sums())
        out = [
            Composition.from_proper_sums(keep, self.d)
            for keep in itertools.combinations(sums, self.s - 1)
        ]
        out.sort(key=lambda w: w.parts)
        return out

    def _lift(self, x: np.ndarray, w: Composition, u: Composition):
        """Split repeated coordinates one cut at a time until reaching u."""
        cur = w
        cfg = self.config
        for new_sum in sorted(u.proper_sums() - cur.proper_sums()):
            sums = list(cur.partial_sums())
            j = next(i for i, ps in enumerate(sums) if ps > new_sum)
            prev = sums[j - 1] if j else 0
            parts_next = (
                cur.parts[:j] + (new_sum - prev, sums[j] - new_sum) + cur.parts[j + 1 :]
            )
            nxt = Composition(parts_next)
            k = cur.length
            targets = list(self.c) + [
                float(np.dot(np.asarray(cur.parts, float), np.asarray(x) ** i))
                for i in range(self.s + 1, k + 1)
            ]
            scale_r = 1.0 + float(np.max(np.abs(x)))
            delta = cfg.continuation_delta_rel * scale_r
            y = None
            while delta >= cfg.continuation_delta_min:
                y0 = np.insert(x, j + 1, x[j])
                y0[j] -= delta
                y0[j + 1] += delta
                y = _lift_newton(parts_next, targets, j, 2.0 * delta, y0, cfg)
                if y is not None and self._strictly_spaced(y, j):
                    break
                y = None
                delta *= 0.5
            if y is None:
                return None
            # grow the gap while it keeps solving; improves conditioning
            gaps = np.diff(y)
            room = min(g for i, g in enumerate(gaps) if i != j) if len(gaps) > 1 else 0.1 * scale_r
            target_gap = min(0.05 * scale_r, room / 4.0) if room > 0 else 0.0
            while 2.0 * delta < target_gap:
                delta *= 2.0
                y2 = _lift_newton(parts_next, targets, j, 2.0 * delta, y, cfg)
                if y2 is None or not self._strictly_spaced(y2, j):
                    break
                y = y2
            x = y
            cur = nxt
        if all(b - a > self._amb_tol(x) for a, b in zip(x, x[1:])):
            return x
        return None

    def _strictly_spaced(self, y: np.ndarray, j: int) -> bool:
        gaps = np.diff(y)
        if gaps[j] <= 0:
            return False
        tie = self._tie_tol(y)
        return all(g > tie for i, g in enumerate(gaps) if i != j) and gaps[j] > 0.0

    def _sweep_search(self, u: Composition):
        l, s = u.length, self.s
        dim = l - s
        cfg = self.config
        box = self._box(u.parts)
        budgets = [min(cfg.sweep_budget_cap, max(64, cfg.sweep_points_per_axis**dim))]
        if budgets[0] < cfg.sweep_budget_cap:
            budgets.append(cfg.sweep_budget_cap)
        skip = 0
        for budget in budgets:
            unit = _halton(budget, dim, cfg.seed, skip=skip)
            skip += budget
            frozen = np.sort((2.0 * unit - 1.0) * box[s:], axis=1)
            hit = self._solve_frozen_batch(u, frozen, n_starts=8, require_strict=True)
            if hit:
                x, h = hit[0]
                return h, x
        return None

    def _solve_frozen_batch(
        self,
        u: Composition,
        frozen: np.ndarray,
        n_starts: int,
        require_strict: bool,
        starts: np.ndarray | None = None,
    ):
        """Solve the leading s coordinates for each frozen tail; returns samples."""
        l, s = u.length, self.s
        w_free = np.asarray(u.parts[:s], dtype=float)
        w_frozen = np.asarray(u.parts[s:], dtype=float)
        P = frozen.shape[0]
        # adjusted targets per frozen assignment
        C = np.empty((P, s))
        fp = frozen.copy()
        for i in range(s):
            C[:, i] = self.c[i] - fp @ w_frozen
            if i + 1 < s:
                fp *= frozen
        if s >= 2:
            # Cauchy-Schwarz: sum w x = c1', sum w x^2 = c2' needs c2' >= c1'^2/W
            W = float(w_free.sum())
            slack = C[:, 1] - C[:, 0] ** 2 / W
            feasible = slack >= -1e-12 * (1.0 + np.abs(C[:, 1]))
            if not feasible.any():
                return []
            keep = np.nonzero(feasible)[0]
            frozen, C = frozen[keep], C[keep]
            P = len(keep)
        if starts is None:
            box = self._box(u.parts)[:s]
            unit = _halton(n_starts, s, self.config.seed)
            cloud = np.sort((2.0 * unit - 1.0) * box, axis=1)
            X0 = np.repeat(cloud[None, :, :], P, axis=0).reshape(P * n_starts, s)
            Cb = np.repeat(C, n_starts, axis=0)
            idx = np.repeat(np.arange(P), n_starts)
        else:
            X0, Cb, idx = starts, C, np.arange(P)
        sols = _newton_solutions(X0, w_free, Cb, self.config)
        out = []
        seen: set[int] = set()
        for row, x_free in sols:
            p = int(idx[row])
            if p in seen:
                continue
            x = np.concatenate([x_free, frozen[p]])
            gaps = np.diff(x)
            if require_strict:
                if np.any(gaps <= self._amb_tol(x)):
                    continue
            elif np.any(gaps < -self._tie_tol(x)):
                continue
            h = pi_u(np.maximum.accumulate(x), u)
            if self._verified(h):
                seen.add(p)
                out.append((tuple(float(v) for v in x), h))
        return out

    # -- classification

    def classify(self, u: Composition) -> StratumClass:
        if u.d != self.d:
            raise MismatchedDegree(f"composition of {u.d} against degree {self.d}")
        if self._empty_by_sphere():
            return StratumClass(StratumTag.EMPTY, -1, None, certified=True)
        l = u.length
        if l <= self.s:
            got = self.point(u)
            if got is None:
                return StratumClass(StratumTag.EMPTY, -1, None, certified=False)
            h, _, _ = got
            return StratumClass(StratumTag.POINT, 0, h, certified=True)
        try:
            got = self.interior(u)
        except ContinuationStalled:
            got = None
        if got is not None:
            return StratumClass(StratumTag.FULLDIM, l - self.s, got[0], certified=True)
        # no interior: at most one polynomial, with fewer than s distinct roots
        witnesses: list[MonicPoly] = []
        for w in self._short_sublabels(u):
            got_w = self.point(w)
            if got_w is None:
                continue
            h = got_w[0]
            if all(
                max(abs(a - b) for a, b in zip(h.coeffs, other.coeffs)) > 1e-6
                for other in witnesses
            ):
                witnesses.append(h)
        if len(witnesses) > 1:
            raise InternalInconsistency(
                "multiple point witnesses under one non-full label %s" % u
            )
        if witnesses:
            return StratumClass(StratumTag.POINT, 0, witnesses[0], certified=False)
        return StratumClass(StratumTag.EMPTY, -1, None, certified=False)

    def _short_sublabels(self, u: Composition) -> list[Composition]:
        sums = sorted(u.proper_sums())
        out = []
        for k in range(min(self.s - 1, len(sums)) + 1):
            for keep in itertools.combinations(sums, k):
                out.append(Composition.from_proper_sums(keep, self.d))
        out.sort(key=lambda w: w.parts)
        return out

    def hypothesis_holds(self) -> bool:
        """H_s(f) is (d-s)-dimensional iff a squarefree member exists."""
        if self.s >= self.d:
            return False
        if self.s <= 1:
            return True
        top = Composition((1,) * self.d)
        try:
            return self.interior(top) is not None
        except ContinuationStalled:
            return False

    # -- sampling

    def sample(self, u: Composition, grid, bounds=None):
        """March the frozen-coordinate grid; returns (samples, failures).

        Samples are (x, h) pairs, strictly inside the chamber with gaps above
        the emission threshold, sorted lexicographically by coefficients.
        Failures are (cell index, reason) records.
        """
        l, s = u.length, self.s
        if l <= s:
            raise InvalidS(f"sampling needs length > s, got {l} <= {s}")
        dim = l - s
        if isinstance(grid, int):
            counts = [grid] * dim
        else:
            counts = [int(g) for g in grid]
        if len(counts) != dim or any(n < 1 for n in counts):
            raise EmptyGrid(f"need {dim} positive axis counts, got {counts}")
        if self._empty_by_sphere():
            return [], [((), "empty: c_2 < 0")]
        if bounds is None:
            bounds = self._coord_bounds(u.parts)[s:]
        if len(bounds) != dim or any(lo > hi for lo, hi in bounds):
            raise EmptyGrid(f"invalid bounds {bounds}")
        anchor = None
        if any(n == 1 for n in counts):
            # a one-point axis at the box edge would always miss; anchor it
            got = self.interior(u)
            anchor = None if got is None else got[1]
        axes = []
        for a, ((lo, hi), n) in enumerate(zip(bounds, counts)):
            if n == 1:
                val = anchor[s + a] if anchor is not None else (lo + hi) / 2.0
                axes.append(np.array([val]))
            else:
                axes.append(np.linspace(lo, hi, n))
        emit_gap_rel = 20.0 * self.config.cluster_tol_rel

        samples: list[tuple[tuple[float, ...], MonicPoly]] = []
        failures: list[tuple[tuple[int, ...], str]] = []
        warm: np.ndarray | None = None
        for cell in itertools.product(*(range(n) for n in counts)):
            tail = np.array([axes[a][cell[a]] for a in range(dim)])
            if np.any(np.diff(tail) < 0):
                failures.append((cell, "tail not increasing"))
                warm = None
                continue
            hit = None
            if warm is not None:
                hit = self._solve_frozen_batch(
                    u, tail[None, :], n_starts=1, require_strict=False, starts=warm[None, :]
                )
            if not hit:
                hit = self._solve_frozen_batch(
                    u, tail[None, :], n_starts=16, require_strict=False
                )
            if not hit:
                failures.append((cell, "no chamber solution"))
                warm = None
                continue
            x, h = hit[0]
            warm = np.asarray(x[:s])
            gaps = np.diff(x)
            if np.any(gaps <= emit_gap_rel * (1.0 + np.max(np.abs(x)))):
                failures.append((cell, "boundary: coordinates collide"))
                continue
            samples.append((x, h))
        samples.sort(key=lambda t: t[1].coeffs)
        return samples, failures


def _newton_solutions(X0, w, C, config):
    """Like _newton_batch but keeps row identity; returns [(row, x)] converged."""
    w = np.asarray(w, dtype=float)
    X = np.array(X0, dtype=float)
    C = np.asarray(C, dtype=float)
    scale = 1.0 + np.max(np.abs(C), axis=0)
    m = C.shape[1]
    for _ in range(config.max_newton_iter):
        F = _batch_F(X, w, C)
        bad = ~np.isfinite(F).all(axis=1)
        if bad.any():
            X[bad] = 0.0
            F[bad] = _batch_F(X[bad], w, C[bad])
        res = np.max(np.abs(F) / scale, axis=1)
        active = res > config.newton_tol
        if not active.any():
            break
        Xa, Fa, Ca = X[active], F[active], C[active]
        J = _batch_J(Xa, w, m)
        try:
            step = np.linalg.solve(J, Fa[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = (np.linalg.pinv(J) @ Fa[..., None])[..., 0]
        step = np.where(np.isfinite(step), step, 0.0)
        base = np.linalg.norm(Fa / scale, axis=1)
        alpha = np.ones(len(Xa))
        Xn = Xa - step
        for _ in range(8):
            trial = np.linalg.norm(_batch_F(Xn, w, Ca) / scale, axis=1)
            trial = np.where(np.isfinite(trial), trial, np.inf)
            worse = trial > (1.0 - 1e-4 * alpha) * base
            if not worse.any():
                break
            alpha = np.where(worse, alpha * 0.5, alpha)
            Xn = Xa - alpha[:, None] * step
        X[active] = Xn
    F = _batch_F(X, w, C)
    res = np.max(np.abs(F) / scale, axis=1)
    good = np.isfinite(X).all(axis=1) & (res <= config.newton_tol)
    return [(i, X[i]) for i in np.nonzero(good)[0]]


def _lift_newton(parts, targets, j, gap, y0, config: SolverConfig):
    """Square Newton: k power-sum equations plus the frozen gap y_{j+1} - y_j."""
    w = np.asarray(parts, dtype=float)
    c = np.asarray(targets, dtype=float)
    k = len(c)
    y = np.array(y0, dtype=float)
    scale = np.concatenate([1.0 + np.abs(c), [1.0 + gap]])

    def residual(yy):
        F = np.empty(k + 1)
        yp = yy.copy()
        for i in range(k):
            F[i] = np.dot(w, yp) - c[i]
            yp = yp * yy
        F[k] = (yy[j + 1] - yy[j]) - gap
        return F

    for _ in range(config.max_newton_iter):
        F = residual(y)
        if np.max(np.abs(F) / scale) <= config.newton_tol:
            return y
        J = np.zeros((k + 1, k + 1))
        yp = np.ones_like(y)
        for i in range(1, k + 1):
            J[i - 1, :] = i * w * yp
            yp *= y
        J[k, j] = -1.0
        J[k, j + 1] = 1.0
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            return None
        if not np.isfinite(step).all():
            return None
        base = np.linalg.norm(F / scale)
        alpha = 1.0
        for _ in range(10):
            yn = y - alpha * step
            fn = np.linalg.norm(residual(yn) / scale)
            if np.isfinite(fn) and fn <= (1.0 - 1e-4 * alpha) * base:
                y = yn
                break
            alpha *= 0.5
        else:
            return None
    F = residual(y)
    return y if np.max(np.abs(F) / scale) <= config.newton_tol else None


# ---------------------------------------------------------------------------
# module-level API


def solve_point_stratum(
    f: MonicPoly, s: int, u: Composition, config: SolverConfig = DEFAULT_CONFIG
) -> MonicPoly | None:
    """The unique polynomial of the point stratum labeled u (length <= s), or None."""
    got = StratumSolver(f, s, config).point(u)
    return None if got is None else got[0]


def find_interior_point(
    f: MonicPoly, s: int, u: Composition, config: SolverConfig = DEFAULT_CONFIG
) -> MonicPoly | None:
    """A polynomial with composition exactly u in H_s(f), or None.

    Raises ContinuationStalled when every continuation path underflowed its
    step size and the sweep fallback found nothing either.
    """
    solver = StratumSolver(f, s, config)
    got = solver.interior(u)
    if got is None and u in solver._stalled:
        raise ContinuationStalled(f"all continuation paths toward {u} stalled")
    return None if got is None else got[0]


def classify_stratum(
    f: MonicPoly, s: int, u: Composition, config: SolverConfig = DEFAULT_CONFIG
) -> StratumClass:
    """EMPTY, POINT, or FULLDIM verdict for the stratum labeled u."""
    if not 1 <= s < f.degree:
        raise InvalidS(f"classification needs 1 <= s < degree, got s={s}")
    return StratumSolver(f, s, config).classify(u)


def sample_stratum(
    f: MonicPoly,
    s: int,
    u: Composition,
    grid,
    bounds=None,
    config: SolverConfig = DEFAULT_CONFIG,
) -> list[MonicPoly]:
    """Grid samples of the stratum labeled u, sorted by coefficients.

    StratumSolver.sample returns the coordinates and failure records too.
    """
    samples, _ = StratumSolver(f, s, config).sample(u, grid, bounds)
    return [h for _, h in samples]
