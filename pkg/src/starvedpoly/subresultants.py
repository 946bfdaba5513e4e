"""Subdiscriminants of a monic polynomial and what they certify.

Delta_{d,k} is the k-th subdiscriminant of p: the signed principal
subresultant coefficient of (p, p'), normalized so that Delta_{d,0} is the
discriminant of monic p and, for roots r_1..r_d counted with multiplicity,

    Delta_{d,k} = sum over (d-k)-subsets S of prod_{i<j in S} (r_i - r_j)^2.

Consequences used here: Delta_{d,d-1} = d; p has exactly m distinct complex
roots iff Delta_{d,0} = ... = Delta_{d,d-m-1} = 0 and Delta_{d,d-m} != 0; and
p is hyperbolic (all roots real) iff every Delta_{d,k} >= 0.

Both modes evaluate determinants of the same truncated Sylvester-type
matrices: exact mode over Fraction (no tolerance anywhere), floating mode via
LU with a zero band of width zero_tol * (1 + largest |Delta|) and a factor-10
ambiguity band that raises IllConditioned.  The sign is
(-1)^((d-k)(d-k-1)/2) times the raw determinant; calibrated against the
root-difference-product formula on integer-root polynomials, degrees 2..7.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG, SolverConfig
from .errors import IllConditioned, InvalidRange
from .polynomials import MonicPoly


class Certificate(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    NOT_HYPERBOLIC = "not_hyperbolic"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SubdiscriminantSequence:
    """(Delta_{d,0}, ..., Delta_{d,d-1}); exact entries are int or Fraction."""

    degree: int
    values: tuple
    mode: str

    def max_magnitude(self) -> float:
        return max(abs(float(v)) for v in self.values)


def _sylvester_rows(P: Sequence, Q: Sequence, k: int) -> list[list]:
    """Rows of the truncated Sylvester-type matrix whose det is sres_k(P,Q)."""
    p, q = len(P) - 1, len(Q) - 1
    n = p + q - 2 * k
    rows = []
    for j in range(q - k - 1, -1, -1):
        row = [0] * (q - k - 1 - j) + list(P) + [0] * j
        rows.append(row[:n])
    for j in range(p - k - 1, -1, -1):
        row = [0] * (p - k - 1 - j) + list(Q) + [0] * j
        rows.append(row[:n])
    return rows


def _exact_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _as_exact(v: Fraction):
    return int(v) if v.denominator == 1 else v


def subdiscriminants_from_exact(coeffs: Sequence) -> tuple:
    """Exact subdiscriminants from rational coefficients (f_1, ..., f_d)."""
    d = len(coeffs)
    if d < 1:
        raise InvalidRange("need degree >= 1")
    P = [Fraction(1)] + [Fraction(c) for c in coeffs]
    Q = [Fraction(d - i) * P[i] for i in range(d)]
    out = []
    for k in range(d):
        sign = (-1) ** (((d - k) * (d - k - 1)) // 2)
        out.append(_as_exact(sign * _exact_det(_sylvester_rows(P, Q, k))))
    return tuple(out)


def _subdiscriminants_float(coeffs: Sequence[float]) -> tuple[float, ...]:
    d = len(coeffs)
    P = [1.0, *map(float, coeffs)]
    Q = [(d - i) * P[i] for i in range(d)]
    out = []
    for k in range(d):
        sign = (-1) ** (((d - k) * (d - k - 1)) // 2)
        rows = np.array(_sylvester_rows(P, Q, k), dtype=float)
        out.append(sign * float(np.linalg.det(rows)))
    return tuple(out)


def _pick_mode(p: MonicPoly, mode: str) -> str:
    if mode not in ("auto", "exact", "float"):
        raise InvalidRange(f"mode must be auto, exact or float, got {mode!r}")
    if mode == "auto":
        return "exact" if all(float(c).is_integer() for c in p.coeffs) else "float"
    return mode


def subdiscriminants(p: MonicPoly, mode: str = "auto") -> SubdiscriminantSequence:
    """All subdiscriminants of p.

    mode="auto" uses exact arithmetic when every coefficient is an integer
    (the common case for constructed examples) and floating otherwise;
    mode="exact" treats the binary floats as the exact rationals they are.
    """
    chosen = _pick_mode(p, mode)
    if chosen == "exact":
        values = subdiscriminants_from_exact([Fraction(c) for c in p.coeffs])
    else:
        values = _subdiscriminants_float(p.coeffs)
    return SubdiscriminantSequence(p.degree, values, chosen)


def _zero_band(seq: SubdiscriminantSequence, config: SolverConfig) -> float:
    return config.zero_tol * (1.0 + seq.max_magnitude())


def count_distinct_roots(
    p: MonicPoly, mode: str = "auto", config: SolverConfig = DEFAULT_CONFIG
) -> int:
    """Number of distinct complex roots, from the leading zero run.

    Floating mode raises IllConditioned when the first nonzero candidate sits
    inside the factor-10 ambiguity band around the zero threshold.
    """
    seq = subdiscriminants(p, mode)
    d = seq.degree
    if seq.mode == "exact":
        k = 0
        while k < d and seq.values[k] == 0:
            k += 1
        return d - k
    theta = _zero_band(seq, config)
    for k, v in enumerate(seq.values):
        if abs(v) <= theta:
            continue
        if abs(v) < 10.0 * theta:
            raise IllConditioned(
                f"subdiscriminant {k} of {p} is inside the zero ambiguity band"
            )
        return d - k
    # all below threshold cannot happen: Delta_{d,d-1} = d
    raise IllConditioned(f"all subdiscriminants of {p} are numerically zero")


def hyperbolicity_certificate(
    p: MonicPoly, mode: str = "auto", config: SolverConfig = DEFAULT_CONFIG
) -> Certificate:
    """HYPERBOLIC iff all subdiscriminants are >= 0 (exactly, or within band)."""
    seq = subdiscriminants(p, mode)
    if seq.mode == "exact":
        return (
            Certificate.HYPERBOLIC
            if all(v >= 0 for v in seq.values)
            else Certificate.NOT_HYPERBOLIC
        )
    theta = _zero_band(seq, config)
    worst = min(float(v) for v in seq.values)
    if worst <= -10.0 * theta:
        return Certificate.NOT_HYPERBOLIC
    if worst < -theta:
        return Certificate.INDETERMINATE
    return Certificate.HYPERBOLIC
