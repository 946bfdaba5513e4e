"""Deterministic hypothesis profile and shared random-input generators."""

from __future__ import annotations

import numpy as np
from hypothesis import HealthCheck, settings

from starvedpoly.compositions import Composition
from starvedpoly.polynomials import MonicPoly, RootMultiset, from_roots

settings.register_profile(
    "deterministic",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


def random_composition(rng: np.random.Generator, d: int, length: int | None = None) -> Composition:
    if length is None:
        length = int(rng.integers(1, d + 1))
    if length == 1:
        return Composition((d,))
    cuts = rng.choice(np.arange(1, d), size=length - 1, replace=False)
    return Composition.from_proper_sums(sorted(int(c) for c in cuts), d)


def separated_roots(
    rng: np.random.Generator, count: int, min_gap: float = 0.2, lo: float = -3.0, hi: float = 3.0
) -> list[float]:
    while True:
        r = np.sort(rng.uniform(lo, hi, size=count))
        if count < 2 or float(np.min(np.diff(r))) >= min_gap:
            return [float(v) for v in r]


def random_hyperbolic(
    rng: np.random.Generator, d: int, min_gap: float = 0.2
) -> MonicPoly:
    """Squarefree by construction."""
    return from_roots(RootMultiset(separated_roots(rng, d, min_gap), [1] * d))
