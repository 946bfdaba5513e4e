"""Occurrence sets and the stratification lattice of H_s(f).

A composition u occurs when some member of H_s(f) has exactly u as its root
multiplicity vector.  For s >= 2, under the squarefree-member hypothesis, the
occurring set is U union the upward closure of pairwise joins of U, where U
collects the compositions of length <= s (each realized by at most one
polynomial).  brute_force_occurring checks every label directly with the
solvers and serves as the independent route; the two are compared in tests,
never merged.

Strata with the same polynomial set collapse; classes are named by the set of
occurring compositions below the label.  Each nonempty class has a unique
maximal representative, so the lattice is the occurring set ordered by
refinement, with an adjoined bottom class when (d) does not occur.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .compositions import (
    Composition,
    enumerate_compositions,
    join,
    leq,
    upward_closure,
)
from .config import DEFAULT_CONFIG, SolverConfig
from .errors import (
    CostGuardExceeded,
    HypothesisViolation,
    InconsistentTable,
    InvalidS,
)
from .polynomials import MonicPoly
from .vandermonde import StratumSolver

_BRUTE_FORCE_MAX_DEGREE = 8


def _canon_key(u: Composition) -> tuple[int, ...]:
    return tuple(sorted(u.proper_sums()))


def compute_U(
    f: MonicPoly, s: int, config: SolverConfig = DEFAULT_CONFIG, solver: StratumSolver | None = None
) -> frozenset[Composition]:
    """The compositions of length <= s occurring in H_s(f).

    Each is realized by exactly one polynomial.  Raises HypothesisViolation
    when H_s(f) has no squarefree member, since the occurrence algorithm is
    only valid past that hypothesis.
    """
    if not 2 <= s < f.degree:
        raise InvalidS(f"need 2 <= s < degree, got s={s}")
    if solver is None:
        solver = StratumSolver(f, s, config)
    if not solver.hypothesis_holds():
        raise HypothesisViolation(
            "H_s(f) has no squarefree member; the occurrence algorithm does not apply"
        )
    found: set[Composition] = set()
    for u in enumerate_compositions(f.degree, 1, s):
        got = solver.point(u)
        if got is not None:
            found.add(got[2])
    return frozenset(found)


def algorithm_occurring(U: Iterable[Composition], d: int) -> frozenset[Composition]:
    """U union the upward closure of joins of distinct pairs from U."""
    atoms = sorted(set(U), key=_canon_key)
    for u in atoms:
        if u.d != d:
            raise InvalidS(f"composition {u} is not a composition of {d}")
    joins = {join(a, b) for a, b in itertools.combinations(atoms, 2)}
    return frozenset(atoms) | upward_closure(joins)


def brute_force_occurring(
    f: MonicPoly, s: int, config: SolverConfig = DEFAULT_CONFIG, solver: StratumSolver | None = None
) -> frozenset[Composition]:
    """Occurrence decided label by label with the solvers; no lattice theory.

    Guarded to degree <= 8; the label count doubles with each degree.
    """
    if not 1 <= s < f.degree:
        raise InvalidS(f"need 1 <= s < degree, got s={s}")
    if f.degree > _BRUTE_FORCE_MAX_DEGREE:
        raise CostGuardExceeded(
            f"brute force over 2^{f.degree - 1} labels refused for degree {f.degree}"
        )
    if solver is None:
        solver = StratumSolver(f, s, config)
    found: set[Composition] = set()
    for u in enumerate_compositions(f.degree):
        if u.length <= s:
            got = solver.point(u)
            if got is not None and got[2] == u:
                found.add(u)
        else:
            try:
                got = solver.interior(u)
            except Exception:
                got = None
            if got is not None:
                found.add(u)
    return frozenset(found)


@dataclass(frozen=True)
class OccurrenceTable:
    """The occurring compositions of one H_s(f), with the length <= s core."""

    d: int
    s: int
    occurring: frozenset[Composition]
    atoms_input: frozenset[Composition]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "occurring": [list(u.parts) for u in sorted(self.occurring, key=_canon_key)],
            "U": [list(u.parts) for u in sorted(self.atoms_input, key=_canon_key)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OccurrenceTable":
        return cls(
            d=int(data["d"]),
            s=int(data["s"]),
            occurring=frozenset(Composition(tuple(p)) for p in data["occurring"]),
            atoms_input=frozenset(Composition(tuple(p)) for p in data["U"]),
        )


def occurrence_table(
    f: MonicPoly,
    s: int,
    config: SolverConfig = DEFAULT_CONFIG,
    method: str = "algorithm",
    solver: StratumSolver | None = None,
) -> OccurrenceTable:
    """Assemble the occurring set for H_s(f).

    method 'algorithm' uses the join-closure description (s >= 2); 'brute'
    classifies every label.  For s <= 1 every composition occurs and both
    methods agree by construction.
    """
    d = f.degree
    if not 0 <= s < d:
        raise InvalidS(f"need 0 <= s < degree, got s={s}")
    if s <= 1:
        occ = frozenset(enumerate_compositions(d))
        core = frozenset({Composition((d,))}) if s == 1 else frozenset()
        return OccurrenceTable(d, s, occ, core)
    if solver is None:
        solver = StratumSolver(f, s, config)
    if method == "brute":
        occ = brute_force_occurring(f, s, config, solver=solver)
        core = frozenset(u for u in occ if u.length <= s)
        return OccurrenceTable(d, s, occ, core)
    if method != "algorithm":
        raise InvalidS(f"unknown method {method!r}")
    U = compute_U(f, s, config, solver=solver)
    return OccurrenceTable(d, s, algorithm_occurring(U, d), U)


@dataclass(frozen=True)
class LatticeElement:
    """One stratum class; rep is None only for the empty-set bottom class."""

    rep: Composition | None
    dim: int
    rank: int

    def label(self) -> str:
        return "empty" if self.rep is None else str(self.rep)


@dataclass(frozen=True)
class StratumLattice:
    d: int
    s: int
    elements: tuple[LatticeElement, ...]
    covers: tuple[tuple[int, int], ...]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def index_of(self, rep: Composition | None) -> int:
        for i, e in enumerate(self.elements):
            if e.rep == rep:
                return i
        raise KeyError(rep)

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i].rep, self.elements[j].rep
        if a is None:
            return True
        if b is None:
            return False
        return leq(a, b)

    def atoms(self) -> tuple[int, ...]:
        return tuple(sorted(j for i, j in self.covers if i == self.bottom))

    def coatoms(self) -> tuple[int, ...]:
        return tuple(sorted(i for i, j in self.covers if j == self.top))

    def rank_counts(self) -> tuple[int, ...]:
        top_rank = max(e.rank for e in self.elements)
        counts = [0] * (top_rank + 1)
        for e in self.elements:
            counts[e.rank] += 1
        return tuple(counts)

    def to_dot(self) -> str:
        lines = ["digraph stratum_lattice {", "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{e.label()} dim={e.dim}"];')
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "elements": [
                {
                    "rep": None if e.rep is None else list(e.rep.parts),
                    "dim": e.dim,
                    "rank": e.rank,
                }
                for e in self.elements
            ],
            "covers": [list(c) for c in self.covers],
        }


def build_lattice(table: OccurrenceTable) -> StratumLattice:
    """Order the occurring set by refinement, adjoining a bottom if needed.

    Raises InconsistentTable when the occurring set is not join-closed or has
    no unique top; both are guaranteed by the theory, so a failure means the
    table itself is wrong.
    """
    occ = sorted(table.occurring, key=_canon_key)
    occ_index = {u: i for i, u in enumerate(occ)}
    for a, b in itertools.combinations(occ, 2):
        if join(a, b) not in occ_index:
            raise InconsistentTable(f"occurring set not closed under join: {a} vs {b}")

    reps: list[Composition | None] = []
    if Composition((table.d,)) not in occ_index:
        reps.append(None)
    reps.extend(occ)

    n = len(reps)
    masks = []
    for r in reps:
        m = 0
        if r is not None:
            for u, i in occ_index.items():
                if leq(u, r):
                    m |= 1 << i
        masks.append(m)
    order = sorted(range(n), key=lambda i: (bin(masks[i]).count("1"), _mask_key(masks[i])))
    reps = [reps[i] for i in order]
    masks = [masks[i] for i in order]

    covers: list[tuple[int, int]] = []
    for j in range(n):
        below = [i for i in range(n) if masks[i] != masks[j] and masks[i] & masks[j] == masks[i]]
        below.sort(key=lambda i: -bin(masks[i]).count("1"))
        taken: list[int] = []
        for i in below:
            if all(masks[i] & masks[t] != masks[i] for t in taken):
                taken.append(i)
                covers.append((i, j))
    covers.sort()

    maximal = [j for j in range(n) if not any(i == j for i, _ in covers)]
    if len(maximal) != 1:
        raise InconsistentTable(f"no unique top element: {maximal}")

    rank = [0] * n
    for j in range(n):
        lower = [i for i, jj in covers if jj == j]
        rank[j] = max((rank[i] + 1 for i in lower), default=0)

    elements = tuple(
        LatticeElement(
            rep=reps[i],
            dim=(-1 if reps[i] is None else (reps[i].length - table.s if reps[i].length > table.s else 0)),
            rank=rank[i],
        )
        for i in range(n)
    )
    return StratumLattice(d=table.d, s=table.s, elements=elements, covers=tuple(covers))


def _mask_key(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class LatticeReport:
    graded: bool
    max_chain_len: int
    atomic: bool
    coatomic: bool
    rank_counts: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "graded": self.graded,
            "max_chain_len": self.max_chain_len,
            "atomic": self.atomic,
            "coatomic": self.coatomic,
            "rank_counts": list(self.rank_counts),
        }


def verify_lattice_properties(lat: StratumLattice) -> LatticeReport:
    """Check gradedness, atomicity, and coatomicity directly on the cover graph.

    max_chain_len counts cover steps from bottom to top.
    """
    n = len(lat.elements)
    rank = [e.rank for e in lat.elements]
    graded = all(rank[j] == rank[i] + 1 for i, j in lat.covers)
    max_chain_len = max(rank) if n else 0

    atom_ids = lat.atoms()
    atomic = True
    for j in range(n):
        if j == lat.bottom:
            continue
        below = [a for a in atom_ids if lat.leq(a, j)]
        if not below:
            atomic = False
            break
        j_rep = lat.elements[j].rep
        folded = lat.elements[below[0]].rep
        for a in below[1:]:
            folded = join(folded, lat.elements[a].rep)
        if folded != j_rep:
            atomic = False
            break

    coatom_ids = lat.coatoms()
    masks = _downset_masks(lat)
    mask_index = {m: i for i, m in enumerate(masks)}
    coatomic = True
    for j in range(n):
        if j == lat.top:
            continue
        above = [c for c in coatom_ids if lat.leq(j, c)]
        if not above:
            coatomic = False
            break
        m = masks[above[0]]
        for c in above[1:]:
            m &= masks[c]
        met = mask_index.get(m)
        if met is None:
            raise InconsistentTable("meet of coatoms is not an element of the lattice")
        if met != j:
            coatomic = False
            break

    return LatticeReport(
        graded=graded,
        max_chain_len=max_chain_len,
        atomic=atomic,
        coatomic=coatomic,
        rank_counts=lat.rank_counts(),
    )


def _downset_masks(lat: StratumLattice) -> list[int]:
    n = len(lat.elements)
    masks = []
    for i in range(n):
        m = 0
        for k in range(n):
            if lat.leq(k, i):
                m |= 1 << k
        masks.append(m)
    return masks
