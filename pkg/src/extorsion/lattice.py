"""Integer arithmetic in the lattice Z^b with form e_i·e_j = -δ_ij and K = Σ e_i.

Indices are 1-based throughout, matching the usual labelling e_1, ..., e_b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence

import numpy as np

from .report import Report

MAX_B = 6
MAX_BOUND = 5


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class DonaldsonLattice:
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("lattice rank must be positive")

    def element(self, coords: Sequence[int]) -> "LatticeClass":
        return LatticeClass(self, tuple(int(c) for c in coords))

    def basis(self, i: int) -> "LatticeClass":
        """e_i, 1-based."""
        if not 1 <= i <= self.b:
            raise IndexError(f"basis index {i} outside 1..{self.b}")
        return self.element([1 if k == i else 0 for k in range(1, self.b + 1)])

    def zero(self) -> "LatticeClass":
        return self.element([0] * self.b)

    def canonical(self) -> "LatticeClass":
        """c1(K) = e_1 + ... + e_b."""
        return self.element([1] * self.b)

    def indicator(self, indices: Iterable[int]) -> "LatticeClass":
        """e_I = Σ_{i ∈ I} e_i."""
        s = set(indices)
        return self.element([1 if k in s else 0 for k in range(1, self.b + 1)])


@dataclass(frozen=True)
class LatticeClass:
    lattice: DonaldsonLattice
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.lattice.b:
            raise ValueError("coordinate vector has the wrong length")

    def _same(self, other: "LatticeClass"):
        if self.lattice.b != other.lattice.b:
            raise ValueError(f"rank mismatch: {self.lattice.b} vs {other.lattice.b}")

    def __add__(self, other):
        self._same(other)
        return LatticeClass(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return LatticeClass(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeClass(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int):
        return LatticeClass(self.lattice, tuple(k * a for a in self.coords))

    def dot(self, other) -> int:
        return intersection(self, other)

    def __str__(self):
        return ",".join(map(str, self.coords))


@dataclass(frozen=True)
class IndexSet:
    b: int
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        bad = [j for j in self.members if not 1 <= j <= self.b]
        if bad:
            raise ValueError(f"indices {sorted(bad)} outside 1..{self.b}")

    @property
    def complement(self) -> FrozenSet[int]:
        return frozenset(range(1, self.b + 1)) - self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def intersection(u: LatticeClass, v: LatticeClass) -> int:
    u._same(v)
    return -sum(a * b for a, b in zip(u.coords, v.coords))


def bn_defect(J: IndexSet, d: LatticeClass) -> int:
    """<-e_J, D> + D^2 = Σ_{j∈J} d_j - Σ_i d_i^2 (never positive)."""
    if J.b != d.lattice.b:
        raise ValueError("index set and class have different ranks")
    return sum(d.coords[j - 1] for j in J.members) - sum(c * c for c in d.coords)


def equality_classes(J: IndexSet) -> List[LatticeClass]:
    """The classes with zero defect: e_{J'} for every J' ⊆ J."""
    lat = DonaldsonLattice(J.b)
    members = sorted(J.members)
    out = []
    for r in range(len(members) + 1):
        for sub in itertools.combinations(members, r):
            out.append(lat.indicator(sub))
    return out


def nakamura_value(d: LatticeClass) -> int:
    """<c1(K), d> = -Σ d_i; negative means d cannot be the class of an effective divisor."""
    return intersection(d.lattice.canonical(), d)


def enoki_cycle(b: int) -> List[LatticeClass]:
    """Classes e_i - e_{i+1} (indices mod b) of the cycle of rational curves."""
    if b < 2:
        raise ValueError("the cycle needs b >= 2")
    lat = DonaldsonLattice(b)
    return [lat.basis(i) - lat.basis(i % b + 1) for i in range(1, b + 1)]


def _cycle_coefficients(coords: Sequence[int]) -> Optional[List[int]]:
    """Integers c with d = Σ c_i (e_i - e_{i+1}), or None."""
    c = list(itertools.accumulate(coords))
    if c[-1] != 0:
        return None
    # d_1 = c_1 - c_b, d_i = c_i - c_{i-1}; with c_b = 0 the prefix sums solve it
    return c


def enoki_k_pairing_check(d: LatticeClass, kind: str = "generic") -> Report:
    """Compare membership in the Enoki divisor lattice with the K-pairing condition.

    generic: span of the cycle classes, condition d·K = 0.
    special: that span plus the elliptic class -Σ e_i, condition d·K ≡ 0 mod b.
    """
    b = d.lattice.b
    pairing = intersection(d, d.lattice.canonical())
    if kind == "generic":
        in_span = b >= 2 and _cycle_coefficients(d.coords) is not None
        condition = pairing == 0
    elif kind == "special":
        total = sum(d.coords)
        in_span = False
        if total % b == 0:
            m = -total // b
            # remove m copies of the elliptic class -Σ e_i, then solve on the cycle
            rest = [c + m for c in d.coords]
            in_span = b == 1 and rest == [0] or (b >= 2 and _cycle_coefficients(rest) is not None)
        condition = pairing % b == 0
    else:
        raise ValueError(f"unknown Enoki type {kind!r}")
    return Report(in_span == condition, {"pairing": pairing, "in_span": in_span,
                                         "compatible": condition, "type": kind})


def sigma_selector(J: IndexSet, b: int = None) -> Optional[int]:
    """Least σ ∉ J with σ+1 ∈ J (indices mod b); None iff J is empty or everything."""
    b = J.b if b is None else b
    if b != J.b:
        raise ValueError("rank mismatch")
    for s in range(1, b + 1):
        if s not in J.members and (s % b + 1) in J.members:
            return s
    return None


def _box(b: int, bound: int) -> np.ndarray:
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * b), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def exhaustive_verify(b: int, bound: int) -> Report:
    """Check the defect inequality and its equality set on every J and every |d_i| <= bound.

    Also checks negative definiteness and that K is characteristic
    (d·d ≡ d·K mod 2) on the same box.
    """
    if not 1 <= b <= MAX_B or not 0 <= bound <= MAX_BOUND:
        raise BudgetError(f"budget is b <= {MAX_B}, bound <= {MAX_BOUND}")
    d = _box(b, bound)
    sq = (d * d).sum(axis=1)
    self_int = -sq
    k_pair = -d.sum(axis=1)
    nonzero = sq != 0
    definite = bool(np.all(self_int[nonzero] < 0))
    characteristic = bool(np.all((self_int - k_pair) % 2 == 0))
    per_j = {}
    ok = definite and characteristic
    for mask in range(1 << b):
        J = [j for j in range(b) if mask >> j & 1]
        defect = d[:, J].sum(axis=1) - sq
        inJ = np.zeros(b, dtype=bool)
        inJ[J] = True
        identity = -((d[:, inJ] * (d[:, inJ] - 1)).sum(axis=1) + (d[:, ~inJ] ** 2).sum(axis=1))
        zero_rows = {tuple(int(x) for x in row) for row in d[defect == 0]}
        expected = {c.coords for c in equality_classes(IndexSet(b, {j + 1 for j in J}))
                    if max(map(abs, c.coords), default=0) <= bound}
        good = bool(np.all(defect <= 0)) and bool(np.all(defect == identity)) and zero_rows == expected
        ok = ok and good
        per_j[tuple(j + 1 for j in J)] = len(zero_rows)
    return Report(ok, {"b": b, "bound": bound, "classes": int(len(d)), "index_sets": 1 << b,
                       "negative_definite": definite, "characteristic": characteristic,
                       "zero_defect_counts": per_j})
