"""Buchberger's algorithm for submodules of free modules A^r.

A vector is a plain dict ``{(pos, exps): coeff}``.  Terms are compared
position-over-term: a smaller position index dominates, then the ring's
monomial order.  With r = 1 this is ordinary ideal arithmetic.

Besides reduced bases the module supplies the extended ("tagged") basis
trick: running Buchberger on ``(g_i, e_i)`` in A^{r+c} yields, in one pass,
a basis of span(g), the syzygies of the g_i and cofactors for membership.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .ring import Ring

Term = Tuple[int, Tuple[int, ...]]
Vector = Dict[Term, mpq]


class TermOrder:
    """Position-over-term order for one ring, with a key cache."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self._cache: Dict[Term, tuple] = {}

    def key(self, t: Term) -> tuple:
        k = self._cache.get(t)
        if k is None:
            k = (-t[0], self.ring.key(t[1]))
            self._cache[t] = k
        return k

    def lead(self, v: Vector) -> Term:
        return max(v, key=self.key)


_orders: Dict[Ring, TermOrder] = {}


def term_order(ring: Ring) -> TermOrder:
    o = _orders.get(ring)
    if o is None:
        o = _orders.setdefault(ring, TermOrder(ring))
    return o


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def axpy(v: Vector, c, shift, w: Vector) -> None:
    """In place ``v += c * x^shift * w``."""
    for (p, e), d in w.items():
        t = (p, tuple(x + y for x, y in zip(e, shift)))
        s = v.get(t, 0) + c * d
        if s:
            v[t] = s
        else:
            v.pop(t, None)


def monic(v: Vector, order: TermOrder) -> Vector:
    if not v:
        return v
    lc = v[order.lead(v)]
    if lc == 1:
        return v
    inv = 1 / lc
    return {t: c * inv for t, c in v.items()}


class _Basis:
    """Basis elements grouped by leading position for divisor lookup."""

    def __init__(self, order: TermOrder):
        self.order = order
        self.elems: List[Vector] = []
        self.leads: List[Term] = []
        self.by_pos: Dict[int, List[int]] = {}

    def add(self, v: Vector) -> int:
        lt = self.order.lead(v)
        idx = len(self.elems)
        self.elems.append(v)
        self.leads.append(lt)
        self.by_pos.setdefault(lt[0], []).append(idx)
        return idx

    def find_divisor(self, t: Term, skip=None) -> Optional[int]:
        for i in self.by_pos.get(t[0], ()):
            if i != skip and _divides(self.leads[i][1], t[1]):
                return i
        return None


def reduce_vector(v: Vector, basis: _Basis, skip=None) -> Vector:
    """Full normal form of ``v`` with respect to ``basis`` (basis elements monic)."""
    order = basis.order
    key = order.key
    f = dict(v)
    rem: Vector = {}
    while f:
        t = max(f, key=key)
        c = f[t]
        i = basis.find_divisor(t, skip)
        if i is None:
            rem[t] = c
            del f[t]
            continue
        g = basis.elems[i]
        axpy(f, -c, _sub(t[1], basis.leads[i][1]), g)
    return rem


def _spoly(f: Vector, g: Vector, lf: Term, lg: Term) -> Vector:
    m = _lcm(lf[1], lg[1])
    s: Vector = {}
    axpy(s, 1, _sub(m, lf[1]), f)
    axpy(s, -1, _sub(m, lg[1]), g)
    return s


def buchberger(gens: Sequence[Vector], ring: Ring, rank_one: bool = False) -> List[Vector]:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    ``rank_one`` enables Buchberger's coprime-leading-term criterion, which
    is only valid for ideals.  The chain criterion is applied in the
    Gebauer-Möller form in both cases; pairs are selected by smallest lcm.
    """
    order = term_order(ring)
    key = order.key
    basis = _Basis(order)
    heap: list = []
    live = set()
    counter = 0

    def update(h: Vector):
        nonlocal counter
        lh = order.lead(h)
        k = len(basis.elems)
        pos, eh = lh
        # drop old pairs whose lcm is strictly caught by the new leading term
        for pair in list(live):
            i, j, m = pair
            if basis.leads[i][0] != pos or not _divides(eh, m):
                continue
            if m != _lcm(basis.leads[i][1], eh) and m != _lcm(basis.leads[j][1], eh):
                live.discard(pair)
        groups: Dict[tuple, List[int]] = {}
        for i in basis.by_pos.get(pos, ()):
            groups.setdefault(_lcm(basis.leads[i][1], eh), []).append(i)
        kept: List[tuple] = []
        for m in sorted(groups, key=lambda m: ring.key(m)):
            if any(_divides(m2, m) for m2 in kept):
                continue
            kept.append(m)
            members = groups[m]
            if rank_one and any(m == tuple(a + b for a, b in zip(basis.leads[i][1], eh)) for i in members):
                continue
            i = min(members)
            pair = (i, k, m)
            live.add(pair)
            counter += 1
            heapq.heappush(heap, (key((pos, m)), counter, pair))
        basis.add(h)

    for g in gens:
        if not g:
            continue
        h = reduce_vector(g, basis) if basis.elems else dict(g)
        if h:
            update(monic(h, order))

    while heap:
        _, _, pair = heapq.heappop(heap)
        if pair not in live:
            continue
        live.discard(pair)
        i, j, _ = pair
        s = _spoly(basis.elems[i], basis.elems[j], basis.leads[i], basis.leads[j])
        h = reduce_vector(s, basis)
        if h:
            update(monic(h, order))

    return interreduce(basis.elems, ring)


def interreduce(elems: Sequence[Vector], ring: Ring) -> List[Vector]:
    """Minimal, fully interreduced, monic basis sorted by decreasing leading term."""
    order = term_order(ring)
    key = order.key
    items = sorted((monic(e, order) for e in elems if e), key=lambda e: key(order.lead(e)))
    minimal = _Basis(order)
    for e in items:
        lt = order.lead(e)
        if minimal.find_divisor(lt) is None:
            minimal.add(e)
    out = []
    for idx, e in enumerate(minimal.elems):
        lt = minimal.leads[idx]
        tail = dict(e)
        del tail[lt]
        r = reduce_vector(tail, minimal, skip=idx)
        r[lt] = e[lt]
        out.append(r)
    out.sort(key=lambda e: key(order.lead(e)), reverse=True)
    return out


class GBCache:
    """Reduced basis wrapped for repeated normal-form queries."""

    def __init__(self, gb: List[Vector], ring: Ring):
        self.ring = ring
        self.gb = gb
        self._basis = _Basis(term_order(ring))
        for g in gb:
            self._basis.add(g)

    def normal_form(self, v: Vector) -> Vector:
        return reduce_vector(v, self._basis)

    def contains(self, v: Vector) -> bool:
        return not reduce_vector(v, self._basis)


def shift_positions(v: Vector, offset: int) -> Vector:
    return {(p + offset, e): c for (p, e), c in v.items()}


class ExtendedGB:
    """Tagged Gröbner basis of ``(g_i, e_i)`` in A^{rank + len(gens)}.

    Positions ``< rank`` carry the vectors themselves and dominate, so the
    basis splits into a basis of span(g) (nonzero head) and a basis of the
    syzygy module (zero head).
    """

    def __init__(self, gens: Sequence[Vector], rank: int, ring: Ring):
        self.rank = rank
        self.ngens = len(gens)
        self.ring = ring
        zero_e = ring.zero_monomial
        tagged = []
        for i, g in enumerate(gens):
            t = dict(g)
            t[(rank + i, zero_e)] = mpq(1)
            tagged.append(t)
        self.gb = buchberger(tagged, ring)
        head, syz = [], []
        for v in self.gb:
            if any(p < rank for (p, _) in v):
                head.append(v)
            else:
                syz.append(v)
        self.head_part = head
        self.syzygies = [shift_positions(v, -rank) for v in syz]
        self.span_gb = [{t: c for t, c in v.items() if t[0] < rank} for v in head]
        self._full = GBCache(self.gb, ring)

    def lift(self, v: Vector) -> Optional[Vector]:
        """Cofactors ``y`` with ``sum y_i g_i == v``, or None if v is not in span."""
        r = self._full.normal_form(v)
        rank = self.rank
        if any(p < rank for (p, _) in r):
            return None
        return {(p - rank, e): -c for (p, e), c in r.items()}
