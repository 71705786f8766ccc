"""Ideals of QQ[vars]: division, Gröbner bases, intersection and gcds."""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .groebner import GBCache, buchberger
from .ring import MonomialOrder, Polynomial, Ring, RingMismatchError


def to_vector(f: Polynomial, pos: int = 0):
    return {(pos, e): c for e, c in f.terms.items()}


def from_vector(ring: Ring, v, pos: int = 0) -> Polynomial:
    return Polynomial(ring, {e: c for (p, e), c in v.items() if p == pos})


def _common_ring(polys: Sequence[Polynomial]) -> Ring:
    rings = {f.ring for f in polys}
    if len(rings) > 1:
        raise RingMismatchError("generators live in different rings")
    return rings.pop()


def divide_multi(f: Polynomial, divisors: Sequence[Polynomial]) -> Tuple[List[Polynomial], Polynomial]:
    """Multivariate division with remainder in the ring's order.

    Returns ``(quotients, remainder)`` with ``f == sum(q*d) + r`` and no term
    of ``r`` divisible by a leading monomial of a divisor.
    """
    if not divisors:
        raise ValueError("empty divisor list")
    ring = f.ring
    for d in divisors:
        if d.ring != ring:
            raise RingMismatchError("divisor from another ring")
        if d.is_zero():
            raise ZeroDivisionError("zero divisor in divide_multi")
    key = ring.key
    leads = [(d.LM, d.LC) for d in divisors]
    quotients = [dict() for _ in divisors]
    p = dict(f.terms)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                q = c / lc
                quotients[i][shift] = quotients[i].get(shift, 0) + q
                for e, dc in divisors[i].terms.items():
                    t = tuple(a + b for a, b in zip(e, shift))
                    s = p.get(t, 0) - q * dc
                    if s:
                        p[t] = s
                    else:
                        p.pop(t, None)
                break
        else:
            rem[m] = c
            del p[m]
    qs = [Polynomial(ring, {e: c for e, c in q.items() if c}) for q in quotients]
    return qs, Polynomial(ring, rem)


def exact_quotient(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when g divides f; raises ArithmeticError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    (q,), r = divide_multi(f, [g])
    if not r.is_zero():
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def divides(g: Polynomial, f: Polynomial) -> bool:
    if g.is_zero():
        return f.is_zero()
    return divide_multi(f, [g])[1].is_zero()


def groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> List[Polynomial]:
    """Reduced Gröbner basis (monic, sorted by decreasing leading monomial)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = _common_ring(gens)
    work = ring if order is None or order == ring.order else ring.with_order(order)
    vecs = [to_vector(g) for g in gens]
    return [from_vector(work, v) for v in buchberger(vecs, work, rank_one=True)]


class Ideal:
    """Ideal given by generators; the reduced Gröbner basis is computed lazily."""

    def __init__(self, generators: Iterable[Polynomial], ring: Optional[Ring] = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = _common_ring(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from another ring")
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None
        self._cache = None

    @property
    def gb(self) -> List[Polynomial]:
        # deterministic result, so a racing second computation publishes the same value
        if self._gb is None:
            basis = groebner(self.generators) if self.generators else []
            self._cache = GBCache([to_vector(g) for g in basis], self.ring)
            self._gb = basis
        return self._gb

    def reduce(self, f: Polynomial) -> Polynomial:
        self.gb
        return from_vector(self.ring, self._cache.normal_form(to_vector(f)))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.gb

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant()

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash(tuple(self.gb))

    def __repr__(self):
        return "Ideal(" + ", ".join(map(str, self.generators)) + ")"


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    return I.contains(f)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t·I + (1 - t)·J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    n = ring.nvars
    tname = "t"
    while tname in ring.variables:
        tname += "_"
    big = Ring((tname,) + ring.variables, MonomialOrder("elimination", (1, n)))

    def lift(f: Polynomial, t_power: int):
        return {(t_power,) + e: c for e, c in f.terms.items()}

    gens = []
    for f in I.gb:
        gens.append(Polynomial(big, lift(f, 1)))
    for g in J.gb:
        tg = lift(g, 1)
        terms = dict(lift(g, 0))
        for e, c in tg.items():
            terms[e] = terms.get(e, 0) - c
        gens.append(Polynomial(big, terms))
    basis = groebner(gens)
    out = [
        Polynomial(ring, {e[1:]: c for e, c in b.terms.items()})
        for b in basis
        if all(e[0] == 0 for e in b.terms)
    ]
    return Ideal(groebner(out), ring)


def _monomial_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    (e1,), (e2,) = f.terms, g.terms
    return f.ring.monomial(tuple(min(a, b) for a, b in zip(e1, e2)))


def _content_monomial(f: Polynomial):
    return tuple(min(col) for col in zip(*f.terms))


def lcm_poly(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic generator of (f) ∩ (g)."""
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    (h,) = ideal_intersection(Ideal([f]), Ideal([g])).gb
    return h


def gcd_poly(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd, computed as f*g / lcm(f, g)."""
    if f.ring != g.ring:
        raise RingMismatchError("polynomials live in different rings")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    ring = f.ring
    if f.is_constant() or g.is_constant():
        return ring.one()
    if len(f.terms) == 1 and len(g.terms) == 1:
        return _monomial_gcd(f, g)
    # split off the monomial content; what is left has no monomial factor
    mf, mg = _content_monomial(f), _content_monomial(g)
    mono = ring.monomial(tuple(min(a, b) for a, b in zip(mf, mg)))
    f0 = exact_quotient(f, ring.monomial(mf))
    g0 = exact_quotient(g, ring.monomial(mg))
    if f0.is_constant() or g0.is_constant():
        return mono
    if not set(f0.variables_used()) & set(g0.variables_used()):
        return mono
    if divides(f0, g0):
        return (mono * f0).monic()
    if divides(g0, f0):
        return (mono * g0).monic()
    h = exact_quotient(f0 * g0, lcm_poly(f0, g0))
    return (mono * h).monic()


def gcd_of_ideal(I: Ideal, check: bool = True) -> Polynomial:
    """Monic gcd of the generators: the generator of the smallest principal ideal ⊇ I.

    With ``check`` the value is recomputed from the reduced Gröbner basis and
    must agree, since it may not depend on the generating set.
    """
    gens = [g for g in I.generators if not g.is_zero()]
    if not gens:
        raise ValueError("gcd of the zero ideal is undefined")
    a = _iterated_gcd(gens)
    if check and not a.is_constant():
        b = _iterated_gcd(I.gb)
        if a != b:
            raise AssertionError(f"gcd depends on generators: {a} vs {b}")
    return a


def _iterated_gcd(polys: Sequence[Polynomial]) -> Polynomial:
    polys = sorted(polys, key=lambda p: (len(p.terms), p.degree()))
    a = polys[0].monic()
    for p in polys[1:]:
        if a.is_constant():
            break
        a = gcd_poly(a, p)
    return a
