"""Seeded test corpora of finitely presented modules.

Every module is a pure function of ``(seed, profile, index)``, so corpora
can be regenerated piecemeal in worker processes.  Sizes stay small: at
most 3 generators, 5 relations and entries of degree <= 3.
"""

from __future__ import annotations

import random
from typing import List, Sequence

from .matrix import Matrix, fraction_field_rank
from .modules import FPModule
from .ring import QQ, Polynomial, Ring, parse_ring

PROFILES = ("torsion", "mixed", "free")

RING_X = parse_ring("ring QQ[x] order grevlex")
RING_XY = parse_ring("ring QQ[x,y] order grevlex")

MAX_GENERATORS = 3
MAX_RELATIONS = 5
MAX_DEGREE = 3

_FACTORS = {
    RING_X: ["x", "x - 1", "x + 1", "x + 2", "x^2 + 1"],
    RING_XY: ["x", "y", "x + y", "x - 1", "y + 1", "x - y", "x^2 + 1", "x*y - 1"],
}


def make_rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join([str(seed)] + [str(t) for t in tags]))


def factor_pool(ring: Ring) -> List[Polynomial]:
    return [ring(f) for f in _FACTORS[ring]]


def random_polynomial(ring: Ring, rng: random.Random, max_degree: int = 2,
                      max_terms: int = 3, coeff: int = 3, nonzero: bool = True) -> Polynomial:
    """Sparse polynomial with small integer coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(0, max_degree)
            e = [0] * ring.nvars
            for _ in range(d):
                e[rng.randrange(ring.nvars)] += 1
            c = rng.randint(-coeff, coeff)
            if c:
                terms[tuple(e)] = QQ(c)
        f = Polynomial(ring, terms)
        if f or not nonzero:
            return f


def random_factored(ring: Ring, rng: random.Random, max_degree: int = MAX_DEGREE) -> Polynomial:
    """Product of pool factors (degree <= max_degree), so gcds are nontrivial."""
    pool = [g for g in factor_pool(ring) if g.degree() <= max_degree]
    f = rng.choice(pool)
    for _ in range(rng.randint(0, 2)):
        g = rng.choice(pool)
        if f.degree() + g.degree() <= max_degree:
            f = f * g
    return f


def _full_rank_random(ring: Ring, rng: random.Random, rows: int, cols: int) -> Matrix:
    """Random presentation whose relations have full row rank (a torsion module)."""
    while True:
        m = Matrix(ring, rows, [tuple(random_polynomial(ring, rng, 2, 2, nonzero=rng.random() < 0.7)
                                      for _ in range(rows)) for _ in range(cols)])
        if fraction_field_rank([list(r) for r in m.rows]) == rows:
            return m


def _cyclic_torsion(ring: Ring, rng: random.Random) -> Matrix:
    f = random_factored(ring, rng)
    if ring.nvars > 1 and rng.random() < 0.3:
        g = random_factored(ring, rng, 2) * rng.choice(factor_pool(ring)) \
            if rng.random() < 0.5 else f * random_factored(ring, rng, 1)
        if g.degree() <= MAX_DEGREE:
            return Matrix.from_rows(ring, [[f, g]])
    return Matrix.from_rows(ring, [[f]])


def _extension(ring: Ring, rng: random.Random) -> Matrix:
    """Upper triangular [[f, h], [0, g]]: an extension of A/(g) by A/(f)."""
    f = random_factored(ring, rng, 2)
    g = random_factored(ring, rng, 2)
    h = random_polynomial(ring, rng, 1, 2, nonzero=False)
    return Matrix.from_rows(ring, [[f, h], [ring.zero(), g]])


def _block_sum(ring: Ring, blocks: Sequence[Matrix]) -> Matrix:
    return Matrix.block_diagonal(ring, list(blocks))


def _tweak(m: Matrix, rng: random.Random) -> Matrix:
    """Change of generators by an elementary (invertible) row operation."""
    if m.nrows < 2:
        return m
    i, j = rng.sample(range(m.nrows), 2)
    c = random_polynomial(m.ring, rng, 1, 2, nonzero=False)
    rows = list(m.rows)
    rows[i] = tuple(a + c * b for a, b in zip(rows[i], rows[j]))
    return Matrix.from_rows(m.ring, rows, m.ncols)


def _torsion_presentation(ring: Ring, rng: random.Random) -> Matrix:
    kind = rng.random()
    if kind < 0.35:
        p = _cyclic_torsion(ring, rng)
    elif kind < 0.6:
        p = _block_sum(ring, [_cyclic_torsion(ring, rng), _cyclic_torsion(ring, rng)])
    elif kind < 0.8:
        p = _extension(ring, rng)
    else:
        rows = rng.randint(1, 2)
        p = _full_rank_random(ring, rng, rows, rows + rng.randint(0, 1))
    if p.ncols > MAX_RELATIONS:
        p = _cyclic_torsion(ring, rng)
    if rng.random() < 0.2 and p.ncols < MAX_RELATIONS:
        p = _redundant_relation(p, rng)
    return _tweak(p, rng) if rng.random() < 0.5 else p


def _redundant_relation(m: Matrix, rng: random.Random) -> Matrix:
    """Append a combination of existing relations (same module, new presentation)."""
    c = [random_polynomial(m.ring, rng, 1, 2, nonzero=False) for _ in range(m.ncols)]
    return m.hstack(Matrix(m.ring, m.nrows, [m.apply(c)]))


def _mixed_presentation(ring: Ring, rng: random.Random) -> Matrix:
    kind = rng.random()
    if ring.nvars > 1 and kind < 0.3:
        # coker of a column vector: rank r0 - 1, torsion-free part not free
        r0 = rng.choice([2, 2, 3])
        col = [random_factored(ring, rng, 2) for _ in range(r0)]
        p = Matrix(ring, r0, [tuple(col)])
        if rng.random() < 0.4:
            g = random_factored(ring, rng, 1)
            p = p.hstack(Matrix(ring, r0, [tuple(g * c for c in col)]))
    else:
        t = _torsion_presentation(ring, rng)
        while t.nrows > 2:
            t = _torsion_presentation(ring, rng)
        p = _block_sum(ring, [t, Matrix(ring, rng.randint(1, MAX_GENERATORS - t.nrows), [])])
        if rng.random() < 0.3 and p.ncols < MAX_RELATIONS:
            p = _redundant_relation(p, rng)
    return _tweak(p, rng) if rng.random() < 0.6 else p


def _free_presentation(ring: Ring, rng: random.Random) -> Matrix:
    k = rng.randint(1, MAX_GENERATORS - 1)
    if rng.random() < 0.5:
        return Matrix(ring, k, [])
    # one redundant generator e_{k+1} = c * e_1
    c = random_polynomial(ring, rng, 2, 2, nonzero=False)
    z = ring.zero()
    col = (-c,) + (z,) * (k - 1) + (ring.one(),)
    return _tweak(Matrix(ring, k + 1, [col]), rng)


def corpus_module(seed: int, profile: str, index: int, ring: Ring = None) -> FPModule:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = make_rng(seed, profile, index)
    if ring is None:
        ring = RING_X if rng.random() < 0.3 else RING_XY
    build = {"torsion": _torsion_presentation, "mixed": _mixed_presentation,
             "free": _free_presentation}[profile]
    while True:
        p = build(ring, rng)
        if _within_caps(p):
            return FPModule(p)


def _within_caps(m: Matrix) -> bool:
    return (m.nrows <= MAX_GENERATORS and m.ncols <= MAX_RELATIONS
            and all(e.degree() <= MAX_DEGREE for c in m.cols for e in c))


def corpus_generate(seed: int, count: int, profile: str = "torsion", ring: Ring = None) -> List[FPModule]:
    """Deterministic list of ``count`` modules drawn from ``profile``."""
    if count < 1:
        raise ValueError("count must be positive")
    return [corpus_module(seed, profile, i, ring) for i in range(count)]
