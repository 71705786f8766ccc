"""Finitely presented modules over QQ[vars].

A module is the cokernel of its presentation matrix ``F1 -> F0``; elements
are columns over the free cover ``F0`` read modulo the relation span.  Maps
between modules are matrices on free covers that must carry relations into
relations; that check runs whenever a :class:`ModuleHom` is built.
"""

from __future__ import annotations

import random
from typing import Callable, List, Optional, Sequence, Tuple

from .groebner import ExtendedGB, GBCache, buchberger
from .ideal import Ideal, exact_quotient, gcd_poly, ideal_intersection, lcm_poly
from .matrix import (Column, Matrix, column_to_vector, determinant, fraction_field_rank,
                     is_zero_column, vector_to_column)
from .ring import Polynomial, Ring, RingMismatchError
from .report import Report


class CertificateError(ValueError):
    """A matrix does not define a homomorphism between the given modules."""


class HypothesisError(ValueError):
    """An input violates the precondition of an operation."""


def _extended(m: Matrix) -> ExtendedGB:
    ext = m._cache.get("ext")
    if ext is None:
        ext = ExtendedGB(m.vectors(), m.nrows, m.ring)
        m._cache["ext"] = ext
    return ext


def _span(m: Matrix) -> GBCache:
    gb = m._cache.get("gb")
    if gb is None:
        ext = m._cache.get("ext")
        basis = ext.span_gb if ext is not None else buchberger(m.vectors(), m.ring)
        gb = GBCache(basis, m.ring)
        m._cache["gb"] = gb
    return gb


def syzygies(m: Matrix) -> Matrix:
    """Matrix whose columns generate ker(m: A^ncols -> A^nrows)."""
    ext = _extended(m)
    return Matrix(m.ring, m.ncols, [vector_to_column(m.ring, s, m.ncols) for s in ext.syzygies])


def lift(m: Matrix, col: Sequence[Polynomial]) -> Optional[Column]:
    """Some ``y`` with ``m @ y == col``, or None when col is not in the column span."""
    if len(col) != m.nrows:
        raise ValueError("dimension mismatch in lift")
    y = _extended(m).lift(column_to_vector(col))
    if y is None:
        return None
    return vector_to_column(m.ring, y, m.ncols)


def in_span(m: Matrix, col: Sequence[Polynomial]) -> bool:
    return not _span(m).normal_form(column_to_vector(col))


def unit_column(ring: Ring, n: int, i: int, scale=None) -> Column:
    z = ring.zero()
    d = ring.one() if scale is None else scale
    return tuple(d if k == i else z for k in range(n))


class FPModule:
    """coker(presentation); the number of rows is the number of generators."""

    def __init__(self, presentation: Matrix):
        self.presentation = presentation
        self.ring = presentation.ring

    # constructors -------------------------------------------------------
    @classmethod
    def free(cls, ring: Ring, rank: int) -> "FPModule":
        return cls(Matrix(ring, rank, []))

    @classmethod
    def cyclic(cls, ring: Ring, *relations: Polynomial) -> "FPModule":
        """A / (relations)."""
        return cls(Matrix(ring, 1, [(ring(f),) for f in relations]))

    @classmethod
    def direct_sum(cls, *mods: "FPModule") -> "FPModule":
        if not mods:
            raise ValueError("empty direct sum")
        ring = mods[0].ring
        return cls(Matrix.block_diagonal(ring, [m.presentation for m in mods]))

    # queries ------------------------------------------------------------
    @property
    def rank(self) -> int:
        """Number of generators (rank of the free cover)."""
        return self.presentation.nrows

    @property
    def relations(self) -> Matrix:
        return self.presentation

    def normal_form(self, col: Sequence[Polynomial]) -> Column:
        v = _span(self.presentation).normal_form(column_to_vector(col))
        return vector_to_column(self.ring, v, self.rank)

    def is_zero_element(self, col: Sequence[Polynomial]) -> bool:
        if len(col) != self.rank:
            raise ValueError("element of the wrong length")
        return in_span(self.presentation, col)

    def is_zero(self) -> bool:
        return all(self.is_zero_element(unit_column(self.ring, self.rank, i)) for i in range(self.rank))

    def generator(self, i: int) -> Column:
        return unit_column(self.ring, self.rank, i)

    def identity(self) -> "ModuleHom":
        return ModuleHom(self, self, Matrix.identity(self.ring, self.rank), check=False)

    def scalar(self, a: Polynomial) -> "ModuleHom":
        return ModuleHom(self, self, Matrix.identity(self.ring, self.rank, a), check=False)

    def __str__(self):
        from .textio import format_matrix_file
        return format_matrix_file(self.presentation)

    def __repr__(self):
        return f"FPModule(generators={self.rank}, relations={self.presentation.ncols})"


class Submodule:
    """Submodule of ``ambient`` generated by the columns of ``generators``.

    Membership is decided modulo the ambient relations, so for a free
    ambient this is an honest submodule of A^r.
    """

    def __init__(self, ambient: FPModule, generators: Matrix):
        if generators.nrows != ambient.rank:
            raise ValueError("generators do not live in the ambient cover")
        if generators.ring != ambient.ring:
            raise RingMismatchError("generators from another ring")
        self.ambient = ambient
        self.generators = generators
        self.ring = ambient.ring
        self._total = generators.hstack(ambient.relations)

    @property
    def rank(self) -> int:
        return self.ambient.rank

    def contains(self, col: Sequence[Polynomial]) -> bool:
        return in_span(self._total, col)

    def issubset(self, other: "Submodule") -> bool:
        _check_same_ambient(self, other)
        return all(other.contains(c) for c in self.generators.cols)

    def is_zero(self) -> bool:
        return all(self.ambient.is_zero_element(c) for c in self.generators.cols)

    def is_everything(self) -> bool:
        return all(self.contains(unit_column(self.ring, self.rank, i)) for i in range(self.rank))

    def coordinates(self, col: Sequence[Polynomial]) -> Optional[Column]:
        """Coefficients on the generators expressing ``col`` modulo ambient relations."""
        y = lift(self._total, col)
        return None if y is None else y[: self.generators.ncols]

    def as_module(self) -> Tuple[FPModule, "ModuleHom"]:
        """Presentation of the submodule and its inclusion into the ambient module."""
        k = self.generators.ncols
        rel = syzygies(self._total).top_rows(k)
        rel = Matrix(self.ring, k, [c for c in rel.cols if not is_zero_column(c)])
        mod = FPModule(rel)
        return mod, ModuleHom(mod, self.ambient, self.generators, check=False)

    def __repr__(self):
        return f"Submodule({self.generators.ncols} generators in rank {self.rank})"


def _check_same_ambient(a: Submodule, b: Submodule):
    if a.rank != b.rank:
        raise ValueError("submodules of different ambient ranks")
    if a.ambient is not b.ambient and a.ambient.relations != b.ambient.relations:
        raise ValueError("submodules of different ambient modules")


def submodule_equal(s1: Submodule, s2: Submodule) -> bool:
    _check_same_ambient(s1, s2)
    return s1.issubset(s2) and s2.issubset(s1)


def module_gb(s: Submodule) -> Submodule:
    """Same submodule, generated by the reduced Gröbner basis (relations included)."""
    ring = s.ring
    basis = buchberger(s._total.vectors(), ring)
    cols = [vector_to_column(ring, v, s.rank) for v in basis]
    return Submodule(s.ambient, Matrix(ring, s.rank, cols))


class ModuleHom:
    """Homomorphism source -> target given by a matrix on free covers."""

    def __init__(self, source: FPModule, target: FPModule, matrix: Matrix, check: bool = True):
        if matrix.shape != (target.rank, source.rank):
            raise ValueError(f"matrix shape {matrix.shape} does not fit "
                             f"{source.rank} -> {target.rank} generators")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            for r in source.relations.cols:
                if not target.is_zero_element(matrix.apply(r)):
                    raise CertificateError("matrix does not map relations into relations")

    def __call__(self, col: Sequence[Polynomial]) -> Column:
        return self.matrix.apply(col)

    def compose(self, inner: "ModuleHom") -> "ModuleHom":
        """``self ∘ inner``."""
        if inner.target.rank != self.source.rank:
            raise ValueError("maps do not compose")
        return ModuleHom(inner.source, self.target, self.matrix @ inner.matrix, check=False)

    def equals(self, other: "ModuleHom") -> bool:
        """Equality of maps: every generator has the same image in the target."""
        if self.matrix.shape != other.matrix.shape:
            return False
        return all(
            self.target.is_zero_element(tuple(a - b for a, b in zip(c1, c2)))
            for c1, c2 in zip(self.matrix.cols, other.matrix.cols)
        )

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.matrix.cols)

    def kernel(self) -> Submodule:
        return kernel(self)

    def image(self) -> Submodule:
        return image(self)

    def cokernel(self) -> Tuple[FPModule, "ModuleHom"]:
        return cokernel(self)

    def is_injective(self) -> bool:
        return kernel(self).is_zero()

    def is_surjective(self) -> bool:
        return image(self).is_everything()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def __repr__(self):
        return f"ModuleHom({self.source.rank} -> {self.target.rank})"


def kernel(h: ModuleHom) -> Submodule:
    both = h.matrix.hstack(h.target.relations)
    syz = syzygies(both).top_rows(h.source.rank)
    cols = [c for c in syz.cols if not is_zero_column(c)]
    return Submodule(h.source, Matrix(h.source.ring, h.source.rank, cols))


def image(h: ModuleHom) -> Submodule:
    return Submodule(h.target, h.matrix)


def cokernel(h: ModuleHom) -> Tuple[FPModule, ModuleHom]:
    q = FPModule(h.matrix.hstack(h.target.relations))
    return q, ModuleHom(h.target, q, Matrix.identity(h.target.ring, h.target.rank), check=False)


def free_resolution(n: FPModule, length: int) -> List[Matrix]:
    """Differentials ``[d1, ..., d_length]`` of a free resolution of ``n``; d1 is the presentation."""
    if length < 1:
        raise ValueError("resolution length must be at least 1")
    res = [n.presentation]
    while len(res) < length:
        d = syzygies(res[-1])
        res.append(Matrix(d.ring, d.nrows, [c for c in d.cols if not is_zero_column(c)]))
    return res


def verify_resolution(res: Sequence[Matrix], seed: int = 0) -> bool:
    """Composites vanish and ker(d_i) = im(d_{i+1}), the kernel recomputed from shuffled columns."""
    rng = random.Random(seed)
    for d, e in zip(res, res[1:]):
        if not (d @ e).is_zero():
            return False
        order = list(range(d.ncols))
        rng.shuffle(order)
        inv = {j: i for i, j in enumerate(order)}
        shuffled = syzygies(d.select_columns(order))
        back = Matrix(d.ring, d.ncols,
                      [tuple(c[inv[j]] for j in range(d.ncols)) for c in shuffled.cols])
        free = FPModule.free(d.ring, d.ncols)
        if not submodule_equal(Submodule(free, back), Submodule(free, e)):
            return False
    return True


# ---------------------------------------------------------------------------
# Hom

class HomModule(FPModule):
    """Hom(source, target) presented as a submodule of target^{source.rank}.

    Generator ``i`` is the homomorphism whose matrix, stacked column by
    column, is ``cover.cols[i]``.
    """

    def __init__(self, presentation: Matrix, source: FPModule, target: FPModule,
                 cover: Matrix, power: FPModule):
        super().__init__(presentation)
        self.source = source
        self.target = target
        self.cover = cover
        self.power = power

    def _unstack(self, vec: Sequence[Polynomial]) -> Matrix:
        n0 = self.target.rank
        cols = [tuple(vec[j * n0:(j + 1) * n0]) for j in range(self.source.rank)]
        return Matrix(self.ring, n0, cols)

    def to_hom(self, coords: Sequence[Polynomial]) -> ModuleHom:
        return ModuleHom(self.source, self.target, self._unstack(self.cover.apply(coords)))

    def extract(self, i: int) -> ModuleHom:
        return self.to_hom(self.generator(i))

    def coordinates(self, h) -> Column:
        """Coordinates (on this module's generators) of a hom or of its matrix."""
        m = h.matrix if isinstance(h, ModuleHom) else h
        vec = tuple(p for c in m.cols for p in c)
        y = lift(self.cover.hstack(self.power.relations), vec)
        if y is None:
            raise CertificateError("matrix is not a homomorphism between these modules")
        return y[: self.cover.ncols]


def hom_module(m: FPModule, n: FPModule) -> Tuple[HomModule, Callable[[int], ModuleHom]]:
    """Hom_A(m, n) = ker(Hom(F0, n) -> Hom(F1, n)) with an extractor for its generators."""
    if m.ring != n.ring:
        raise RingMismatchError("modules over different rings")
    ring = m.ring
    m0, m1, n0 = m.rank, m.presentation.ncols, n.rank
    p = m.presentation
    z = ring.zero()
    # vec(Phi) -> vec(Phi @ p), i.e. p^T ⊗ I
    cols = []
    for j in range(m0):
        for a in range(n0):
            col = [z] * (m1 * n0)
            for k in range(m1):
                col[k * n0 + a] = p.entry(j, k)
            cols.append(tuple(col))
    lmat = Matrix(ring, m1 * n0, cols)
    power0 = FPModule.direct_sum(*([n] * m0)) if m0 else FPModule.free(ring, 0)
    power1 = FPModule.direct_sum(*([n] * m1)) if m1 else FPModule.free(ring, 0)
    ker = kernel(ModuleHom(power0, power1, lmat, check=False))
    sub, _ = ker.as_module()
    h = HomModule(sub.presentation, m, n, ker.generators, power0)
    return h, h.extract


# ---------------------------------------------------------------------------
# annihilators and torsion

def annihilator(n: FPModule) -> Ideal:
    """Ann(n) = ∩_i (relations : e_i)."""
    ring = n.ring
    result: Optional[Ideal] = None
    for i in range(n.rank):
        e = Matrix(ring, n.rank, [n.generator(i)])
        syz = syzygies(e.hstack(n.relations))
        colon = Ideal([c[0] for c in syz.cols if not c[0].is_zero()], ring)
        if colon.is_unit():
            continue
        result = colon if result is None else ideal_intersection(result, colon)
        if result.is_zero():
            break
    if result is None:
        return Ideal([ring.one()], ring)
    return Ideal(result.gb, ring)


def tors_alpha(n: FPModule, alpha: Polynomial) -> Tuple[Submodule, ModuleHom]:
    """Tors_α n = ker(α·id_n) and its inclusion into n."""
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    s = kernel(n.scalar(alpha))
    _, incl = s.as_module()
    return s, incl


def dual_map(n: FPModule) -> Tuple[HomModule, ModuleHom]:
    """n -> A^k, v -> (φ_j(v))_j for the generators φ_j of Hom(n, A); its kernel is Tors n."""
    ring = n.ring
    h, _ = hom_module(n, FPModule.free(ring, 1))
    k = h.cover.ncols
    phi = Matrix(ring, k, h.cover.rows) if n.rank else Matrix(ring, k, [])
    return h, ModuleHom(n, FPModule.free(ring, k), phi, check=False)


def torsion_submodule(n: FPModule, cross_check: bool = True) -> Tuple[Submodule, ModuleHom]:
    """Tors n as the kernel of the biduality map n -> n**.

    With ``cross_check`` a nonzero element α of Ann(Tors n) is taken and
    Tors_α n must reproduce the same submodule.
    """
    _, phi = dual_map(n)
    t = kernel(phi)
    tmod, incl = t.as_module()
    if cross_check and not t.is_zero():
        ann = annihilator(tmod)
        if ann.is_zero():
            raise AssertionError("torsion submodule with zero annihilator")
        s, _ = tors_alpha(n, ann.gb[-1])
        if not submodule_equal(s, t):
            raise AssertionError("Tors_α disagrees with the biduality kernel")
    return t, incl


def quotient_by_scalar(n: FPModule, alpha: Polynomial) -> Tuple[FPModule, ModuleHom]:
    """n / αn with its projection."""
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    return cokernel(n.scalar(alpha))


def embed_in_free(n: FPModule) -> Tuple[FPModule, ModuleHom, Polynomial]:
    """Embed a torsion-free module into a free F with α·F ⊆ image.

    The images of the generators in A^k (via the dual map) are scanned in
    order and kept when independent over the fraction field; every
    generator is a combination of the kept ones with denominators, and α
    clears them.
    """
    ring = n.ring
    t, _ = torsion_submodule(n, cross_check=False)
    if not t.is_zero():
        raise HypothesisError("module has torsion; it does not embed in a free module")
    _, phi = dual_map(n)
    gcols = phi.matrix.cols
    chosen: List[int] = []
    for i, g in enumerate(gcols):
        if is_zero_column(g):
            continue
        trial = [gcols[j] for j in chosen + [i]]
        if fraction_field_rank([list(c) for c in trial]) > len(chosen):
            chosen.append(i)
    r = len(chosen)
    if r == 0:
        free = FPModule.free(ring, 0)
        return free, ModuleHom(n, free, Matrix(ring, 0, [()] * n.rank)), ring.one()
    basis = Matrix(ring, phi.matrix.nrows, [gcols[j] for j in chosen])
    rows: List[int] = []
    brows = basis.rows
    for i, row in enumerate(brows):
        if fraction_field_rank([list(brows[j]) for j in rows + [i]]) > len(rows):
            rows.append(i)
        if len(rows) == r:
            break
    square = basis.select_rows(rows)
    d = determinant(square)
    # coordinates by Cramer's rule, as reduced fractions num/den
    fractions = []
    for g in gcols:
        gs = tuple(g[i] for i in rows)
        coords = []
        for j in range(r):
            cols = list(square.cols)
            cols[j] = gs
            num = determinant(Matrix(ring, r, cols))
            if num.is_zero():
                coords.append((num, ring.one()))
                continue
            c = gcd_poly(num, d)
            coords.append((exact_quotient(num, c), exact_quotient(d, c)))
        fractions.append(coords)
    alpha = ring.one()
    for coords in fractions:
        for _, den in coords:
            if not den.is_constant():
                alpha = lcm_poly(alpha, den) if not alpha.is_constant() else den.monic()
    cols = []
    for coords in fractions:
        cols.append(tuple(exact_quotient(alpha * num, den) for num, den in coords))
    free = FPModule.free(ring, r)
    emb = ModuleHom(n, free, Matrix(ring, r, cols))
    return free, emb, alpha


def annihilator_probe(n: FPModule, seed: int = 0, count: int = 16) -> Report:
    """Cross-check Ann(n) membership against direct evaluation f·n = 0.

    Half the probes are random polynomials of degree <= 2; the other half
    are multiples of annihilator generators, so both outcomes get exercised.
    """
    from .corpus import make_rng, random_polynomial
    rng = make_rng(seed, "probe")
    ann = annihilator(n)
    gens = [g for g in ann.gb if not g.is_zero()]
    mismatches = 0
    kills = 0
    for k in range(count):
        f = random_polynomial(n.ring, rng, 2, 3)
        if k % 2 and gens:
            f = f * rng.choice(gens)
        direct = all(n.is_zero_element(unit_column(n.ring, n.rank, i, f)) for i in range(n.rank))
        kills += direct
        mismatches += direct != ann.contains(f)
    return Report(mismatches == 0, {"probes": count, "annihilating": kills, "mismatches": mismatches})


def pruned(n: FPModule) -> FPModule:
    """An isomorphic module with generators eliminated along unit relation entries."""
    m = n.presentation
    ring = n.ring
    while True:
        pivot = next(((j, i) for j, c in enumerate(m.cols) for i, p in enumerate(c)
                      if p.is_constant() and not p.is_zero()), None)
        if pivot is None:
            break
        j, i = pivot
        c = m.cols[j]
        inv = ring.const(1 / c[i].LC)
        cols = []
        for k, r in enumerate(m.cols):
            if k == j:
                continue
            f = r[i] * inv
            new = tuple(a - f * b for a, b in zip(r, c))
            new = new[:i] + new[i + 1:]
            if not is_zero_column(new):
                cols.append(new)
        m = Matrix(ring, m.nrows - 1, cols)
    return FPModule(Matrix(ring, m.nrows, [c for c in m.cols if not is_zero_column(c)]))
