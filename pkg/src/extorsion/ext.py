"""Ext^1(N, A) and its torsion, computed two ways.

The oracle computes Ext^1 from a free resolution.  The shortcuts compute
it from Hom modules into A/αA:

    Tors_α Ext^1(N, A) ≅ Hom(N, A/αA) / (Hom(N, A)/α Hom(N, A))

via the connecting map δ of 0 -> A -> A -> A/αA -> 0, and, for torsion N
with a = gcd(Ann N), Ext^1(N, A) ≅ Hom(N, A/aA).  Each comparison is an
explicit ModuleHom certified injective and surjective.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

from .ideal import Ideal, exact_quotient, gcd_of_ideal, gcd_poly
from .matrix import Matrix, is_zero_column
from .modules import (FPModule, HomModule, HypothesisError, ModuleHom, Submodule,
                      annihilator, cokernel, free_resolution, hom_module, image, kernel,
                      lift, quotient_by_scalar, submodule_equal, syzygies, tors_alpha,
                      torsion_submodule)
from .report import Report
from .ring import Polynomial


def _memo(n: FPModule, key, compute):
    store = n.__dict__.setdefault("_memo", {})
    if key not in store:
        store[key] = compute()
    return store[key]


def _nonzero(*polys: Polynomial):
    for p in polys:
        if p.is_zero():
            raise ValueError("expected a nonzero element")


@dataclass
class ExtResult:
    module: FPModule
    method: str
    witness: Optional[ModuleHom] = None
    alpha: Optional[Polynomial] = None


@dataclass
class StabilizationWitness:
    alpha0: Polynomial
    annihilator: Ideal
    ext: "Ext1Module"


class Ext1Module(FPModule):
    """ker(d2^T) / im(d1^T), generated by the cocycles in ``cocycles``."""

    def __init__(self, presentation: Matrix, source: FPModule, cocycles: Matrix):
        super().__init__(presentation)
        self.source = source
        self.cocycles = cocycles

    def class_of(self, cocycle) -> Tuple:
        """Coordinates of a 1-cocycle (a functional on the relations of N)."""
        y = lift(self.cocycles, tuple(cocycle))
        if y is None:
            raise ValueError("not a cocycle")
        return y


def _ext1_from_presentation(n: FPModule) -> Ext1Module:
    ring = n.ring
    d1 = n.presentation
    d2 = free_resolution(n, 2)[1]
    cocycles = syzygies(d2.T)
    cocycles = Matrix(ring, d1.ncols, [c for c in cocycles.cols if not is_zero_column(c)])
    k = cocycles.ncols
    rel = syzygies(cocycles.hstack(d1.T)).top_rows(k)
    rel = Matrix(ring, k, [c for c in rel.cols if not is_zero_column(c)])
    return Ext1Module(rel, n, cocycles)


def ext1_module(n: FPModule) -> Ext1Module:
    return _memo(n, "ext1", lambda: _ext1_from_presentation(n))


def _shuffled(n: FPModule, rng: random.Random):
    p = n.presentation
    rows = list(range(p.nrows))
    cols = list(range(p.ncols))
    rng.shuffle(rows)
    rng.shuffle(cols)
    return FPModule(p.select_rows(rows).select_columns(cols)), cols


def ext1_resolution(n: FPModule, seed: int = 0, check: bool = True) -> ExtResult:
    """Ext^1(n, A) from a length-2 resolution.

    With ``check`` the computation is repeated on a presentation with
    shuffled generators and relations; the comparison map between the two
    results is the witness and is certified bijective.
    """
    e = ext1_module(n)
    if not check:
        return ExtResult(e, "resolution")
    other, colperm = _shuffled(n, random.Random(seed))
    e2 = _ext1_from_presentation(other)
    # relation k of the shuffled presentation is relation colperm[k] of n
    images = []
    for c in e.cocycles.cols:
        images.append(e2.class_of(tuple(c[colperm[k]] for k in range(len(colperm)))))
    w = ModuleHom(e, e2, Matrix(n.ring, e2.rank, images))
    if not w.is_isomorphism():
        raise AssertionError("Ext^1 depends on the resolution")
    return ExtResult(e, "resolution", witness=w)


def hom_into_quotient(n: FPModule, alpha: Polynomial) -> HomModule:
    """Hom(n, A/αA)."""
    return _memo(n, ("hom", alpha),
                 lambda: hom_module(n, FPModule.cyclic(n.ring, alpha))[0])


def hom_into_ring(n: FPModule) -> HomModule:
    return _memo(n, "hom", lambda: hom_module(n, FPModule.free(n.ring, 1))[0])


def reduction_map(n: FPModule, alpha: Polynomial) -> ModuleHom:
    """Hom(n, A) -> Hom(n, A/αA), reduction modulo α."""
    def build():
        h0 = hom_into_ring(n)
        h = hom_into_quotient(n, alpha)
        cols = [h.coordinates(h0.extract(i).matrix) for i in range(h0.rank)]
        return ModuleHom(h0, h, Matrix(n.ring, h.rank, cols))
    return _memo(n, ("red", alpha), build)


def connecting_delta(n: FPModule, alpha: Polynomial) -> ModuleHom:
    """δ: Hom(n, A/αA) -> Ext^1(n, A).

    A map n -> A/αA lifts to a functional h on the free cover; h vanishes
    on relations modulo α, and (h ∘ d1)/α is the cocycle.
    """
    _nonzero(alpha)

    def build():
        h = hom_into_quotient(n, alpha)
        e = ext1_module(n)
        d1 = n.presentation
        cols = []
        for hv in h.cover.cols:
            c = tuple(exact_quotient(p, alpha) for p in d1.T.apply(hv))
            cols.append(e.class_of(c))
        return ModuleHom(h, e, Matrix(n.ring, e.rank, cols))
    return _memo(n, ("delta", alpha), build)


def delta_exactness(n: FPModule, alpha: Polynomial) -> Report:
    """ker δ = image of reduction, im δ = Tors_α Ext^1 (exact submodule equalities)."""
    delta = connecting_delta(n, alpha)
    red = reduction_map(n, alpha)
    tors, _ = tors_alpha(delta.target, alpha)
    k_ok = submodule_equal(kernel(delta), image(red))
    i_ok = submodule_equal(image(delta), tors)
    return Report(k_ok and i_ok, {"kernel_equals_reduction": k_ok, "image_equals_tors": i_ok,
                                  "hom_generators": delta.source.rank, "ext_generators": delta.target.rank})


def _tors_ext(n: FPModule, alpha: Polynomial):
    def build():
        s, incl = tors_alpha(ext1_module(n), alpha)
        return s, incl.source
    return _memo(n, ("torsext", alpha), build)


def shortcut_quotient(n: FPModule, alpha: Polynomial) -> FPModule:
    """Hom(n, A/αA) / (Hom(n, A)/α Hom(n, A))."""
    return _memo(n, ("quot", alpha), lambda: cokernel(reduction_map(n, alpha))[0])


def shortcut_witness(n: FPModule, alpha: Polynomial) -> ModuleHom:
    """The map induced by δ from the shortcut quotient onto Tors_α Ext^1."""
    def build():
        delta = connecting_delta(n, alpha)
        s, tmod = _tors_ext(n, alpha)
        q = shortcut_quotient(n, alpha)
        cols = []
        for c in delta.matrix.cols:
            y = s.coordinates(c)
            if y is None:
                raise AssertionError("δ leaves Tors_α Ext^1")
            cols.append(y)
        return ModuleHom(q, tmod, Matrix(n.ring, tmod.rank, cols))
    return _memo(n, ("witness", alpha), build)


def tors_alpha_ext1_shortcut(n: FPModule, alpha: Polynomial) -> ExtResult:
    _nonzero(alpha)
    w = shortcut_witness(n, alpha)
    if not w.is_isomorphism():
        raise AssertionError("shortcut quotient is not isomorphic to Tors_α Ext^1")
    return ExtResult(w.source, "shortcut-alpha", witness=w, alpha=alpha)


def is_torsion(n: FPModule) -> bool:
    t, _ = torsion_submodule(n, cross_check=False)
    return t.is_everything()


def gcd_of_annihilator(n: FPModule) -> Polynomial:
    def build():
        ann = annihilator(n)
        if ann.is_zero():
            raise HypothesisError("module is not torsion: zero annihilator")
        return gcd_of_ideal(ann)
    return _memo(n, "gcdann", build)


def ext1_gcd_shortcut(n: FPModule) -> Tuple[Polynomial, ExtResult]:
    """a = gcd(Ann n) and Hom(n, A/aA) ≅ Ext^1(n, A) for torsion n, via δ_a."""
    if not is_torsion(n):
        raise HypothesisError("ext1_gcd_shortcut needs a torsion module")
    a = gcd_of_annihilator(n)
    delta = connecting_delta(n, a)
    if not delta.is_isomorphism():
        raise AssertionError("δ_a is not bijective")
    return a, ExtResult(delta.source, "shortcut-gcd", witness=delta, alpha=a)


def mu_map(n: FPModule, alpha: Polynomial, gamma: Polynomial, certify: bool = True) -> ModuleHom:
    """μ_γ: Hom(n, A/αA) -> Hom(n, A/αγA), postcomposition with multiplication by γ."""
    _nonzero(alpha, gamma)

    def build():
        src = hom_into_quotient(n, alpha)
        dst = hom_into_quotient(n, alpha * gamma)
        cols = [dst.coordinates(src.extract(i).matrix.scale(gamma)) for i in range(src.rank)]
        return ModuleHom(src, dst, Matrix(n.ring, dst.rank, cols))
    mu = _memo(n, ("mu", alpha, gamma), build)
    if certify and not mu.is_injective():
        raise AssertionError("μ_γ is not injective")
    return mu


def eta_map(n: FPModule, alpha: Polynomial, gamma: Polynomial, certify: bool = True) -> ModuleHom:
    """η_γ: the map μ_γ induces on the shortcut quotients."""
    mu = mu_map(n, alpha, gamma, certify=False)
    eta = ModuleHom(shortcut_quotient(n, alpha), shortcut_quotient(n, alpha * gamma), mu.matrix)
    if certify and not eta.is_injective():
        raise AssertionError("η_γ is not injective")
    return eta


def delta_mu_compatible(n: FPModule, alpha: Polynomial, gamma: Polynomial) -> bool:
    """δ_{αγ} ∘ μ_γ = δ_α."""
    mu = mu_map(n, alpha, gamma, certify=False)
    return connecting_delta(n, alpha * gamma).compose(mu).equals(connecting_delta(n, alpha))


def functoriality_square(n: FPModule, alpha: Polynomial, gamma: Polynomial) -> Report:
    """ι ∘ w_α = w_{αγ} ∘ η_γ, with ι: Tors_α Ext^1 ⊆ Tors_{αγ} Ext^1."""
    beta = alpha * gamma
    w_a = shortcut_witness(n, alpha)
    w_b = shortcut_witness(n, beta)
    eta = eta_map(n, alpha, gamma, certify=False)
    s_a, t_a = _tors_ext(n, alpha)
    s_b, t_b = _tors_ext(n, beta)
    cols = []
    for c in s_a.generators.cols:
        y = s_b.coordinates(c)
        if y is None:
            return Report(False, {"inclusion": False})
        cols.append(y)
    iota = ModuleHom(t_a, t_b, Matrix(n.ring, t_b.rank, cols))
    ok = iota.compose(w_a).equals(w_b.compose(eta))
    return Report(ok, {"inclusion": True, "square_commutes": ok})


def verify_hope(n: FPModule, beta: Polynomial) -> Report:
    """Hom(n, A/βA) = μ(Hom(n, A/(a,β)A)) for torsion n, a = gcd(Ann n)."""
    _nonzero(beta)
    if not is_torsion(n):
        raise HypothesisError("verify_hope needs a torsion module")
    a = gcd_of_annihilator(n)
    g = gcd_poly(a, beta)
    mu = mu_map(n, g, exact_quotient(beta, g), certify=False)
    full = Submodule(mu.target, Matrix.identity(n.ring, mu.target.rank))
    ok = submodule_equal(image(mu), full)
    return Report(ok, {"a": str(a), "gcd": str(g), "hom_small_generators": mu.source.rank,
                       "hom_generators": mu.target.rank})


def stabilization_alpha0(n: FPModule) -> StabilizationWitness:
    """A nonzero α0 ∈ Ann(Ext^1(n, A)), so that Tors_{α0} Ext^1 = Ext^1.

    The gcd of the annihilator is used when it lies in the annihilator
    (the annihilator is then principal); otherwise the product of the
    reduced Gröbner basis elements.
    """
    e = ext1_module(n)
    ann = annihilator(e)
    if ann.is_zero():
        raise AssertionError("Ext^1 of a finitely presented module with zero annihilator")
    g = gcd_of_ideal(ann)
    if not g.is_constant() and ann.contains(g):
        alpha0 = g
    else:
        alpha0 = n.ring.one()
        for f in ann.gb:
            alpha0 = alpha0 * f
        alpha0 = alpha0.monic()
    s, _ = tors_alpha(e, alpha0)
    if not s.is_everything():
        raise AssertionError("Tors_α0 Ext^1 is not all of Ext^1")
    return StabilizationWitness(alpha0, ann, e)


def stabilization_check(n: FPModule, alpha0: Polynomial, f: Polynomial) -> bool:
    """Tors_{α0·f} Ext^1 = Tors_{α0} Ext^1."""
    e = ext1_module(n)
    s1, _ = tors_alpha(e, alpha0)
    s2, _ = tors_alpha(e, alpha0 * f)
    return submodule_equal(s1, s2)


def adjunction_check(n: FPModule, a: Polynomial) -> Report:
    """Hom_{A/a}(n/an, A/a) -> Hom_A(n, A/a), φ ↦ φ ∘ projection, certified bijective.

    Both modules are killed by a, so A/a-linear and A-linear maps coincide
    and the left side is computed as an A-module Hom.
    """
    _nonzero(a)
    nbar, proj = quotient_by_scalar(n, a)
    h_bar = hom_module(nbar, FPModule.cyclic(n.ring, a))[0]
    h = hom_into_quotient(n, a)
    cols = [h.coordinates(h_bar.extract(i).compose(proj).matrix) for i in range(h_bar.rank)]
    restrict = ModuleHom(h_bar, h, Matrix(n.ring, h.rank, cols))
    inj = restrict.is_injective()
    surj = restrict.is_surjective()
    return Report(inj and surj, {"injective": inj, "surjective": surj,
                                 "generators": (h_bar.rank, h.rank)})
