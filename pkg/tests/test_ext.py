import pytest

from conftest import R1, R2
from extorsion import ext
from extorsion.corpus import PROFILES, corpus_module, factor_pool, make_rng, random_polynomial
from extorsion.ext import (adjunction_check, connecting_delta, delta_exactness, delta_mu_compatible,
                           eta_map, ext1_gcd_shortcut, ext1_module, ext1_resolution,
                           functoriality_square, hom_into_quotient, mu_map, reduction_map,
                           shortcut_quotient, stabilization_alpha0, stabilization_check,
                           tors_alpha_ext1_shortcut, verify_hope)
from extorsion.ideal import Ideal, divides
from extorsion.matrix import Matrix
from extorsion.modules import (FPModule, HypothesisError, ModuleHom, Submodule, annihilator, image,
                               pruned, submodule_equal, tors_alpha)


def cyclic(*rels, ring=R2):
    return FPModule.cyclic(ring, *[ring(r) for r in rels])


def is_cyclic_quotient(m, f):
    """m ≅ A/(f): one generator after pruning and annihilator (f)."""
    p = pruned(m)
    if f == "1":
        return p.rank == 0
    return p.rank == 1 and annihilator(p) == Ideal([m.ring(f)])


def hom_from_matrix(h, rows):
    m = Matrix.from_rows(h.ring, [[h.ring(e) for e in r] for r in rows])
    return h.to_hom(h.coordinates(m))


# --- the resolution oracle -------------------------------------------------

def test_ext1_resolution_examples():
    assert ext1_resolution(FPModule.free(R2, 1)).module.is_zero()
    res = ext1_resolution(cyclic("x"), seed=1)
    assert res.witness.is_isomorphism()
    assert is_cyclic_quotient(res.module, "x")
    assert ext1_resolution(cyclic("x", "y")).module.is_zero()


@pytest.mark.parametrize("f", ["x^2 - 1", "x^3", "x^3 + 2*x^2 + x"])
def test_ext1_of_cyclic_one_variable(f):
    assert is_cyclic_quotient(ext1_module(cyclic(f, ring=R1)), str(R1(f).monic()))


def test_ext1_of_direct_sum():
    n = FPModule.direct_sum(cyclic("x"), cyclic("y^2"), FPModule.free(R2, 1))
    assert annihilator(ext1_module(n)) == Ideal([R2("x*y^2")])


@pytest.mark.parametrize("profile", PROFILES)
@pytest.mark.parametrize("index", range(5))
def test_ext1_independent_of_presentation(profile, index):
    n = corpus_module(13, profile, index)
    for seed in (0, 1):
        assert ext1_resolution(n, seed=seed).witness.is_isomorphism()


def test_free_modules_have_zero_ext():
    for index in range(10):
        assert ext1_module(corpus_module(3, "free", index)).is_zero()


# --- δ and the α-torsion shortcut ------------------------------------------

def test_delta_on_cyclic_module():
    n = cyclic("x")
    delta = connecting_delta(n, R2("x"))
    ident = hom_from_matrix(delta.source, [["1"]])
    e = delta.target
    image_of_id = delta(delta.source.coordinates(ident))
    assert Submodule(e, Matrix(R2, e.rank, [image_of_id])).is_everything()


def test_delta_trivial_cases():
    free = FPModule.free(R2, 2)
    delta = connecting_delta(free, R2("x"))
    # Hom(A^2, A/xA) = (A/xA)^2 is not zero; only the Ext side vanishes
    assert pruned(delta.source).rank == 2
    assert annihilator(delta.source) == Ideal([R2("x")])
    assert delta.target.is_zero() and delta.is_zero()
    delta = connecting_delta(cyclic("x"), R2("y"))
    assert delta.source.is_zero() and delta.is_zero()
    assert tors_alpha(ext1_module(cyclic("x")), R2("y"))[0].is_zero()
    assert delta_exactness(cyclic("x"), R2("y")).ok
    with pytest.raises(ValueError):
        connecting_delta(cyclic("x"), R2.zero())


def test_tors_alpha_shortcut_examples():
    n = FPModule.direct_sum(cyclic("x"), FPModule.free(R2, 1))
    res = tors_alpha_ext1_shortcut(n, R2("x"))
    assert is_cyclic_quotient(res.module, "x")
    assert annihilator(hom_into_quotient(n, R2("x"))) == Ideal([R2("x")])
    assert not image(reduction_map(n, R2("x"))).is_zero()
    assert tors_alpha_ext1_shortcut(FPModule.free(R2, 2), R2("x*y")).module.is_zero()
    res = tors_alpha_ext1_shortcut(cyclic("x^2", ring=R1), R1("x"))
    assert is_cyclic_quotient(res.module, "x")
    assert hom_into_quotient(cyclic("x^2", ring=R1), R1("x")).rank >= 1


@pytest.mark.parametrize("index", range(12))
def test_delta_exactness_on_mixed_corpus(index):
    n = corpus_module(21, "mixed", index)
    for alpha in factor_pool(n.ring)[:3]:
        report = delta_exactness(n, alpha)
        assert report.ok, report.facts
        assert tors_alpha_ext1_shortcut(n, alpha).witness.is_isomorphism()


def test_image_of_delta_is_not_everything_for_smaller_alpha():
    # negative control: im δ_x is Tors_x, a proper part of Ext^1(A/(x^2)) ≅ A/(x^2)
    n = cyclic("x^2")
    e = ext1_module(n)
    full = tors_alpha(e, R2("x^2"))[0]
    assert full.is_everything()
    assert not submodule_equal(image(connecting_delta(n, R2("x"))), full)


# --- the gcd shortcut -------------------------------------------------------

def test_gcd_shortcut_examples():
    a, res = ext1_gcd_shortcut(cyclic("x^2"))
    assert a == R2("x^2") and is_cyclic_quotient(res.module, "x^2")
    assert res.witness.is_injective() and res.witness.is_surjective()
    a, res = ext1_gcd_shortcut(cyclic("x", "y"))
    assert a == R2.one() and res.module.is_zero()
    a, res = ext1_gcd_shortcut(FPModule.free(R2, 0))
    assert a == R2.one() and res.module.is_zero()


def test_gcd_shortcut_rejects_non_torsion():
    with pytest.raises(HypothesisError):
        ext1_gcd_shortcut(FPModule.direct_sum(cyclic("x"), FPModule.free(R2, 1)))


@pytest.mark.parametrize("index", range(12))
def test_gcd_shortcut_on_torsion_corpus(index):
    a, res = ext1_gcd_shortcut(corpus_module(17, "torsion", index))
    assert res.witness.is_isomorphism()


# --- μ, η and the functoriality square ---------------------------------------

def test_mu_examples():
    n = cyclic("x")
    mu = mu_map(n, R2("x"), R2.one())
    assert mu.equals(mu.source.identity())
    mu = mu_map(n, R2("x"), R2("x"))
    ident = hom_from_matrix(mu.source, [["1"]])
    times_x = mu.target.to_hom(mu(mu.source.coordinates(ident)))
    assert times_x.equals(ModuleHom(n, cyclic("x^2"), Matrix.from_rows(R2, [[R2("x")]])))
    assert not times_x.is_zero()
    mu = mu_map(FPModule.free(R2, 0), R2("x"), R2("y"))
    assert mu.source.is_zero() and mu.target.is_zero()
    # free of rank 1: A/xA -> A/xyA, injective but not zero
    mu = mu_map(FPModule.free(R2, 1), R2("x"), R2("y"))
    assert mu.is_injective() and not mu.is_zero()


def test_eta_examples():
    n = FPModule.direct_sum(cyclic("x"), FPModule.free(R2, 1))
    assert eta_map(n, R2("x"), R2.one()).is_isomorphism()
    assert eta_map(n, R2("x"), R2("y")).is_injective()
    t = cyclic("x^2", "x*y")
    eta = eta_map(t, R2("x"), R2("y"))
    assert eta.matrix == mu_map(t, R2("x"), R2("y")).matrix
    with pytest.raises(ValueError):
        mu_map(t, R2("x"), R2.zero())


@pytest.mark.parametrize("index", range(10))
def test_functoriality_and_compatibility(index):
    n = corpus_module(31, "mixed", index)
    rng = make_rng(31, "square", index)
    alpha, gamma = rng.choice(factor_pool(n.ring)), rng.choice(factor_pool(n.ring))
    assert mu_map(n, alpha, gamma).is_injective()
    assert eta_map(n, alpha, gamma).is_injective()
    assert delta_mu_compatible(n, alpha, gamma)
    assert functoriality_square(n, alpha, gamma).ok


# --- the hope identity -------------------------------------------------------

def test_hope_examples():
    n = cyclic("x^2")
    report = verify_hope(n, R2("x^3*y"))
    assert report.ok and report.facts["gcd"] == "x^2"
    report = verify_hope(n, R2("y"))
    assert report.ok and report.facts["gcd"] == "1"
    assert hom_into_quotient(n, R2("y")).is_zero()
    assert verify_hope(n, R2("x^2")).ok
    with pytest.raises(HypothesisError):
        verify_hope(FPModule.free(R2, 1), R2("x"))


def test_hope_detects_a_wrong_gcd(monkeypatch):
    monkeypatch.setattr(ext, "gcd_poly", lambda a, b: a.ring.one())
    assert not verify_hope(cyclic("x^2"), R2("x^3*y")).ok


# --- stabilization and adjunction ---------------------------------------------

def test_stabilization_examples():
    assert stabilization_alpha0(cyclic("x")).alpha0 == R2("x")
    assert stabilization_alpha0(FPModule.free(R2, 2)).alpha0 == R2.one()
    w = stabilization_alpha0(FPModule.direct_sum(cyclic("x"), cyclic("y^2")))
    assert divides(R2("x*y^2"), w.alpha0)
    assert not w.annihilator.is_zero()


@pytest.mark.parametrize("profile", PROFILES)
@pytest.mark.parametrize("index", range(5))
def test_stabilization_on_corpus(profile, index):
    n = corpus_module(41, profile, index)
    w = stabilization_alpha0(n)
    assert not w.alpha0.is_zero()
    assert tors_alpha(w.ext, w.alpha0)[0].is_everything()
    rng = make_rng(41, "f", index)
    for _ in range(3):
        assert stabilization_check(n, w.alpha0, random_polynomial(n.ring, rng, 2, 3))


def test_adjunction_examples():
    assert adjunction_check(cyclic("x^2"), R2("x^2")).ok
    assert adjunction_check(FPModule.free(R2, 1), R2("x")).ok
    assert adjunction_check(FPModule.free(R2, 0), R2("x")).ok
    assert is_cyclic_quotient(hom_into_quotient(FPModule.free(R2, 1), R2("x")), "x")
    with pytest.raises(ValueError):
        adjunction_check(cyclic("x"), R2.zero())


@pytest.mark.parametrize("index", range(9))
def test_adjunction_on_corpus(index):
    n = corpus_module(51, PROFILES[index % 3], index)
    rng = make_rng(51, "a", index)
    assert adjunction_check(n, rng.choice(factor_pool(n.ring)) * rng.choice(factor_pool(n.ring))).ok


def test_shortcut_quotient_of_torsion_module_has_no_denominator():
    n = cyclic("x^2", "x*y")
    alpha = R2("x")
    assert reduction_map(n, alpha).source.is_zero()
    assert shortcut_quotient(n, alpha).rank == hom_into_quotient(n, alpha).rank
