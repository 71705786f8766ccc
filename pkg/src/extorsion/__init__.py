"""Exact module computations over QQ[x1..xn]: Gröbner bases, syzygies, Hom,
torsion, Ext^1 and its Hom-based shortcuts, plus Donaldson lattice arithmetic."""

from .ring import MonomialOrder, ParseError, Polynomial, Ring, RingMismatchError, parse_polynomial, parse_ring
from .ideal import Ideal, divide_multi, gcd_of_ideal, gcd_poly, groebner, ideal_intersection, ideal_membership
from .matrix import Matrix
from .modules import (CertificateError, FPModule, HypothesisError, ModuleHom, Submodule, annihilator,
                      cokernel, embed_in_free, free_resolution, hom_module, image, kernel,
                      submodule_equal, syzygies, tors_alpha, torsion_submodule)
from .ext import (ExtResult, StabilizationWitness, adjunction_check, connecting_delta, eta_map,
                  ext1_gcd_shortcut, ext1_resolution, mu_map, stabilization_alpha0,
                  tors_alpha_ext1_shortcut, verify_hope)
from .corpus import corpus_generate

__version__ = "0.1.0"

__all__ = [
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "Ring",
    "RingMismatchError",
    "parse_polynomial",
    "parse_ring",
    "Ideal",
    "divide_multi",
    "gcd_of_ideal",
    "gcd_poly",
    "groebner",
    "ideal_intersection",
    "ideal_membership",
    "Matrix",
    "CertificateError",
    "FPModule",
    "HypothesisError",
    "ModuleHom",
    "Submodule",
    "annihilator",
    "cokernel",
    "embed_in_free",
    "free_resolution",
    "hom_module",
    "image",
    "kernel",
    "submodule_equal",
    "syzygies",
    "tors_alpha",
    "torsion_submodule",
    "ExtResult",
    "StabilizationWitness",
    "adjunction_check",
    "connecting_delta",
    "eta_map",
    "ext1_gcd_shortcut",
    "ext1_resolution",
    "mu_map",
    "stabilization_alpha0",
    "tors_alpha_ext1_shortcut",
    "verify_hope",
    "corpus_generate",
]
