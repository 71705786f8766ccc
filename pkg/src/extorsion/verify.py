"""Seeded verification suites.

A case is a pure function of ``(suite, seed, index)`` and yields one record
per assertion.  Cases run independently (optionally in worker processes)
and records are emitted sorted by case id, so output does not depend on
completion order.  ``millis`` is only filled in when timings are
requested; otherwise records are byte-identical across runs.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, List, Optional, Tuple

from .corpus import (PROFILES, corpus_module, factor_pool, make_rng, random_factored,
                     random_polynomial)
from .ext import (adjunction_check, delta_exactness, delta_mu_compatible, eta_map,
                  ext1_gcd_shortcut, ext1_module, ext1_resolution, functoriality_square,
                  gcd_of_annihilator, mu_map, stabilization_alpha0, stabilization_check,
                  tors_alpha_ext1_shortcut, verify_hope)
from .ideal import divides, exact_quotient, gcd_poly
from .modules import FPModule, annihilator, annihilator_probe
from .report import Record
from .ring import Polynomial

SUITES = ("ext1na", "hope", "gcd", "stab", "adjunction")
ALPHAS_PER_CASE = 3
STAB_FACTORS = 5

# a check returns True/False or an object with an ``ok`` attribute
Check = Tuple[str, Callable[[], object]]


def _status(value) -> bool:
    return bool(getattr(value, "ok", value))


def _pick_alphas(n: FPModule, rng, count: int) -> List[Polynomial]:
    pool = factor_pool(n.ring)
    picks = rng.sample(pool, count - 1)
    # one composite α so divisibility chains get exercised
    picks.append(rng.choice(pool) * rng.choice(pool))
    return picks


def _ext1na_checks(seed: int, i: int) -> Iterator[Check]:
    n = corpus_module(seed, "mixed", i)
    rng = make_rng(seed, "ext1na", i)
    yield "ext1-resolution", lambda: ext1_resolution(n, seed=seed + i).witness.is_isomorphism()
    alphas = _pick_alphas(n, rng, ALPHAS_PER_CASE)
    for alpha in alphas:
        yield "delta-exactness", lambda a=alpha: delta_exactness(n, a)
        yield "tors-alpha-shortcut", lambda a=alpha: tors_alpha_ext1_shortcut(n, a).witness.is_isomorphism()
    alpha, gamma = alphas[0], rng.choice(factor_pool(n.ring))
    yield "mu-eta-injective", lambda: (mu_map(n, alpha, gamma).is_injective()
                                       and eta_map(n, alpha, gamma).is_injective())
    yield "delta-mu-compatible", lambda: delta_mu_compatible(n, alpha, gamma)
    yield "functoriality", lambda: functoriality_square(n, alpha, gamma)


def _gcd_checks(seed: int, i: int) -> Iterator[Check]:
    n = corpus_module(seed, "torsion", i)

    def check():
        a, res = ext1_gcd_shortcut(n)
        return res.witness.is_injective() and res.witness.is_surjective()
    yield "gcd-shortcut", check


HOPE_KINDS = ("coprime", "equal", "proper")


def _hope_kind(a: Polynomial, g: Polynomial) -> Optional[str]:
    if g.is_constant():
        return "coprime"
    if g == a.monic():
        return "equal"
    return "proper"


def hope_pair(seed: int, i: int) -> Tuple[FPModule, Polynomial, str]:
    """A torsion module and β with gcd(a, β) of the kind ``HOPE_KINDS[i % 3]``."""
    want = HOPE_KINDS[i % 3]
    for attempt in range(200):
        n = corpus_module(seed, "torsion", i * 1000 + attempt)
        rng = make_rng(seed, "hope", i, attempt)
        a = gcd_of_annihilator(n)
        pool = factor_pool(n.ring)
        if want == "coprime":
            beta = rng.choice([p for p in pool if not divides(p, a)] or [n.ring.one()])
        elif want == "equal":
            beta = a * rng.choice(pool)
        else:
            proper = [p for p in pool if divides(p, a) and not exact_quotient(a, p).is_constant()]
            if not proper:
                continue
            d = rng.choice(proper)
            rest = exact_quotient(a, d)
            beta = d * rng.choice([p for p in pool if not divides(p, rest)] or [n.ring.one()])
        beta = beta * random_polynomial(n.ring, rng, 0, 1)
        if _hope_kind(a, gcd_poly(a, beta)) == want:
            return n, beta, want
    raise RuntimeError(f"no hope pair of kind {want} found")


def _hope_checks(seed: int, i: int) -> Iterator[Check]:
    pair = {}

    def build():
        pair["v"] = hope_pair(seed, i)
        return verify_hope(pair["v"][0], pair["v"][1])
    yield f"hope/{HOPE_KINDS[i % 3]}", build


def _stab_checks(seed: int, i: int) -> Iterator[Check]:
    profile = PROFILES[i % len(PROFILES)]
    n = corpus_module(seed, profile, i)
    rng = make_rng(seed, "stab", i)
    state = {}

    def witness():
        state["w"] = stabilization_alpha0(n)
        return not state["w"].alpha0.is_zero()
    yield "ext1-annihilator-nonzero", lambda: not annihilator(ext1_module(n)).is_zero()
    yield "stabilization", witness

    def colimit():
        alpha0 = state["w"].alpha0 if "w" in state else stabilization_alpha0(n).alpha0
        return all(stabilization_check(n, alpha0, random_polynomial(n.ring, rng, 2, 3))
                   for _ in range(STAB_FACTORS))
    yield "stabilization-colimit", colimit
    yield "annihilator-probe", lambda: annihilator_probe(ext1_module(n), seed=seed + i)


def _adjunction_checks(seed: int, i: int) -> Iterator[Check]:
    profile = PROFILES[i % len(PROFILES)]
    n = corpus_module(seed, profile, i)
    rng = make_rng(seed, "adjunction", i)
    a = random_factored(n.ring, rng, 2)
    yield "adjunction", lambda: adjunction_check(n, a)


_CHECKS = {"ext1na": _ext1na_checks, "hope": _hope_checks, "gcd": _gcd_checks,
           "stab": _stab_checks, "adjunction": _adjunction_checks}


def case_id(suite: str, index: int) -> str:
    return f"{suite}-{index:04d}"


def run_case(suite: str, seed: int, index: int, timings: bool = False,
             budget_ms: Optional[int] = None) -> List[Record]:
    """All records of one case.  A check that raises is a FAIL."""
    cid = case_id(suite, index)
    records = []
    checks = _CHECKS[suite](seed, index)
    while True:
        start = time.perf_counter()
        try:
            ref, fn = next(checks)
        except StopIteration:
            break
        except Exception:
            records.append(Record(cid, "case-setup", "FAIL", None, seed))
            break
        try:
            ok = _status(fn())
        except Exception:
            ok = False
        ms = int(round((time.perf_counter() - start) * 1000))
        if budget_ms is not None and ms > budget_ms:
            ok = False
        records.append(Record(cid, ref, "PASS" if ok else "FAIL", ms if timings else None, seed))
    return records


def _run_case_args(args) -> List[Record]:
    return run_case(*args)


def run_suite(suite: str, cases: int, seed: int, jobs: int = 1, timings: bool = False,
              budget_ms: Optional[int] = None) -> List[Record]:
    """Records of ``cases`` cases of ``suite`` (or every suite for ``all``), in case-id order."""
    if cases < 1:
        raise ValueError("cases must be positive")
    suites = SUITES if suite == "all" else (suite,)
    for s in suites:
        if s not in _CHECKS:
            raise ValueError(f"unknown suite {s!r}")
    work = [(s, seed, i, timings, budget_ms) for s in suites for i in range(cases)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case_args, work))
    else:
        results = [_run_case_args(w) for w in work]
    order = sorted(range(len(work)), key=lambda k: case_id(work[k][0], work[k][2]))
    return [r for k in order for r in results[k]]
