import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from extorsion.ring import QQ, Polynomial, parse_ring

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

R1 = parse_ring("ring QQ[x] order grevlex")
R2 = parse_ring("ring QQ[x,y] order grevlex")
R3 = parse_ring("ring QQ[x,y,z] order grevlex")
R2LEX = parse_ring("ring QQ[x,y] order lex")


def polynomials(ring, max_degree=2, max_terms=4, coeff=5, nonzero=False, rational=False):
    nv = ring.nvars
    exps = st.lists(st.integers(0, max_degree), min_size=nv, max_size=nv).filter(
        lambda e: sum(e) <= max_degree).map(tuple)
    ints = st.integers(-coeff, coeff).filter(bool)
    coeffs = st.builds(QQ, ints, st.integers(1, 4)) if rational else ints.map(QQ)
    terms = st.dictionaries(exps, coeffs, max_size=max_terms)
    polys = terms.map(lambda t: Polynomial(ring, t))
    return polys.filter(bool) if nonzero else polys


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"))


def sympy_symbols(ring):
    return sympy.symbols(",".join(ring.variables), seq=True)


def from_sympy(expr, ring):
    poly = sympy.Poly(expr, *sympy_symbols(ring))
    terms = {tuple(m): QQ(int(c.p), int(c.q)) for m, c in poly.terms() if c}
    return Polynomial(ring, terms)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
