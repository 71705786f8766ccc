import pytest

from extorsion.corpus import PROFILES, RING_X, corpus_generate, corpus_module
from extorsion.ext import ext1_module, is_torsion
from extorsion.textio import format_matrix_file


def test_corpus_is_deterministic():
    for profile in PROFILES:
        a = [format_matrix_file(m.presentation) for m in corpus_generate(1, 8, profile)]
        b = [format_matrix_file(m.presentation) for m in corpus_generate(1, 8, profile)]
        assert a == b
    one = corpus_generate(1, 1, "torsion")[0]
    assert format_matrix_file(one.presentation) == format_matrix_file(corpus_module(1, "torsion", 0).presentation)


def test_corpus_arguments():
    with pytest.raises(ValueError):
        corpus_generate(1, 0)
    with pytest.raises(ValueError):
        corpus_generate(1, 3, "other")
    assert all(m.ring == RING_X for m in corpus_generate(2, 5, "mixed", RING_X))


@pytest.mark.parametrize("profile", PROFILES)
def test_corpus_size_caps(profile):
    for m in corpus_generate(5, 40, profile):
        p = m.presentation
        assert p.nrows <= 3 and p.ncols <= 5
        assert all(e.degree() <= 3 for c in p.cols for e in c)


def test_profiles_have_their_shape():
    torsion = corpus_generate(6, 20, "torsion")
    assert all(is_torsion(m) for m in torsion)
    mixed = corpus_generate(6, 20, "mixed")
    assert not any(is_torsion(m) for m in mixed)
    assert sum(not ext1_module(m).is_zero() for m in mixed) >= 10
    assert all(ext1_module(m).is_zero() for m in corpus_generate(6, 20, "free"))
