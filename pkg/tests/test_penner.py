from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl2stretch.errors import BlockShapeViolation, NotPrimitive
from gl2stretch.exactnum import IntPoly, QuadSurd, RealInterval, surd_normalize
from gl2stretch.gl2core import Mat2, word_matrix
from gl2stretch.penner import (
    I5,
    INTERSECTION,
    MAT_A,
    MAT_B,
    MAT_C,
    MAT_E,
    PennerWord,
    Suffix,
    abelianize,
    block_compose,
    block_decompose,
    build_word,
    charpoly_cw,
    charpoly_cwe,
    charpoly_direct,
    glide_radicals,
    handlebody_stretch,
    hyperbolic_eigenvalues,
    is_primitive,
    lambda_glide,
    lambda_hyperbolic,
    perron_power_iteration,
    rho_letter,
    rho_word,
    w5_of,
)
from gl2stretch.standardform import Kind, StandardForm, assemble
from gl2stretch.verify import (
    check_abelianization,
    check_charpolys,
    check_eigen_order,
    check_perron,
    forms_up_to_sum,
)

HYP, GLIDE = Kind.HYPERBOLIC, Kind.GLIDE
X = IntPoly.x()


def lin(c0):
    return X - c0


# -- constants --------------------------------------------------------------


def test_intersection_matrix():
    a = INTERSECTION
    for i in range(5):
        assert a[i, i] == 0
        for j in range(5):
            assert a[i, j] == a[j, i] >= 0
    assert (a[0, 1], a[0, 4], a[2, 3], a[3, 4]) == (1, 2, 1, 2)


def test_rho_letters_reproduce_constants():
    assert rho_letter(1) @ rho_letter(3) == MAT_A
    assert rho_letter(2) @ rho_letter(4) == MAT_B
    assert rho_letter(5) == MAT_C


def test_swap_commutation_table():
    assert MAT_E @ MAT_E == I5
    assert MAT_E @ MAT_A @ MAT_E == MAT_B
    assert MAT_E @ MAT_B @ MAT_E == MAT_A
    assert MAT_E @ MAT_C @ MAT_E == MAT_C


# -- words ------------------------------------------------------------------


def test_build_word_examples():
    w = build_word(StandardForm(1, (1, 1), HYP))
    assert w == PennerWord((5, 1, 3, 2, 4), Suffix.NONE)
    assert build_word(StandardForm(-1, (1, 1), HYP)) == PennerWord((5, 1, 3, 2, 4), Suffix.R)
    assert build_word(StandardForm(1, (1,), GLIDE)) == PennerWord((5, 1, 3), Suffix.E)
    assert build_word(StandardForm(-1, (2,), GLIDE)).suffix is Suffix.ER
    assert w.uses_every_letter()
    assert str(build_word(StandardForm(-1, (1,), GLIDE))) == "d5 d1 d3 [E][R]"


def test_rho_word_examples():
    assert rho_word(build_word(StandardForm(1, (1, 1), HYP))) == MAT_C @ MAT_A @ MAT_B
    assert rho_word(build_word(StandardForm(1, (1,), GLIDE))) == MAT_C @ MAT_A @ MAT_E
    assert rho_word(PennerWord(())) == I5
    # [R] acts trivially at this level
    assert rho_word(build_word(StandardForm(-1, (2, 3), HYP))) == rho_word(
        build_word(StandardForm(1, (2, 3), HYP))
    )


def test_abelianization_all_cases():
    for sf in forms_up_to_sum(8):
        assert abelianize(build_word(sf)) == assemble(sf), sf


def test_abelianization_sweep():
    res = check_abelianization(4, 4)
    assert res.passed, res.failures[:3]


# -- block structure --------------------------------------------------------


def test_block_decompose_examples():
    assert block_decompose(MAT_A) == Mat2(1, 1, 0, 1)
    assert block_decompose(MAT_A @ MAT_B) == Mat2(2, 1, 1, 1)
    with pytest.raises(BlockShapeViolation):
        block_decompose(MAT_C)


def test_representation_consistency_sum_12():
    n = 0
    for sf in forms_up_to_sum(12):
        if sf.kind is not HYP or sf.sign < 0:
            continue
        w5 = w5_of(sf.exponents)
        assert block_decompose(w5) == word_matrix(sf.exponents)
        assert rho_word(build_word(sf)) == MAT_C @ w5
        n += 1
    assert n > 500


@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_block_compose_is_multiplicative(exps):
    assert block_compose(word_matrix(exps)) == w5_of(exps)


# -- characteristic polynomials ----------------------------------------------


def test_charpoly_cw_examples():
    assert charpoly_cw(3, 2) == lin(1) * (X * X - 3 * X + 1) * (X * X - 11 * X + 1)
    assert charpoly_cw(2, 0) == lin(1) * (X * X - 2 * X + 1) ** 2
    assert charpoly_cw(4, 3) == lin(1) * (X * X - 4 * X + 1) * (X * X - 16 * X + 1)
    assert charpoly_cw(4, 3) == charpoly_direct(MAT_C @ MAT_A @ MAT_A @ MAT_B)


def test_charpoly_cwe_examples():
    q21 = X**4 - 4 * X**3 - 11 * X * X - 4 * X + 1
    assert charpoly_cwe(2, 1) == lin(1) * q21
    assert charpoly_cwe(2, 1) == charpoly_direct(MAT_C @ MAT_A @ MAT_E)
    assert charpoly_cwe(3, 2) == lin(1) * (X**4 - 8 * X**3 - 30 * X * X - 8 * X + 1)
    assert charpoly_cwe(2, 0) == lin(1) * (X**4 - 2 * X * X + 1)


def test_charpoly_direct_identity():
    assert charpoly_direct(I5) == lin(1) ** 5


def test_charpoly_sweep():
    res = check_charpolys(4, 4)
    assert res.passed, res.failures[:3]
    assert res.checked == 4 + 16 + 64 + 256


# -- eigenvalues ------------------------------------------------------------


def test_lambda_hyperbolic_examples():
    lam = lambda_hyperbolic(3, 2)
    assert lam == surd_normalize(11, 1, 117, 2)
    assert abs(float(lam) - 10.90833) < 1e-5
    assert lambda_hyperbolic(4, 3) == surd_normalize(8, 1, 63, 1)
    assert abs(float(lambda_hyperbolic(4, 3)) - 15.93725) < 1e-5
    assert lambda_hyperbolic(7, 6) == surd_normalize(31, 1, 957, 2)


def test_hyperbolic_eigenvalues_are_roots():
    for t, s in [(3, 2), (4, 3), (7, 6)]:
        ev = hyperbolic_eigenvalues(t, s)
        assert ev[2] == 1
        for x in (ev[0], ev[1]):
            assert x * x.inverse() == 1
        assert ev[0] + ev[4] == t + 4 * s
        assert ev[1] + ev[3] == t


def test_lambda_glide_21():
    lam = lambda_glide(2, 1, 64)
    assert lam.width <= Fraction(1, 1 << 64)
    # 1 + sqrt(17)/2 + sqrt(17 + 4 sqrt(17))/2
    assert abs(float(lam.mid) - 5.955184721953057) < 1e-12


def test_lambda_glide_32_matches_quartic_root():
    # the nested radical 2 + sqrt(48)/2 + sqrt(60 + 8 sqrt(48))/2 is 10.8359...
    lam = lambda_glide(3, 2, 64)
    assert abs(float(lam.mid) - 10.835917552) < 1e-8
    q = X**4 - 8 * X**3 - 30 * X * X - 8 * X + 1
    assert q.sign_at(lam.lo) * q.sign_at(lam.hi) <= 0


@pytest.mark.parametrize("s", [1, 5, 40, 1000])
def test_lambda_glide_exceeds_2s(s):
    assert lambda_glide(2, s, 40).lo > 2 * s


def test_glide_radical_chain():
    for t, s in [(2, 1), (3, 2), (5, 8), (100, 3)]:
        assert glide_radicals(t, s).chain_holds()


def test_eigen_order_sweep():
    res = check_eigen_order(4, 4)
    assert res.passed, res.failures[:3]


# -- Perron-Frobenius oracle ------------------------------------------------


def test_perron_hyperbolic():
    enc = perron_power_iteration(MAT_C @ MAT_A @ MAT_B, 64)
    exact = surd_normalize(11, 1, 117, 2).interval(80)
    assert enc.intersects(exact)
    assert enc.width <= Fraction(1, 1 << 64)


def test_perron_glide():
    enc = perron_power_iteration(MAT_C @ MAT_A @ MAT_E, 64)
    assert enc.intersects(lambda_glide(2, 1, 80))


def test_perron_not_primitive():
    assert not is_primitive(I5)
    with pytest.raises(NotPrimitive):
        perron_power_iteration(I5)
    with pytest.raises(NotPrimitive):
        perron_power_iteration(MAT_A)


def test_perron_sweep():
    res = check_perron(4, 4, width_bits=64)
    assert res.passed, res.failures[:3]


# -- handlebody_stretch -----------------------------------------------------


def test_handlebody_stretch_examples():
    plus = handlebody_stretch(StandardForm(1, (1, 1), HYP))
    minus = handlebody_stretch(StandardForm(-1, (1, 1), HYP))
    assert plus.lambda_exact == minus.lambda_exact == surd_normalize(11, 1, 117, 2)
    assert plus.matrix == MAT_C @ MAT_A @ MAT_B

    gp = handlebody_stretch(StandardForm(1, (1,), GLIDE))
    gm = handlebody_stretch(StandardForm(-1, (1,), GLIDE))
    assert gp.lambda_exact is None
    assert gp.lambda_interval == gm.lambda_interval
    assert (gp.t, gp.s) == (2, 1)
    assert gp.matrix == MAT_C @ MAT_A @ MAT_E


def test_handlebody_stretch_json():
    doc = handlebody_stretch(StandardForm(1, (1, 1), HYP)).to_json()
    # (11 + sqrt(117))/2 with the square factor pulled out
    assert doc["lambda_exact"] == {"p": 11, "q": 3, "D": 13, "r": 2}
    assert abs(doc["lambda_approx"] - 10.908326913195984) < 1e-12
    assert doc["word"] == "d5 d1 d3 d2 d4"
    assert doc["suffix"] == ""
    assert len(doc["matrix"]) == 5


def test_power_eigenvalues_for_r_suffix():
    # squaring the CW word squares every eigenvalue
    w = MAT_C @ MAT_A @ MAT_B
    lam = lambda_hyperbolic(3, 2)
    sq = perron_power_iteration(w @ w, 64)
    assert sq.intersects((lam * lam).interval(80))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.sampled_from([1, -1]))
def test_stretch_matches_perron(exps, sign):
    kind = GLIDE if len(exps) % 2 else HYP
    hs = handlebody_stretch(StandardForm(sign, tuple(exps), kind), 64)
    enc = perron_power_iteration(hs.matrix, 64)
    assert enc.intersects(hs.lambda_interval)
    assert isinstance(hs.lambda_interval, RealInterval)
    if kind is HYP:
        assert isinstance(hs.lambda_exact, QuadSurd)
