import json
from fractions import Fraction

import pytest

from gl2stretch.counting import (
    Radius,
    box_matrices,
    brute_force_class_census,
    enumerate_classes,
    exceeds_one,
    h2_formula,
    h2_lower,
    n2,
    n11,
    positive_words,
    trace_limits,
)
from gl2stretch.errors import RadiusTooSmall
from gl2stretch.exactnum import surd_normalize
from gl2stretch.gl2core import det2, is_fully_irreducible, tr2

GOLDEN2 = "log:3,1,5,2"  # log((3 + sqrt 5)/2)
TWO_PLUS_ROOT3 = "log:2,1,3,1"


# -- radii ------------------------------------------------------------------


def test_radius_parse():
    r = Radius.parse(GOLDEN2)
    assert r.exact == surd_normalize(3, 1, 5, 2)
    assert abs(float(r) - 0.9624236501) < 1e-9

    r = Radius.parse("log10+" + GOLDEN2)
    assert r.shift == -1
    assert r.minus_log10().exact == surd_normalize(3, 1, 5, 2)

    r = Radius.parse("1.5")
    assert r.exact is None and r.value == Fraction(3, 2)
    assert abs(float(r.exp_interval(64).mid) - 4.4816890703) < 1e-9


@pytest.mark.parametrize("bad", ["log:1,-1,5,1", "foo", "log:1,1,5,2+log:1,1,2,1"])
def test_radius_parse_rejects(bad):
    with pytest.raises(ValueError):
        Radius.parse(bad)


@pytest.mark.parametrize(
    "text, limits",
    [
        (GOLDEN2, (3, 2)),  # e^R = phi^2: hyperbolic trace <= 3, glide trace <= sqrt(5)
        (TWO_PLUS_ROOT3, (4, 3)),
        ("0.1", (2, 0)),  # trace 2 is parabolic, so nothing is counted
        ("-1", (0, 0)),
        ("2", (7, 7)),
    ],
)
def test_trace_limits(text, limits):
    assert trace_limits(Radius.parse(text)) == limits


def test_exceeds_one():
    assert exceeds_one(Radius.parse("0.001"))
    assert not exceeds_one(Radius.parse("0"))
    assert not exceeds_one(Radius.parse("log10-log10"))


# -- enumeration ------------------------------------------------------------


def test_positive_words_are_complete():
    words = {w for w, _ in positive_words(6, glide=False)}
    # (1, 1, 1, 1) has trace 7
    expected = {(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 2), (4, 1), (1, 4)}
    # every even positive word with trace <= 6, and nothing else
    assert {w for w in words if len(w) % 2 == 0} == expected


def test_sl2_golden():
    rep = enumerate_classes("sl2", GOLDEN2)
    assert rep.class_count == 2
    assert sorted(k.sign for k in rep.classes) == [-1, 1]
    assert all(k.exponents == (1, 1) for k in rep.classes)


def test_gl2_golden_includes_small_glides():
    # glides with mu <= phi^2 have |t| <= sqrt 5: exponent words [1] and [2], both signs
    rep = enumerate_classes("gl2", GOLDEN2)
    glides = [k for k in rep.classes if k.kind.value == "glide"]
    assert sorted(k.exponents for k in glides) == [(1,), (1,), (2,), (2,)]
    assert rep.class_count == 6


def test_small_radius_counts_nothing():
    assert enumerate_classes("sl2", "0.1").class_count == 0
    assert n11("0.1").class_count == 0


def test_n11_examples():
    assert n11(GOLDEN2).class_count == 2
    assert n11(TWO_PLUS_ROOT3).class_count == 6


def test_n11_trace_four_split():
    rep = n11(TWO_PLUS_ROOT3)
    assert rep.per_trace[(1, 4)] == 2
    assert rep.per_trace[(1, 3)] == 1


def test_classes_sorted_and_deterministic():
    a = n2("2.5")
    b = n2("2.5")
    assert a.classes == sorted(a.classes)
    assert json.dumps(a.to_json(True)) == json.dumps(b.to_json(True))


def test_monotone_in_radius():
    prev_1 = prev_2 = 0
    for k in range(1, 9):
        r = Fraction(k, 2)
        c1, c2 = n11(r).class_count, n2(r).class_count
        assert c1 >= prev_1 and c2 >= prev_2
        prev_1, prev_2 = c1, c2


@pytest.mark.parametrize("k", range(1, 7))
def test_count_in_torus_inequality(k):
    r = Fraction(k, 2)
    assert n11(r).class_count / 2 <= n2(r).class_count


# -- h2 ---------------------------------------------------------------------


def test_h2_lower_constructive():
    rep = h2_lower("log10+" + GOLDEN2)
    assert rep.constructive.class_count == 1
    assert rep.n11.class_count == 2


def test_h2_lower_requires_radius_above_log10():
    with pytest.raises(RadiusTooSmall):
        h2_lower("2")
    with pytest.raises(RadiusTooSmall):
        h2_lower("log10")


def test_h2_formula_values():
    f = h2_formula("1", 0)
    assert abs(float(f.mid) - 0.0184726402) < 1e-9
    # 0.5 e^4 / 800
    f = h2_formula("2", Fraction(1, 2))
    assert abs(float(f.mid) - 0.0341238438) < 1e-9
    assert f.width < Fraction(1, 1 << 100)


def test_h2_formula_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        h2_formula("1", 1)
    with pytest.raises(ValueError):
        h2_formula("1", -0.5)


# -- census -----------------------------------------------------------------


def test_box_matrices_filter():
    ms = box_matrices(3, 3, (1,))
    assert all(det2(m) == 1 and abs(tr2(m)) <= 3 for m in ms)
    assert all(max(abs(m.a), abs(m.b), abs(m.c), abs(m.d)) <= 3 for m in ms)


def test_census_examples():
    rep = brute_force_class_census(10, 4, 12)
    assert rep.per_bucket[(1, 3)] == 1
    assert rep.per_bucket[(1, 4)] == 2
    rep = brute_force_class_census(10, 2, 12)
    assert rep.class_count == 0


def test_census_gl2_merges_trace_four():
    rep = brute_force_class_census(10, 4, 12, mode="gl2")
    assert rep.per_bucket[(1, 4)] == 1


def test_census_matches_enumeration_small():
    census = brute_force_class_census(20, 8, 12)
    enum = enumerate_classes("sl2", "log:8,1,60,2")  # e^R + e^-R = 8
    got = {(d, t): n for (d, t), n in census.per_bucket.items() if d == 1 and n}
    want = {(d, t): n for (d, t), n in enum.per_trace.items()}
    assert got == want


def test_census_only_fully_irreducible():
    for m in box_matrices(5, 5):
        if is_fully_irreducible(m):
            assert abs(tr2(m)) >= (3 if det2(m) == 1 else 1)
