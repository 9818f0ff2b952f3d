import decimal
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kakeyaplanes.bounds import (
    QuadraticIrrational,
    admissible_intervals,
    bounds_table,
    classify,
    corollary_threshold,
    f_q,
    g_q,
    gap_predicates,
    h_q,
    kappa,
    kappa_ceil,
    kappa_floor,
    lemma_checks,
    prior_classification,
    square_threshold,
    theorem_threshold,
)
from kakeyaplanes.errors import DomainError, NotASquareOrder

D = decimal.Context(prec=60)


def dsqrt(n):
    return D.sqrt(decimal.Decimal(n))


def test_f_g_values():
    assert f_q(17, 14) == Fraction(119, 2)
    assert g_q(17, 13) == 52
    assert f_q(5, 0) == g_q(5, 0) == g_q(5, 5) == 0
    assert g_q(9, 3) == g_q(9, 6) == 18
    assert f_q(9, Fraction(1, 2)) == Fraction(9, 19)


def test_domain_errors():
    with pytest.raises(DomainError):
        f_q(5, 6)
    with pytest.raises(DomainError):
        g_q(5, -1)
    with pytest.raises(DomainError):
        h_q(5, 6)


def test_h_values():
    assert h_q(9, 0) == 0
    assert h_q(9, 2) == 15 and 81 - h_q(9, 2) == 81 - 18 + 3
    assert h_q(17, 3) == 45


@pytest.mark.parametrize("q,lo,hi", [(9, 2, 3), (17, 3, 4), (6, 2, 2), (2, 1, 1), (12, 3, 3), (20, 4, 4)])
def test_kappa_floor_ceil(q, lo, hi):
    assert (kappa_floor(q), kappa_ceil(q)) == (lo, hi)


@pytest.mark.parametrize("q", range(1, 400))
def test_kappa_against_decimal(q):
    k = (dsqrt(4 * q + 1) - 1) / 2
    assert kappa_floor(q) == math.floor(k)
    assert kappa_ceil(q) == math.ceil(k)


def test_kappa_root():
    for q in (3, 9, 17, 50):
        k = kappa(q)
        assert k * k + k == q


def test_theorem_threshold_examples():
    p17 = theorem_threshold(17)
    assert p17.theorem_min == 52 and p17.theorem_size_cutoff == 289 - 51
    p9 = theorem_threshold(9)
    assert p9.theorem_min == 18 and p9.theorem_size_cutoff == 64
    p4 = theorem_threshold(4)
    assert p4.theorem_min == 4 and p4.theorem_size_cutoff == 13


@pytest.mark.parametrize("q", range(2, 80))
def test_theorem_cutoff_is_smallest_size_above(q):
    # brute force: scan sizes downward with exact comparisons
    tmin = min(Fraction(kappa_ceil(q) * (q - kappa_ceil(q))),
               Fraction(q * (q - kappa_floor(q)), kappa_floor(q) + 1))
    sizes = [s for s in range(q * q + 1) if s > q * q - tmin]
    assert theorem_threshold(q).theorem_size_cutoff == min(sizes)


def test_corollary_q17():
    cb = corollary_threshold(17)
    assert cb.cutoff == 289 - 48
    assert abs(float(cb.value) - (289 - 48.7596)) < 1e-3


def test_corollary_q9():
    assert corollary_threshold(9).cutoff == 65


def test_corollary_q6_integral_kappa():
    p = theorem_threshold(6)
    assert p.theorem_min == f_q(6, 6 - kappa(6))
    assert p.corollary_cutoff == p.theorem_size_cutoff


def test_corollary_domain():
    with pytest.raises(DomainError):
        corollary_threshold(3)


@pytest.mark.parametrize("q", range(4, 120))
def test_corollary_matches_decimal_and_f(q):
    cb = corollary_threshold(q)
    value = q * q - ((q + 1) * dsqrt(4 * q + 1) / 2 - decimal.Decimal(3 * q + 1) / 2)
    assert cb.cutoff == math.floor(value) + 1
    # the same number written as q^2 - f_q(q - kappa)
    assert cb.value == q * q - f_q(q, q - kappa(q))
    a, b, c = cb.value.integer_triple()
    assert QuadraticIrrational(Fraction(a, c), Fraction(b, c), 4 * q + 1) == cb.value


def test_square_threshold():
    assert square_threshold(9) == 63
    assert square_threshold(16) == 208
    assert square_threshold(25) == 525
    with pytest.raises(NotASquareOrder):
        square_threshold(10)
    with pytest.raises(DomainError):
        square_threshold(4)


@pytest.mark.parametrize("r", range(3, 14))
def test_square_theorem_min(r):
    q = r * r
    assert theorem_threshold(q).theorem_min == q * r - q


def test_intervals_q17():
    assert admissible_intervals(17) == [(0, 289, 289), (1, 273, 273), (2, 258, 259), (3, 244, 247)]


@pytest.mark.parametrize("q", [3, 5, 9, 30])
def test_interval_shapes(q):
    iv = admissible_intervals(q)
    assert iv[0] == (0, q * q, q * q)
    assert iv[1] == (1, q * q - q + 1, q * q - q + 1)
    if len(iv) > 2:
        assert iv[2] == (2, q * q - 2 * q + 3, q * q - 2 * q + 4)


@pytest.mark.parametrize("q", range(3, 65))
def test_intervals_have_gaps(q):
    iv = admissible_intervals(q)
    for (_, lo_a, _), (_, _, hi_b) in zip(iv, iv[1:]):
        assert hi_b + 1 < lo_a


@pytest.mark.parametrize("q", range(4, 65))
def test_theorem_no_weaker_than_corollary(q):
    p = theorem_threshold(q)
    assert p.theorem_size_cutoff <= p.corollary_cutoff


def test_classify_examples():
    assert classify(17, 289, 0).status == "conforms"
    assert classify(17, 289, 0).k == 0
    assert classify(9, 63, 6).status == "unclassified"
    assert classify(17, 250).status == "violates"
    assert classify(17, 273, 2).status == "violates"
    assert classify(17, 259, 2).status == "conforms"


def test_gap_predicates_examples():
    assert all(gap_predicates(17, k)[1] for k in range(kappa_ceil(17) - 1))
    assert gap_predicates(9, 0) == (True, True)
    assert gap_predicates(17, 3) == (True, True)
    assert gap_predicates(17, 5) == (False, False)


@pytest.mark.parametrize("q", range(3, 65))
def test_gap_predicates_against_intervals(q):
    def interval(k):
        return q * q - h_q(q, k), q * q - k * (q - k)

    for k in range(q - 1):
        disjoint, gap = gap_predicates(q, k)
        lo_k, _ = interval(k)
        _, hi_next = interval(k + 1)
        assert disjoint == (hi_next < lo_k)
        assert gap == (hi_next + 1 < lo_k)
        if k + 1 < kappa_ceil(q):
            assert gap


def test_lemma_checks_small():
    assert lemma_checks(9).ok and lemma_checks(4).ok
    rep = lemma_checks(3)
    assert rep.items == {"i": "pass", "ii": "pass", "iii": "pass", "iv": "pass", "v": "skipped"}


def test_lemma_detects_breakage(monkeypatch):
    import kakeyaplanes.bounds as b

    monkeypatch.setattr(b, "g_q", lambda q, k: k * (q - k) + (1 if k > Fraction(q, 2) else 0))
    assert lemma_checks(9).items["ii"] == "fail"


def test_prior_classification():
    assert prior_classification(12, 140) is None
    assert prior_classification(17, 289 - 3 * 17 + 9) == [3]
    assert prior_classification(17, 250) == []


def test_bounds_table_rows():
    rows = bounds_table(9)
    assert len(rows) == 10
    assert rows[2] == {"k": 2, "f_q": Fraction(9, 4), "g_q": 14, "h_q": 15, "lo": 66, "hi": 67}


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


@given(rationals, rationals, st.integers(0, 500), rationals, rationals)
def test_quadratic_irrational_order_matches_decimal(a, b, d, c, e):
    x = QuadraticIrrational(a, b, d)
    y = QuadraticIrrational(c, e, d)

    def dec(f):
        return decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)

    dx = dec(a) + dec(b) * dsqrt(d)
    dy = dec(c) + dec(e) * dsqrt(d)
    if abs(dx - dy) > decimal.Decimal("1e-40"):
        assert (x < y) == (dx < dy)
    else:
        assert x == y
    assert x + y - y == x
    if y != 0:
        assert (x / y) * y == x
    assert math.floor(x) == math.floor(dx)
