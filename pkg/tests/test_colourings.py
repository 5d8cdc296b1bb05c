import random
from fractions import Fraction

import pytest

from ripr.colourings import (
    Colouring,
    colour_image,
    digit_profile_colouring,
    mod_colouring,
    negabase_gap_colouring,
    prime_exponent_colouring,
    ratio_colouring,
    rational_valuation,
    table_colouring,
)
from ripr.digits import GapPattern, gap_residue, negabase_digits, top_digits


def test_colouring_input_validation():
    col = mod_colouring(3)
    with pytest.raises(ValueError):
        col.colour(0)
    with pytest.raises(TypeError):
        col.colour(Fraction(3, 2))
    with pytest.raises(TypeError):
        col.colour(True)


def test_mod_colouring():
    col = mod_colouring(3)
    assert [col.colour(x) for x in (1, 2, 3, 4)] == [1, 2, 0, 1]
    assert col.palette == frozenset({0, 1, 2})


def test_table_colouring():
    col = table_colouring({1: "a", 2: "b"})
    assert col.colour(1) == "a"
    with pytest.raises(ValueError):
        col.colour(3)
    col2 = table_colouring({1: "a"}, default="z")
    assert col2.colour(99) == "z"
    assert col2.palette == frozenset({"a", "z"})


def test_rational_valuation():
    assert rational_valuation(12, 2) == 2
    assert rational_valuation(Fraction(1, 8), 2) == -3
    assert rational_valuation(Fraction(9, 2), 3) == 2
    with pytest.raises(ValueError):
        rational_valuation(0, 2)


def test_prime_exponent_params():
    col = prime_exponent_colouring(2, 3)
    assert (col.params["p"], col.params["q"]) == (2, 2)
    assert col.colour(2) == 1 and col.colour(3) == 0
    col41 = prime_exponent_colouring(4, 1)
    assert (col41.params["p"], col41.params["q"]) == (2, 3)
    assert col41.colour(4) == 2 and col41.colour(1) == 0


def test_prime_exponent_skips_q_dividing_gap():
    # exponents 2 and -3 differ by 5, so q=5 would collapse them
    col = prime_exponent_colouring(4, Fraction(1, 8))
    assert col.params["i"] == 2 and col.params["j"] == -3
    assert col.params["q"] == 7
    for s_num, s_den in [(1, 1), (8, 1), (1, 4), (3, 8)]:
        s = Fraction(s_num, s_den)
        bs, cs = 4 * s, s / 8
        if bs.denominator == 1 and cs.denominator == 1 and bs >= 1 and cs >= 1:
            assert col.colour(int(bs)) != col.colour(int(cs))


def test_prime_exponent_guarantee_sweep():
    col = prime_exponent_colouring(2, 3)
    for s in range(1, 2001):
        assert col.colour(2 * s) != col.colour(3 * s)
    with pytest.raises(ValueError):
        prime_exponent_colouring(3, 3)
    with pytest.raises(ValueError):
        prime_exponent_colouring(-2, 3)


def test_ratio_colouring_guarantees():
    cases = {2: [1, 2, 3, 8], Fraction(3, 2): [2, 4, 6, 16], Fraction(1, 2): [2, 4, 10]}
    for alpha, xs in cases.items():
        col = ratio_colouring(alpha)
        for x in xs:
            ax = Fraction(alpha) * x
            assert ax.denominator == 1
            assert col.colour(x) != col.colour(int(ax))
    # composite ratios work through repeated division
    col4 = ratio_colouring(4)
    for x in (1, 2, 4, 8, 64):
        assert col4.colour(x) != col4.colour(4 * x)
    with pytest.raises(ValueError):
        ratio_colouring(1)
    with pytest.raises(ValueError):
        ratio_colouring(0)


def test_digit_profile_colouring():
    col = digit_profile_colouring(5)
    assert col.colour(7) == (2, 1, 2, 1)
    assert col.colour(32) == (2, 1, 1, 2)
    assert col.colour(1) == (1, 1, 0, 0)
    assert len(col.palette) <= 3 * 5**3
    assert col.colour(7) in col.palette


def test_negabase_gap_validation():
    with pytest.raises(ValueError):
        negabase_gap_colouring(6, (1,))  # not prime
    with pytest.raises(ValueError):
        negabase_gap_colouring(7, (1, 4))  # 2*4 >= 7
    with pytest.raises(ValueError):
        negabase_gap_colouring(3, (1, -1, 1, -1))  # too many coefficients
    with pytest.raises(ValueError):
        negabase_gap_colouring(7, ())


def test_negabase_gap_reserved_class():
    col = negabase_gap_colouring(7, (1, 2))
    assert col.colour(1) == ("small",)
    assert col.colour(7**4) == ("small",)
    assert col.is_reserved(col.colour(7**4))
    big = col.colour(7**4 + 1)
    assert big[0] == "big" and not col.is_reserved(big)


def test_negabase_gap_components():
    col = negabase_gap_colouring(7, (1, 2))
    x = 7**4 + 60
    kind, lead, low, finger = col.colour(x)
    assert lead == top_digits(x, 7)
    assert low == x % 7
    for (a, pat), r in finger:
        assert r == gap_residue(a * x, 7, GapPattern(pat[0], pat[1:]))
        assert 1 <= r < 7


def test_negabase_gap_memoizes():
    col = negabase_gap_colouring(7, (1,))
    v1 = col.colour(123456)
    assert col._memo[123456] == v1
    assert col.colour(123456) is v1


def test_colour_image():
    col = mod_colouring(2)
    assert colour_image(col, [2, 4, 6]) == 0
    assert colour_image(col, [2, 3]) is None
    assert colour_image(col, [Fraction(4, 1)]) == 0
    with pytest.raises(ValueError):
        colour_image(col, [Fraction(1, 2)])
    with pytest.raises(ValueError):
        colour_image(col, [])


def test_gap_additivity_hand_case():
    # far-apart supports add their gap counts; a unit coefficient with the
    # marker digit at the bottom of the high part contributes one extra site
    p = 7
    x = 3 * 7**6 + 2401  # supports well below position 12
    y = (-7) ** 14  # single digit far above
    pat_v = 1  # the top digit of y seen from x's leading block
    lead = top_digits(x, p)
    pat = GapPattern(pat_v, lead)
    base = gap_residue(x, p, pat) + gap_residue(y, p, pat)
    crossing = 1 if negabase_digits(y, p).digit(14) == pat_v else 0
    got = gap_residue(x + y, p, pat)
    assert got == (base + crossing) % p
