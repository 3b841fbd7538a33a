import math
import random
from fractions import Fraction

import pytest

from twistbench.quadfield import (
    QuadFieldElement,
    d_numbers_q5_in_window,
    fundamental_unit,
    quad,
    quad_from_cyc,
    sqrt2_obstruction_scan,
    sqrt_cyc,
)


def embeddings(x: QuadFieldElement):
    """Oracle: numeric values of both real embeddings (test-side only)."""
    r = math.sqrt(x.d)
    return float(x.a) + float(x.b) * r, float(x.a) - float(x.b) * r


def test_norm_trace():
    x = quad(5, Fraction(5, 2), Fraction(1, 2))   # (5+sqrt5)/2
    assert x.trace() == 5
    assert x.norm() == 5
    assert x.is_algebraic_integer()
    y = quad(2, 3, -1)
    assert y.norm() == 7 and y.trace() == 6


def test_d_number_examples():
    # (1/2)(5+sqrt5): T=5, N=5, 25 divisible by 5
    assert quad(5, Fraction(5, 2), Fraction(1, 2)).is_d_number()
    # 1+sqrt2 is a unit: T=2, N=-1
    assert quad(2, 1, 1).is_d_number()
    # 3+sqrt5: T=6, N=4, 36 divisible by 4; 4+sqrt5: T=8, N=11, 64 not
    assert quad(5, 3, 1).is_d_number()
    assert not quad(5, 4, 1).is_d_number()
    with pytest.raises(ValueError):
        quad(5, Fraction(1, 3)).is_d_number()
    with pytest.raises(ValueError):
        quad(5, 0).is_d_number()


def test_d_number_agrees_with_unit_factorization():
    """Cross-check trace^2 | norm against x^2 = integer * unit on 200
    random quadratic integers."""
    rng = random.Random(7)
    checked = 0
    for d in (2, 5):
        eps = fundamental_unit(d)
        while checked < 100 * (1 if d == 2 else 2):
            if d == 5:
                two_a = rng.randint(-12, 12)
                two_b = rng.randint(-12, 12)
                if (two_a - two_b) % 2:
                    continue
                x = quad(5, Fraction(two_a, 2), Fraction(two_b, 2))
            else:
                x = quad(2, rng.randint(-12, 12), rng.randint(-12, 12))
            if x.a == 0 and x.b == 0:
                continue
            checked += 1
            # oracle: does x^2 equal (integer) * (+- eps^m) for some |m| <= 40?
            sq = x * x
            is_unit_multiple = False
            for m in range(-40, 41):
                u = eps ** m
                for sgn in (1, -1):
                    cand = sq / (u * sgn)
                    if cand.b == 0 and cand.a.denominator == 1:
                        is_unit_multiple = True
                        break
                if is_unit_multiple:
                    break
            assert x.is_d_number() == is_unit_multiple, str(x)


def test_totally_geq():
    assert quad(2, 3, 1).is_totally_geq(1)        # 4.41, 1.59
    assert not quad(2, 1, 1).is_totally_geq(1)    # conjugate -0.41
    assert quad(5, 5).is_totally_geq(5)           # equality case
    assert quad(2, 0, 1).is_totally_geq(-2)


def test_sign_branches():
    assert quad(5, -1, 1).sign() == 1      # sqrt5 - 1 > 0
    assert quad(5, 3, -1).sign() == 1      # 3 - sqrt5 > 0
    assert quad(5, 2, -1).sign() == -1     # 2 - sqrt5 < 0
    assert quad(5, -3, 1).sign() == -1
    assert quad(5, 0, 0).sign() == 0


def test_window_scan_defaults_exactly_five():
    out = d_numbers_q5_in_window(5, 1, 18)
    got = {(x.a, x.b) for x in out}
    assert got == {
        (Fraction(5, 2), Fraction(1, 2)), (Fraction(5, 2), Fraction(-1, 2)),
        (Fraction(15, 2), Fraction(5, 2)), (Fraction(15, 2), Fraction(-5, 2)),
        (Fraction(5), Fraction(0)),
    }
    # oracle: both embeddings of each number lie strictly inside (1, 18)
    for x in out:
        for v in embeddings(x):
            assert 1 < v < 18


def test_window_scan_narrow_windows():
    # oracle (both embeddings in the window): (5-sqrt5)/2 has conjugate
    # 3.618 outside (1,2), so the window is empty; same for (0,1)
    five = d_numbers_q5_in_window(5, 1, 18)
    inside = [x for x in five if all(1 < v < 2 for v in embeddings(x))]
    assert inside == []
    assert d_numbers_q5_in_window(5, 1, 2) == []
    assert d_numbers_q5_in_window(5, 0, 1) == []


def test_sqrt2_obstruction_scan_empty():
    assert sqrt2_obstruction_scan(12, 20) == []
    with pytest.raises(ValueError):
        sqrt2_obstruction_scan(0, 5)


def test_sqrt2_scan_filters_before_d_number():
    # 2*eps^2 = 6+4sqrt2 has conjugate ~0.34 < 2, so it never reaches the
    # d-number test
    alpha = quad(2, 2) * fundamental_unit(2) ** 2
    assert not alpha.is_totally_geq(2)


def test_sqrt_in_field():
    v = quad(5, Fraction(3, 2), Fraction(1, 2))
    r = v.sqrt()
    assert r is not None and r * r == v
    assert quad(5, 2).sqrt() is None         # sqrt2 not in Q(sqrt5)
    assert quad(5, 5).sqrt() == quad(5, 0, 1) or quad(5, 5).sqrt() == quad(5, 0, -1)


def test_cyclotomic_embedding_consistency():
    """trace/norm agree with x + sigma(x), x * sigma(x) computed through the
    cyclotomic embedding and the Galois action."""
    for d, k in ((5, 2), (2, 3)):
        x = quad(d, Fraction(7, 2) if d == 5 else 3, Fraction(1, 2) if d == 5 else 2)
        xc = x.to_cyc()
        sx = xc.galois(k)
        assert (xc + sx).as_fraction() == x.trace()
        assert (xc * sx).as_fraction() == x.norm()
        assert quad_from_cyc(xc, d) == x
    assert (sqrt_cyc(5) * sqrt_cyc(5)) == 5
    assert (sqrt_cyc(2) * sqrt_cyc(2)) == 2
    assert (sqrt_cyc(3) * sqrt_cyc(3)) == 3


def test_rationals_adopt_the_other_field():
    x = quad(5, 3) + quad(2, 0, 1)   # 3 + sqrt2, built from a d=5 rational
    assert x.d == 2 and x == quad(2, 3, 1)
    y = quad(2, 0, 1) * quad(5, 2)
    assert y.d == 2 and y == quad(2, 0, 2)
    with pytest.raises(ValueError):
        quad(5, 0, 1) + quad(2, 0, 1)
