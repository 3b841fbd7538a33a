"""Cell-for-cell regression of the three twist-candidate tables.

Every cell is frozen from the construction rule gamma = t_1^{-1},
xi = gamma^3, twists = spectrum * gamma, with the third-root parameter
instantiated as omega = z3.  Each twist set is the product of the row's
own gamma with its spectrum; the frozen values are recomputed from that
rule, never copied.
"""

from twistbench.cyclotomic import RootOfUnity
from twistbench.sl2tables import twist_candidates

r = RootOfUnity
W = r(1, 3)
ONE = r(0, 1)
M1 = r(1, 2)
I4 = r(1, 4)
MI4 = r(3, 4)


def z8(k):
    return r(k % 8, 8)


def z12(k):
    return r(k % 12, 12)


def cells(spec):
    return {c.gamma: (c.xi, c.twists) for c in twist_candidates(spec)}


LEVEL8_THREE_EIG = [
    # (spectrum, gamma, xi, twists)
    ({W, W * z8(1), W * z8(5)}, W.inverse(), ONE, {ONE, z8(1), z8(5)}),
    ({W, W * z8(1), W * z8(5)}, W.inverse() * z8(7), z8(5), {ONE, M1, z8(7)}),
    ({W, W * z8(1), W * z8(5)}, W.inverse() * z8(3), z8(1), {ONE, M1, z8(3)}),
    ({W * M1, W * z8(1), W * z8(5)}, (W * M1).inverse(), M1, {ONE, z8(1), z8(5)}),
    ({W * M1, W * z8(1), W * z8(5)}, W.inverse() * z8(7), z8(5), {ONE, M1, z8(3)}),
    ({W * M1, W * z8(1), W * z8(5)}, W.inverse() * z8(3), z8(1), {ONE, M1, z8(7)}),
    ({W * I4, W * z8(1), W * z8(5)}, W.inverse() * MI4, I4, {ONE, z8(3), z8(7)}),
    ({W * I4, W * z8(1), W * z8(5)}, W.inverse() * z8(7), z8(5), {ONE, M1, z8(1)}),
    ({W * I4, W * z8(1), W * z8(5)}, W.inverse() * z8(3), z8(1), {ONE, M1, z8(5)}),
    ({W * MI4, W * z8(1), W * z8(5)}, W.inverse() * I4, MI4, {ONE, z8(3), z8(7)}),
    ({W * MI4, W * z8(1), W * z8(5)}, W.inverse() * z8(7), z8(5), {ONE, M1, z8(5)}),
    ({W * MI4, W * z8(1), W * z8(5)}, W.inverse() * z8(3), z8(1), {ONE, M1, z8(1)}),
    ({W, W * z8(3), W * z8(7)}, W.inverse(), ONE, {ONE, z8(3), z8(7)}),
    ({W, W * z8(3), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, z8(5)}),
    ({W, W * z8(3), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, z8(1)}),
    ({W * M1, W * z8(3), W * z8(7)}, (W * M1).inverse(), M1, {ONE, z8(3), z8(7)}),
    ({W * M1, W * z8(3), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, z8(1)}),
    ({W * M1, W * z8(3), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, z8(5)}),
    ({W * I4, W * z8(3), W * z8(7)}, W.inverse() * MI4, I4, {ONE, z8(1), z8(5)}),
    ({W * I4, W * z8(3), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, z8(7)}),
    ({W * I4, W * z8(3), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, z8(3)}),
    ({W * MI4, W * z8(3), W * z8(7)}, W.inverse() * I4, MI4, {ONE, z8(1), z8(5)}),
    ({W * MI4, W * z8(3), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, z8(3)}),
    ({W * MI4, W * z8(3), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, z8(7)}),
]


LEVEL8_TWO_EIG = [
    ({W * z8(1), W * z8(3), W * z8(5)}, W.inverse() * z8(7), z8(5), {ONE, M1, I4}),
    ({W * z8(1), W * z8(3), W * z8(5)}, W.inverse() * z8(5), z8(7), {ONE, I4, MI4}),
    ({W * z8(1), W * z8(3), W * z8(5)}, W.inverse() * z8(3), z8(1), {ONE, M1, MI4}),
    ({W * z8(1), W * z8(5), W * z8(7)}, W.inverse() * z8(7), z8(5), {ONE, M1, MI4}),
    ({W * z8(1), W * z8(5), W * z8(7)}, W.inverse() * z8(3), z8(1), {ONE, M1, I4}),
    ({W * z8(1), W * z8(5), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, I4, MI4}),
    ({W * z8(1), W * z8(3), W * z8(7)}, W.inverse() * z8(7), z8(5), {ONE, I4, MI4}),
    ({W * z8(1), W * z8(3), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, MI4}),
    ({W * z8(1), W * z8(3), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, I4}),
    ({W * z8(3), W * z8(5), W * z8(7)}, W.inverse() * z8(5), z8(7), {ONE, M1, I4}),
    ({W * z8(3), W * z8(5), W * z8(7)}, W.inverse() * z8(3), z8(1), {ONE, I4, MI4}),
    ({W * z8(3), W * z8(5), W * z8(7)}, W.inverse() * z8(1), z8(3), {ONE, M1, MI4}),
]


ORDER12 = [
    ({I4, MI4, z12(1)}, MI4, {ONE, M1, r(5, 6)}),
    ({I4, MI4, z12(1)}, I4, {ONE, M1, r(1, 3)}),
    ({I4, MI4, z12(1)}, z12(11), {ONE, r(2, 3), r(1, 6)}),
    ({I4, z12(1), z12(7)}, MI4, {ONE, r(1, 3), r(5, 6)}),
    ({I4, z12(1), z12(7)}, z12(11), {ONE, M1, r(1, 6)}),
    ({I4, z12(1), z12(7)}, z12(5), {ONE, M1, r(2, 3)}),
    ({MI4, z12(1), z12(5)}, I4, {ONE, r(1, 3), r(2, 3)}),
    ({MI4, z12(1), z12(5)}, z12(11), {ONE, r(1, 3), r(2, 3)}),
    ({MI4, z12(1), z12(5)}, z12(7), {ONE, r(1, 3), r(2, 3)}),
    ({MI4, z12(1), z12(7)}, I4, {ONE, r(1, 3), r(5, 6)}),
    ({MI4, z12(1), z12(7)}, z12(11), {ONE, M1, r(2, 3)}),
    ({MI4, z12(1), z12(7)}, z12(5), {ONE, M1, r(1, 6)}),
    ({z12(1), z12(5), z12(7)}, z12(11), {ONE, M1, r(1, 3)}),
    ({z12(1), z12(5), z12(7)}, z12(7), {ONE, r(2, 3), r(1, 6)}),
    ({z12(1), z12(5), z12(7)}, z12(5), {ONE, M1, r(5, 6)}),
    ({z12(1), z12(5), z12(11)}, z12(11), {ONE, r(1, 3), r(5, 6)}),
    ({z12(1), z12(5), z12(11)}, z12(7), {ONE, M1, r(2, 3)}),
    ({z12(1), z12(5), z12(11)}, z12(1), {ONE, M1, r(1, 6)}),
]


def test_level8_three_eigenvalue_table():
    for spec, gamma, xi, twists in LEVEL8_THREE_EIG:
        got = cells(frozenset(spec))
        assert gamma in got
        got_xi, got_tw = got[gamma]
        assert got_xi == xi
        assert got_tw == frozenset(twists)


def test_level8_two_eigenvalue_table():
    for spec, gamma, xi, twists in LEVEL8_TWO_EIG:
        got = cells(frozenset(spec))
        assert gamma in got
        got_xi, got_tw = got[gamma]
        assert got_xi == xi
        assert got_tw == frozenset(twists)


def test_order12_table():
    for spec, gamma, twists in ORDER12:
        got = cells(frozenset(spec))
        assert gamma in got
        _, got_tw = got[gamma]
        assert got_tw == frozenset(twists)
    # every spectrum here keeps the T-order inside {1,2,3,6}
    for spec, gamma, twists in ORDER12:
        import math

        order = math.lcm(*(t.m for t in twists))
        assert order in (1, 2, 3, 6)


def test_table_shapes():
    assert len(LEVEL8_THREE_EIG) == 24
    assert len(LEVEL8_TWO_EIG) == 12
    assert len(ORDER12) == 18
