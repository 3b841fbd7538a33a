"""Twisted doubles of finite abelian groups from 3-cocycle data.

Cocycle representatives use the standard parameterization for a product
of cyclic groups (per-factor, pairwise, and triple-wise integer
parameters).  Simple objects are pairs (sector g, projective character of
the slant 2-cocycle beta_g); since G is abelian, the characters live on
the radical of the alternating bicharacter of beta_g and the rest is
small exact linear algebra.  The S-matrix convention is certified by the
validator and by matching the golden fixtures up to relabeling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .cyclotomic import RootOfUnity
from .metricgroups import FiniteAbelianGroup
from .moddata import InvalidDataError, ModularData

ONE = RootOfUnity(0, 1)


@dataclass(frozen=True)
class ThreeCocycle:
    group: FiniteAbelianGroup
    # parameters of the standard representative
    linear: tuple[int, ...]                  # p_i mod n_i
    pair: tuple[tuple[int, int, int], ...]   # (i, j, p_ij mod gcd(n_i, n_j))
    triple: tuple[tuple[int, int, int, int], ...]  # (i, j, k, p_ijk mod gcd)

    def value(self, a, b, c) -> RootOfUnity:
        G = self.group
        out = ONE
        for i, p in enumerate(self.linear):
            if p:
                n = G.factors[i]
                out = out * RootOfUnity(p * a[i] * ((b[i] + c[i]) // n), n)
        for i, j, p in self.pair:
            if p:
                nj = G.factors[j]
                g = math.gcd(G.factors[i], nj)
                out = out * RootOfUnity(p * a[i] * ((b[j] + c[j]) // nj), g)
        for i, j, k, p in self.triple:
            if p:
                g = math.gcd(G.factors[i], G.factors[j], G.factors[k])
                out = out * RootOfUnity(p * a[i] * b[j] * c[k], g)
        return out

    def is_cocycle(self) -> bool:
        """Exhaustive check of the 3-cocycle identity (desk scale)."""
        G = self.group
        els = G.elements()
        for a, b, c, d in itertools.product(els, repeat=4):
            lhs = self.value(b, c, d) * self.value(a, G.add(b, c), d) * self.value(a, b, c)
            rhs = self.value(G.add(a, b), c, d) * self.value(a, b, G.add(c, d))
            if lhs != rhs:
                return False
        return True

    def is_normalized(self) -> bool:
        G = self.group
        z = G.zero()
        return all(
            self.value(*args) == ONE
            for x in G.elements()
            for y in G.elements()
            for args in ((z, x, y), (x, z, y), (x, y, z))
        )

    def label(self) -> str:
        bits = [str(p) for p in self.linear]
        bits += [str(p) for _, _, p in self.pair]
        bits += [str(p) for _, _, _, p in self.triple]
        return ",".join(bits)


def enumerate_cocycle_classes(G: FiniteAbelianGroup) -> list[ThreeCocycle]:
    """Representatives of every class of H^3(G, C^x) (abelian G, |G| <= 8)."""
    if G.order > 8:
        raise ValueError("cocycle enumeration capped at |G| = 8")
    k = len(G.factors)
    lin_ranges = [range(n) for n in G.factors]
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    pair_ranges = [range(math.gcd(G.factors[i], G.factors[j])) for i, j in pairs]
    triples = [(i, j, l) for i in range(k) for j in range(i + 1, k)
               for l in range(j + 1, k)]
    triple_ranges = [
        range(math.gcd(G.factors[i], G.factors[j], G.factors[l])) for i, j, l in triples
    ]
    out = []
    for lin in itertools.product(*lin_ranges):
        for pv in itertools.product(*pair_ranges):
            for tv in itertools.product(*triple_ranges):
                out.append(
                    ThreeCocycle(
                        G,
                        tuple(lin),
                        tuple((i, j, p) for (i, j), p in zip(pairs, pv)),
                        tuple((i, j, l, p) for (i, j, l), p in zip(triples, tv)),
                    )
                )
    return out


def cohomology_order(G: FiniteAbelianGroup) -> int:
    """|H^3(G, C^x)| from the closed form for a product of cyclic groups."""
    k = len(G.factors)
    total = math.prod(G.factors)
    for i in range(k):
        for j in range(i + 1, k):
            total *= math.gcd(G.factors[i], G.factors[j])
    for i in range(k):
        for j in range(i + 1, k):
            for l in range(j + 1, k):
                total *= math.gcd(G.factors[i], G.factors[j], G.factors[l])
    return total


# ---------------------------------------------------------------------------
# slant products and sector characters


def slant(omega: ThreeCocycle, g) -> dict:
    """beta_g(h, k) = w(g,h,k) w(h,k,g) / w(h,g,k), a 2-cocycle on G."""
    G = omega.group
    out = {}
    for h in G.elements():
        for k in G.elements():
            out[(h, k)] = (
                omega.value(g, h, k)
                * omega.value(h, k, g)
                * omega.value(h, g, k).inverse()
            )
    return out


def is_two_cocycle(G: FiniteAbelianGroup, beta: dict) -> bool:
    for h, k, l in itertools.product(G.elements(), repeat=3):
        lhs = beta[(h, k)] * beta[(G.add(h, k), l)]
        if lhs != beta[(k, l)] * beta[(h, G.add(k, l))]:
            return False
    return True


def _radical(G: FiniteAbelianGroup, beta: dict) -> list:
    """Radical of the alternating bicharacter B(h,k) = beta(h,k)/beta(k,h)."""
    els = G.elements()
    rad = []
    for h in els:
        if all(beta[(h, k)] == beta[(k, h)] for k in els):
            rad.append(h)
    return rad


def _subgroup_basis(G: FiniteAbelianGroup, subgroup: list) -> list:
    """Internal direct-sum basis of a subgroup, greedy by element order."""
    sub = set(subgroup)
    basis = []
    span = {G.zero()}

    def grow(span_set, gen):
        out = set(span_set)
        frontier = list(span_set)
        while frontier:
            nxt = []
            for x in frontier:
                y = G.add(x, gen)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
            frontier = nxt
        return out

    rest = sorted(sub, key=lambda x: -G.element_order(x))
    for x in rest:
        if x in span:
            continue
        bigger = grow(span, x)
        if len(bigger) == len(span) * G.element_order(x):
            basis.append(x)
            span = bigger
        if len(span) == len(sub):
            break
    assert len(span) == len(sub), "greedy basis construction failed"
    return basis


def _sector_characters(G: FiniteAbelianGroup, beta: dict):
    """All 1-dim projective beta|_A characters of the radical A.

    Returns (radical elements, list of characters as dicts A -> RootOfUnity).
    Characters satisfy c(x)c(y) = beta(x,y) c(x+y) and vanish off A.
    """
    A = _radical(G, beta)
    basis = _subgroup_basis(G, A)
    orders = []
    for t in basis:
        o = 1
        x = t
        while x != G.zero():
            x = G.add(x, t)
            o += 1
        orders.append(o)

    def build(choices):
        c = {G.zero(): ONE}
        for t, o, z in zip(basis, orders, choices):
            # extend along the cyclic factor <t>: c(x + j t) from the cocycle rule
            powers = {0: ONE}
            acc = ONE
            x = G.zero()
            for j in range(1, o):
                acc = acc * z * beta[(x, t)].inverse()
                x = G.add(x, t)
                powers[j] = acc
            prev = dict(c)
            for y, cy in prev.items():
                xx = y
                for j in range(1, o):
                    xx = G.add(xx, t)
                    c[xx] = cy * powers[j] * beta[(y, G.scale(j, t))].inverse()
        return c

    # particular value z_t on each basis generator: z^o must hit the cocycle
    # wrap-around product, so solve z from an o-th root; all solutions differ
    # by a linear character of A.
    char_lists = []
    for t, o in zip(basis, orders):
        # wrap-around constraint c(o*t) = 1 forces z^o = prod of beta(j*t, t)
        wrap = ONE
        x = t
        for j in range(1, o):
            wrap = wrap * beta[(x, t)]
            x = G.add(x, t)
        z0 = RootOfUnity(wrap.k, wrap.m * o)
        char_lists.append([z0 * RootOfUnity(u, o) for u in range(o)])

    chars = []
    for combo in itertools.product(*char_lists):
        c = build(combo)
        # exhaustive consistency check of the defining rule
        ok = all(
            c[x] * c[y] == beta[(x, y)] * c[G.add(x, y)]
            for x in A
            for y in A
        )
        assert ok, "projective character construction failed"
        chars.append(c)
    return A, chars


# ---------------------------------------------------------------------------
# the double


@dataclass
class DoubleSimple:
    sector: tuple
    char: dict           # values on the radical of beta_sector
    dim: int
    radical: tuple       # elements where the character is supported

    @property
    def twist(self) -> RootOfUnity:
        return self.char[self.sector]


class TwistedDouble:
    """Modular data of the double of an abelian group twisted by omega,
    with the sector bookkeeping the induction trace tests need."""

    def __init__(self, G: FiniteAbelianGroup, omega: ThreeCocycle):
        if G.order > 64:
            raise ValueError("double construction capped at |G| = 64")
        self.group = G
        self.omega = omega
        self.simples: list[DoubleSimple] = []
        for g in G.elements():
            beta = slant(omega, g)
            A, chars = _sector_characters(G, beta)
            d2 = G.order // len(A)
            d = math.isqrt(d2)
            if d * d != d2:
                raise InvalidDataError("sector dimension is not a perfect square")
            assert g in A, "sector label must be central in its twisted algebra"
            for c in chars:
                self.simples.append(DoubleSimple(g, c, d, tuple(A)))
        assert sum(s.dim * s.dim for s in self.simples) == G.order ** 2

    @property
    def rank(self) -> int:
        return len(self.simples)

    def twist_values(self) -> frozenset[RootOfUnity]:
        return frozenset(s.twist for s in self.simples)

    def modular_data(self) -> ModularData:
        """S from the projective character pairing; validator is the oracle."""
        simples = self.simples
        r = len(simples)
        S = [[None] * r for _ in range(r)]
        for a in range(r):
            X = simples[a]
            for b in range(a, r):
                Y = simples[b]
                if Y.sector in X.radical and X.sector in Y.radical:
                    val = (X.char[Y.sector] * Y.char[X.sector]).as_cyc()
                    entry = X.dim * Y.dim * val
                else:
                    entry = 0
                S[a][b] = entry
                S[b][a] = entry
        T = [s.twist for s in simples]
        md = ModularData(S, T, name=f"double_{self.group}_[{self.omega.label()}]")
        return md

    # -- induction bookkeeping: [Y : I(x)] = dim(Y) when sector(Y) = x

    def induction_multiplicity(self, x, simple: DoubleSimple) -> int:
        return simple.dim if simple.sector == tuple(x) else 0


def double_modular_data(G: FiniteAbelianGroup, omega: ThreeCocycle) -> ModularData:
    return TwistedDouble(G, omega).modular_data()


# ---------------------------------------------------------------------------
# trace tests (zero trace and squared trace of induced objects)


@dataclass
class TraceReport:
    zero_trace: list[tuple[tuple, bool]]
    squared_trace: list[tuple[tuple, bool]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.zero_trace) and \
            all(ok for _, ok in self.squared_trace)


def induction_trace_tests(double: TwistedDouble) -> TraceReport:
    """Zero trace for every nontrivial sector label, squared trace (= +-|G|)
    for every self-dual one; exact."""
    G = double.group
    zero = G.zero()
    zt, st = [], []
    for x in G.elements():
        if x == zero:
            continue
        tot = None
        for s in double.simples:
            m = double.induction_multiplicity(x, s)
            if m:
                term = m * s.dim * s.twist.as_cyc()
                tot = term if tot is None else tot + term
        zt.append((x, tot is not None and tot.is_zero()))
        if G.add(x, x) == zero:  # self-dual object of the base category
            tot2 = None
            for s in double.simples:
                m = double.induction_multiplicity(x, s)
                if m:
                    term = m * s.dim * (s.twist ** 2).as_cyc()
                    tot2 = term if tot2 is None else tot2 + term
            ok = tot2 is not None and (tot2 == G.order or tot2 == -G.order)
            st.append((x, ok))
    return TraceReport(zt, st)


# ---------------------------------------------------------------------------
# classification scan


@dataclass
class DoubleScanRow:
    group: FiniteAbelianGroup
    omega: ThreeCocycle
    twist_count: int
    twists: frozenset[RootOfUnity]
    rank: int


def classify_doubles_by_twistcount(groups, max_twists: int = 3) -> list[DoubleScanRow]:
    """Scan all cocycle classes on the given groups; keep <= max_twists."""
    rows = []
    for G in groups:
        for omega in enumerate_cocycle_classes(G):
            dbl = TwistedDouble(G, omega)
            tw = dbl.twist_values()
            if len(tw) <= max_twists:
                rows.append(
                    DoubleScanRow(G, omega, len(tw), tw, dbl.rank)
                )
    return rows
