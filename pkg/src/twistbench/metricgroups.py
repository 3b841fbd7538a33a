"""Finite abelian groups with nondegenerate quadratic forms.

Forms are stored as full value tables (groups here are tiny), enumerated
by brute force over generator values q(e_i) and cross terms b(e_i, e_j)
consistent with q(ax) = q(x)^(a^2) and bilinearity.  Pointed modular data
S[x][y] = b(x,y), T[x] = q(x) is certified by the validator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import RootOfUnity
from .moddata import ModularData

ONE = RootOfUnity(0, 1)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        if any(n < 2 for n in self.factors):
            raise ValueError("cyclic factors must be >= 2")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors) if self.factors else 1

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.factors)))

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scale(self, k: int, x):
        return tuple((k * a) % n for a, n in zip(x, self.factors))

    def zero(self):
        return (0,) * len(self.factors)

    def element_order(self, x) -> int:
        return math.lcm(*(n // math.gcd(n, a) for a, n in zip(x, self.factors))) \
            if self.factors else 1

    def __str__(self):
        return "x".join(f"C{n}" for n in self.factors)


def cyclic_group(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup((n,))


def abelian_group(*factors: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(factors))


@lru_cache(maxsize=None)
def _partitions(k: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    out = []
    for first in range(k, 0, -1):
        for rest in _partitions(k - first):
            if not rest or rest[0] <= first:
                out.append((first,) + rest)
    return tuple(out)


def abelian_groups_of_order(m: int) -> list[FiniteAbelianGroup]:
    """One group per isomorphism class of abelian groups of order m."""
    if m == 1:
        return []
    fact = {}
    mm = m
    p = 2
    while p * p <= mm:
        while mm % p == 0:
            fact[p] = fact.get(p, 0) + 1
            mm //= p
        p += 1
    if mm > 1:
        fact[mm] = fact.get(mm, 0) + 1
    per_prime = []
    for p, k in sorted(fact.items()):
        per_prime.append([tuple(p ** e for e in part) for part in _partitions(k)])
    out = []
    for combo in itertools.product(*per_prime):
        factors = tuple(sorted(itertools.chain.from_iterable(combo)))
        out.append(FiniteAbelianGroup(factors))
    return out


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QuadraticForm:
    group: FiniteAbelianGroup
    values: tuple  # ((element, RootOfUnity), ...) sorted by element

    @property
    def table(self) -> dict:
        return dict(self.values)

    def q(self, x) -> RootOfUnity:
        return self.table[tuple(x)]

    def bilinear(self, x, y) -> RootOfUnity:
        t = self.table
        return t[self.group.add(x, y)] * (t[tuple(x)] * t[tuple(y)]).inverse()

    def twist_values(self) -> frozenset[RootOfUnity]:
        return frozenset(v for _, v in self.values)

    def is_nondegenerate(self) -> bool:
        G = self.group
        els = G.elements()
        zero = G.zero()
        for x in els:
            if x == zero:
                continue
            if all(self.bilinear(x, y) == ONE for y in els):
                return False
        return True

    def check_axioms(self) -> bool:
        """Re-verify q(0)=1, q(-x)=q(x), q(ax)=q(x)^(a^2), bilinearity."""
        G = self.group
        t = self.table
        if t[G.zero()] != ONE:
            return False
        els = G.elements()
        for x in els:
            if t[G.neg(x)] != t[x]:
                return False
            for a in range(2, G.exponent + 1):
                if t[G.scale(a, x)] != t[x] ** (a * a):
                    return False
        for x in els:
            for y in els:
                for z in els:
                    lhs = self.bilinear(G.add(x, y), z)
                    if lhs != self.bilinear(x, z) * self.bilinear(y, z):
                        return False
                break  # bilinearity in the first slot suffices by symmetry
        return True

    def __str__(self):
        return f"q on {self.group}: " + \
            " ".join(v.token() for _, v in self.values)


def _form_from_parameters(G: FiniteAbelianGroup, gen_vals, cross) -> QuadraticForm:
    k = len(G.factors)
    table = {}
    for x in G.elements():
        acc = ONE
        for i in range(k):
            acc = acc * gen_vals[i] ** (x[i] * x[i])
        for (i, j), b in cross.items():
            acc = acc * b ** (x[i] * x[j])
        table[x] = acc
    return QuadraticForm(G, tuple(sorted(table.items())))


def _gram_nondegenerate(G: FiniteAbelianGroup, gen_vals, cross) -> bool:
    """Nondegeneracy from the Gram matrix of the bilinear form: the map
    x -> (b(x, e_j))_j must kill only zero.  Exponent arithmetic in Q/Z."""
    k = len(G.factors)
    gram = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        sq = gen_vals[i] ** 2
        gram[i][i] = Fraction(sq.k, sq.m)
    for (i, j), b in cross.items():
        gram[i][j] = gram[j][i] = Fraction(b.k, b.m)
    for x in G.elements():
        if all(v == 0 for v in x):
            continue
        if all(sum(x[i] * gram[i][j] for i in range(k)) % 1 == 0 for j in range(k)):
            return False
    return True


def enumerate_forms(G: FiniteAbelianGroup, nondegenerate_only: bool = True
                    ) -> list[QuadraticForm]:
    """All quadratic forms on G by brute force over generator assignments."""
    if G.order > 64:
        raise ValueError(f"group of order {G.order} too large")
    k = len(G.factors)
    gen_choices = []
    for n in G.factors:
        m = 2 * n if n % 2 == 0 else n
        gen_choices.append([RootOfUnity(t, m) for t in range(m)])
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    cross_choices = []
    for i, j in pairs:
        g = math.gcd(G.factors[i], G.factors[j])
        cross_choices.append([RootOfUnity(t, g) for t in range(g)])
    total = math.prod(len(c) for c in gen_choices) * \
        math.prod(len(c) for c in cross_choices) if pairs else \
        math.prod(len(c) for c in gen_choices)
    if total > 2_000_000:
        raise ValueError(f"form enumeration too large ({total} candidates)")
    out = []
    for gen_vals in itertools.product(*gen_choices):
        for cross_vals in itertools.product(*cross_choices):
            cross = dict(zip(pairs, cross_vals))
            if nondegenerate_only and not _gram_nondegenerate(G, gen_vals, cross):
                continue
            form = _form_from_parameters(G, gen_vals, cross)
            out.append(form)
    return out


def filter_by_twists(forms, allowed, exact: bool = True):
    """Keep forms whose twist set equals (or is contained in) `allowed`."""
    allowed = frozenset(allowed)
    out = []
    for f in forms:
        tw = f.twist_values()
        if (tw == allowed) if exact else (tw <= allowed):
            out.append(f)
    return out


def metric_modular_data(form: QuadraticForm) -> ModularData:
    """Pointed modular data of a nondegenerate form: S = bilinear, T = q."""
    if not form.is_nondegenerate():
        raise ValueError("degenerate quadratic form")
    G = form.group
    els = G.elements()
    S = [[form.bilinear(x, y).as_cyc() for y in els] for x in els]
    T = [form.q(x) for x in els]
    return ModularData(S, T, name=f"metric_{G}")


# ---------------------------------------------------------------------------
# isometry


@lru_cache(maxsize=None)
def _automorphisms_cached(factors: tuple[int, ...]) -> tuple:
    G = FiniteAbelianGroup(factors)
    els = G.elements()
    k = len(factors)
    candidates = [
        [g for g in els if factors[i] % G.element_order(g) == 0] for i in range(k)
    ]

    def span_size(gens) -> int:
        seen = {G.zero()}
        frontier = [G.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return len(seen)

    autos = []
    for images in itertools.product(*candidates):
        if span_size(images) != G.order:
            continue
        phi = {}
        for x in els:
            y = G.zero()
            for xi, img in zip(x, images):
                y = G.add(y, G.scale(xi, img))
            phi[x] = y
        autos.append(tuple(sorted(phi.items())))
    return tuple(autos)


def automorphisms(G: FiniteAbelianGroup) -> list[dict]:
    if G.order > 16:
        raise ValueError("automorphism enumeration capped at order 16")
    return [dict(a) for a in _automorphisms_cached(G.factors)]


def isometry_classes(forms) -> list[list[QuadraticForm]]:
    """Partition forms on a common group under Aut(G) pullback."""
    if not forms:
        return []
    G = forms[0].group
    autos = automorphisms(G)
    index = {f.values: i for i, f in enumerate(forms)}
    seen = set()
    classes = []
    for f in forms:
        if f.values in seen:
            continue
        orbit = set()
        for phi in autos:
            pulled = tuple(sorted((x, f.table[phi[x]]) for x in G.elements()))
            orbit.add(pulled)
        cls = [forms[index[v]] for v in orbit if v in index]
        for v in orbit:
            seen.add(v)
        classes.append(cls)
    return classes
