"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as coefficient vectors over the power basis
1, zeta, ..., zeta^(phi(n)-1) with Fraction coefficients, reduced modulo
the n-th cyclotomic polynomial.  Conductors are minimized lazily, so
equality and hashing are always decided on canonical forms.  Real
embedding signs are decided by rational interval arithmetic, never by
floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "RootOfUnity",
    "CycNumber",
    "cyc",
    "zeta",
    "euler_phi",
    "factorize",
    "identity_sign",
    "is_totally_positive",
    "roots_of_unity_in",
    "as_root_of_unity",
]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a small positive integer."""
    assert n >= 1
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    phi = 1
    for p, k in factorize(n).items():
        phi *= p ** (k - 1) * (p - 1)
    return phi


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense, ascending coefficients)


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials with monic-ish denominator."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    while num and num[-1] == 0:
        num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in divisors(n):
        if d < n:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_coeffs(d)))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Power basis expansion of zeta_n^e for 0 <= e < max(n, 2*phi(n))."""
    phi = euler_phi(n)
    top = max(n, 2 * phi)
    cyclo = cyclotomic_coeffs(n)
    rows: list[tuple[int, ...]] = []
    for e in range(phi):
        row = [0] * phi
        row[e] = 1
        rows.append(tuple(row))
    for e in range(phi, top):
        prev = rows[e - 1]
        shifted = [0] + list(prev[: phi - 1])
        lead = prev[phi - 1]
        if lead:
            for j in range(phi):
                shifted[j] -= lead * cyclo[j]
        rows.append(tuple(shifted))
    return tuple(rows)


# ---------------------------------------------------------------------------
# roots of unity


class RootOfUnity:
    """exp(2*pi*i*k/m) stored as the reduced fraction k/m."""

    __slots__ = ("k", "m")

    def __init__(self, k: int, m: int):
        if m <= 0:
            raise ValueError("order must be positive")
        k %= m
        g = math.gcd(k, m)
        object.__setattr__(self, "k", k // g)
        object.__setattr__(self, "m", m // g)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("RootOfUnity is immutable")

    @property
    def order(self) -> int:
        return self.m

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = self.m * other.m
        return RootOfUnity(self.k * other.m + other.k * self.m, m)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.k, self.m)

    conj = inverse

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.k * e, self.m)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and self.k == other.k and self.m == other.m

    def __hash__(self) -> int:
        return hash((self.k, self.m))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.k}, {self.m})"

    def __str__(self) -> str:
        return self.token()

    def sort_key(self) -> Fraction:
        return Fraction(self.k, self.m)

    def token(self) -> str:
        """CLI token: 1, -1, i, -i, or zM^k."""
        if self.m == 1:
            return "1"
        if self.m == 2:
            return "-1"
        if self.m == 4:
            return "i" if self.k == 1 else "-i"
        if self.k == 1:
            return f"z{self.m}"
        return f"z{self.m}^{self.k}"

    @staticmethod
    def parse(tok: str) -> "RootOfUnity":
        tok = tok.strip()
        simple = {"1": (0, 1), "-1": (1, 2), "i": (1, 4), "-i": (3, 4)}
        if tok in simple:
            return RootOfUnity(*simple[tok])
        if not tok.startswith("z"):
            raise ValueError(f"bad root-of-unity token {tok!r}")
        body = tok[1:]
        if "^" in body:
            ms, ks = body.split("^", 1)
            return RootOfUnity(int(ks), int(ms))
        return RootOfUnity(1, int(body))

    def as_cyc(self) -> "CycNumber":
        return zeta(self.m) ** self.k if self.m > 1 else cyc(1)


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


# ---------------------------------------------------------------------------
# cyclotomic numbers


class CycNumber:
    """Element of Q(zeta_n) over the power basis, exact."""

    __slots__ = ("n", "coeffs", "_hash", "_min")

    def __init__(self, n: int, coeffs, _minimal: bool = False):
        phi = euler_phi(n)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != phi:
            raise ValueError(f"need {phi} coefficients for conductor {n}, got {len(cs)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_min", _minimal)

    def __setattr__(self, *a):
        raise AttributeError("CycNumber is immutable")

    # -- construction helpers

    @staticmethod
    def from_rational(q) -> "CycNumber":
        return CycNumber(1, (Fraction(q),), _minimal=True)

    @staticmethod
    def from_exponents(n: int, terms: dict[int, Fraction]) -> "CycNumber":
        """Sum of q * zeta_n^e over terms {e: q}."""
        tab = _reduction_table(n)
        phi = euler_phi(n)
        acc = [Fraction(0)] * phi
        for e, q in terms.items():
            if not q:
                continue
            row = tab[e % n]
            for j in range(phi):
                if row[j]:
                    acc[j] += q * row[j]
        return CycNumber(n, acc)

    # -- basic structure

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conductor moves

    def embed(self, m: int) -> "CycNumber":
        """Rewrite in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        assert m % self.n == 0
        step = m // self.n
        return CycNumber.from_exponents(
            m, {i * step: c for i, c in enumerate(self.coeffs) if c}
        )

    def _fixed_by(self, k: int) -> bool:
        return self._galois_raw(k).coeffs == self.coeffs

    def _galois_raw(self, k: int) -> "CycNumber":
        return CycNumber.from_exponents(
            self.n, {(i * k) % self.n: c for i, c in enumerate(self.coeffs) if c}
        )

    def reduced(self) -> "CycNumber":
        """Canonical form with minimal conductor."""
        if self._min:
            return self
        n = self.n
        if self.is_rational():
            return CycNumber(1, (self.coeffs[0],), _minimal=True)
        for m in divisors(n):
            if m == n:
                break
            if m % 4 == 2:
                continue  # Q(zeta_m) = Q(zeta_(m/2)), already tried
            subgroup = [k for k in range(1, n) if k % m == 1 and math.gcd(k, n) == 1]
            if all(self._fixed_by(k) for k in subgroup):
                down = self._solve_in_subfield(m)
                if down is not None:
                    return CycNumber(m, down, _minimal=True)
        return CycNumber(n, self.coeffs, _minimal=True)

    def _solve_in_subfield(self, m: int):
        """Express self over the power basis of Q(zeta_m) in Q(zeta_n)."""
        n = self.n
        phi_m = euler_phi(m)
        phi_n = euler_phi(n)
        basis = [zeta(m, _raw=True)._pow_raw(j).embed(n).coeffs for j in range(phi_m)]
        # solve sum_j x_j * basis[j] = coeffs by Gaussian elimination
        rows = [[basis[j][i] for j in range(phi_m)] + [self.coeffs[i]] for i in range(phi_n)]
        piv = 0
        pivots = []
        for col in range(phi_m):
            sel = next((r for r in range(piv, phi_n) if rows[r][col] != 0), None)
            if sel is None:
                continue
            rows[piv], rows[sel] = rows[sel], rows[piv]
            inv = 1 / rows[piv][col]
            rows[piv] = [v * inv for v in rows[piv]]
            for r in range(phi_n):
                if r != piv and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv])]
            pivots.append(col)
            piv += 1
        sol = [Fraction(0)] * phi_m
        for r, col in enumerate(pivots):
            sol[col] = rows[r][phi_m]
        for r in range(piv, phi_n):
            if rows[r][phi_m] != 0:
                return None  # not actually in the subfield
        return sol

    # -- arithmetic

    def _align(self, other: "CycNumber") -> tuple["CycNumber", "CycNumber", int]:
        if self.n == other.n:
            return self, other, self.n
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.embed(m), other.embed(m), m

    def __add__(self, other) -> "CycNumber":
        other = _coerce(other)
        a, b, m = self._align(other)
        return CycNumber(m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.n, [-c for c in self.coeffs], _minimal=self._min)

    def __sub__(self, other) -> "CycNumber":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "CycNumber":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "CycNumber":
        other = _coerce(other)
        if self.is_rational():
            q = self.coeffs[0]
            return CycNumber(other.n, [q * c for c in other.coeffs])
        if other.is_rational():
            q = other.coeffs[0]
            return CycNumber(self.n, [q * c for c in self.coeffs])
        a, b, m = self._align(other)
        tab = _reduction_table(m)
        phi = euler_phi(m)
        acc = [Fraction(0)] * phi
        nz_b = [(j, cb) for j, cb in enumerate(b.coeffs) if cb]
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            for j, cb in nz_b:
                q = ca * cb
                row = tab[i + j]
                for t in range(phi):
                    if row[t]:
                        acc[t] += q * row[t]
        return CycNumber(m, acc)

    __rmul__ = __mul__

    def _pow_raw(self, e: int) -> "CycNumber":
        out = CycNumber(1, (Fraction(1),), _minimal=True)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __pow__(self, e: int) -> "CycNumber":
        if e < 0:
            return self.inverse() ** (-e)
        return self._pow_raw(e)

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse via extended Euclid mod the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CycNumber.from_rational(1 / self.coeffs[0])
        n = self.n
        mod = [Fraction(c) for c in cyclotomic_coeffs(n)]
        a = list(self.coeffs)
        while a and a[-1] == 0:
            a.pop()
        # extended gcd of a and mod in Q[x]
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        t0 = [Fraction(1)]
        del t0
        while True:
            if len(r1) == 1:
                break
            q, r = _poly_divmod_frac(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, r
            s0, s1 = s1, s
            if not r1:
                raise ZeroDivisionError("element not invertible (unexpected)")
        c = r1[0]
        inv_coeffs = [v / c for v in s1]
        phi = euler_phi(n)
        inv_coeffs += [Fraction(0)] * (phi - len(inv_coeffs))
        return CycNumber(n, inv_coeffs[:phi])

    def __truediv__(self, other) -> "CycNumber":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return _coerce(other) * self.inverse()

    # -- Galois

    def galois(self, k: int) -> "CycNumber":
        """Apply the automorphism zeta -> zeta^k; k must be coprime to the conductor."""
        r = self.reduced()
        if math.gcd(k, r.n) != 1:
            raise ValueError(f"k={k} not coprime to conductor {r.n}")
        return r._galois_raw(k)

    def conj(self) -> "CycNumber":
        r = self.reduced()
        return r if r.n == 1 else r._galois_raw(r.n - 1)

    def is_real(self) -> bool:
        return self.conj() == self

    # -- comparison / hashing / io

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNumber.from_rational(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b, _ = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            r = self.reduced()
            object.__setattr__(self, "_hash", hash((r.n, r.coeffs)))
        return self._hash

    def __repr__(self) -> str:
        r = self.reduced()
        if r.is_rational():
            return f"Cyc({r.coeffs[0]})"
        terms = [f"{c}*z{r.n}^{i}" for i, c in enumerate(r.coeffs) if c]
        return "Cyc(" + " + ".join(terms) + ")"

    def to_dict(self) -> dict:
        """Serialize as {"n": conductor, "num": numerators, "den": common denominator}."""
        r = self.reduced()
        den = 1
        for c in r.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return {"n": r.n, "num": [int(c * den) for c in r.coeffs], "den": den}

    @staticmethod
    def from_dict(d: dict) -> "CycNumber":
        den = d["den"]
        return CycNumber(d["n"], [Fraction(v, den) for v in d["num"]]).reduced()


def _coerce(x) -> CycNumber:
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, RootOfUnity):
        return x.as_cyc()
    if isinstance(x, (int, Fraction)):
        return CycNumber.from_rational(x)
    raise TypeError(f"cannot coerce {type(x)} to CycNumber")


def cyc(q) -> CycNumber:
    """Rational number as a CycNumber."""
    return CycNumber.from_rational(Fraction(q))


def zeta(n: int, k: int = 1, _raw: bool = False) -> CycNumber:
    """The root of unity exp(2*pi*i*k/n) as a CycNumber."""
    r = RootOfUnity(k, n)
    n, k = r.m, r.k
    if n == 1:
        return cyc(1)
    if n == 2:
        return cyc(-1)
    out = CycNumber.from_exponents(n, {k: Fraction(1)})
    return out if _raw else out.reduced()


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dn = len(den) - 1
    out = [Fraction(0)] * max(len(num) - dn, 0)
    inv = 1 / den[-1]
    for i in range(len(num) - dn - 1, -1, -1):
        q = num[i + dn] * inv
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    while num and num[-1] == 0:
        num.pop()
    return out, num


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# torsion units and recognition


@lru_cache(maxsize=None)
def roots_of_unity_in(n: int) -> tuple[RootOfUnity, ...]:
    """All roots of unity contained in Q(zeta_n)."""
    order = n if n % 2 == 0 else 2 * n
    return tuple(RootOfUnity(k, order) for k in range(order))


def as_root_of_unity(x: CycNumber):
    """Return x as a RootOfUnity, or None if it is not one."""
    r = x.reduced()
    for u in roots_of_unity_in(r.n):
        if u.as_cyc() == r:
            return u
    return None


# ---------------------------------------------------------------------------
# exact sign of real cyclotomic numbers (identity embedding)
#
# Rational interval arithmetic: pi from the Machin formula with alternating
# series tails, cos via Taylor with an interval argument.


class _Ival:
    __slots__ = ("lo", "hi")

    def __init__(self, lo: Fraction, hi: Fraction):
        assert lo <= hi
        self.lo, self.hi = lo, hi

    def __add__(self, o):
        return _Ival(self.lo + o.lo, self.hi + o.hi)

    def __sub__(self, o):
        return _Ival(self.lo - o.hi, self.hi - o.lo)

    def __mul__(self, o):
        vals = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return _Ival(min(vals), max(vals))

    def scale(self, q: Fraction):
        a, b = self.lo * q, self.hi * q
        return _Ival(min(a, b), max(a, b))

    def sign(self):
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None


def _arctan_ival(inv_x: int, terms: int) -> _Ival:
    """Enclosure of arctan(1/inv_x) by alternating partial sums."""
    x = Fraction(1, inv_x)
    s = Fraction(0)
    sign = 1
    lo = hi = None
    p = x
    for j in range(terms):
        s += sign * p / (2 * j + 1)
        if sign > 0:
            hi = s
        else:
            lo = s
        p *= x * x
        sign = -sign
    return _Ival(lo, hi)


@lru_cache(maxsize=None)
def _pi_ival(level: int) -> _Ival:
    terms = 12 + 10 * level
    a = _arctan_ival(5, terms)
    b = _arctan_ival(239, terms)
    lo = 16 * a.lo - 4 * b.hi
    hi = 16 * a.hi - 4 * b.lo
    return _Ival(lo, hi)


@lru_cache(maxsize=None)
def _cos_ival(k: int, n: int, level: int) -> tuple[Fraction, Fraction]:
    """Enclosure of cos(2*pi*k/n)."""
    k %= n
    k = min(k, n - k)  # cos symmetry
    pi = _pi_ival(level)
    theta = pi.scale(Fraction(2 * k, n))
    theta2 = theta * theta
    terms = 16 + 8 * level
    s = _Ival(Fraction(1), Fraction(1))
    p = _Ival(Fraction(1), Fraction(1))
    fact = 1
    for j in range(1, terms):
        p = p * theta2
        fact *= (2 * j - 1) * (2 * j)
        t = p.scale(Fraction((-1) ** j, fact))
        s = s + t
    # alternating tail bound from the next term (theta <= pi so terms shrink fast)
    p = p * theta2
    fact *= (2 * terms - 1) * (2 * terms)
    bound = max(abs(p.lo), abs(p.hi)) / fact * 2
    return (s.lo - bound, s.hi + bound)


def identity_sign(x: CycNumber) -> int:
    """Sign of a real cyclotomic number under zeta_n -> exp(2*pi*i/n)."""
    r = x.reduced()
    if r.is_zero():
        return 0
    if r.is_rational():
        q = r.coeffs[0]
        return (q > 0) - (q < 0)
    if not r.is_real():
        raise ValueError("identity_sign needs a real cyclotomic number")
    for level in range(8):
        lo = Fraction(0)
        hi = Fraction(0)
        for i, c in enumerate(r.coeffs):
            if not c:
                continue
            clo, chi = _cos_ival(i, r.n, level)
            if c > 0:
                lo += c * clo
                hi += c * chi
            else:
                lo += c * chi
                hi += c * clo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
    raise ArithmeticError(f"could not decide sign of {r!r}")


def is_totally_positive(x: CycNumber) -> bool:
    """True iff every real embedding of the (real) number x is positive."""
    r = x.reduced()
    if r.is_zero():
        return False
    if r.is_rational():
        return r.as_fraction() > 0
    for k in range(1, r.n):
        if math.gcd(k, r.n) != 1 or 2 * k > r.n:
            continue  # k and n-k give the same embedding on real numbers
        if identity_sign(r._galois_raw(k)) <= 0:
            return False
    return True
