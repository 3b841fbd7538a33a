"""Exact arithmetic in real quadratic fields Q(sqrt(d)) for d in {2, 3, 5}.

Covers the number-theoretic side of the classification: algebraic norm and
trace, total positivity by exact sign tests, the degree-2 d-number
criterion (trace^2 divisible by norm), window scans for d-numbers of
5-power norm, and the 2^a * eps^b obstruction scan.  All comparisons are
rational sign tests; no floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber, cyc, zeta

SUPPORTED_D = (2, 3, 5)

_FUNDAMENTAL_UNIT = {
    2: (Fraction(1), Fraction(1)),            # 1 + sqrt2
    3: (Fraction(2), Fraction(1)),            # 2 + sqrt3
    5: (Fraction(1, 2), Fraction(1, 2)),      # golden ratio
}


def _frac_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadFieldElement:
    """a + b*sqrt(d) with exact rational a, b."""

    d: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.d not in SUPPORTED_D:
            raise ValueError(f"unsupported field Q(sqrt({self.d}))")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- ring structure

    def _join(self, other) -> tuple["QuadFieldElement", "QuadFieldElement"]:
        """Coerce both operands into one field; rationals adopt the other
        operand's field, genuinely mixed irrationals are rejected."""
        if not isinstance(other, QuadFieldElement):
            return self, QuadFieldElement(self.d, Fraction(other), Fraction(0))
        if self.d == other.d:
            return self, other
        if self.b == 0:
            return QuadFieldElement(other.d, self.a, Fraction(0)), other
        if other.b == 0:
            return self, QuadFieldElement(self.d, other.a, Fraction(0))
        raise ValueError("mixed quadratic fields")

    def _coerce(self, other) -> "QuadFieldElement":
        return self._join(other)[1]

    def __add__(self, other):
        a, o = self._join(other)
        return QuadFieldElement(a.d, a.a + o.a, a.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElement(self.d, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        a, o = self._join(other)
        return QuadFieldElement(
            a.d, a.a * o.a + a.d * a.b * o.b, a.a * o.b + a.b * o.a
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quadratic element")
        return QuadFieldElement(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadFieldElement(self.d, Fraction(1), Fraction(0))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- invariants

    def conj(self):
        return QuadFieldElement(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign of the identity embedding a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        big_a = a * a > self.d * b * b
        if a > 0:
            return 1 if big_a else -1
        return -1 if big_a else 1

    def embedding_signs(self) -> tuple[int, int]:
        return self.sign(), self.conj().sign()

    def is_totally_geq(self, c) -> bool:
        """True iff both real embeddings are >= c."""
        x = self - Fraction(c)
        return x.sign() >= 0 and x.conj().sign() >= 0

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conj().sign() > 0

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    # -- integrality and d-numbers

    def is_algebraic_integer(self) -> bool:
        if self.d % 4 == 1:
            return (2 * self.a).denominator == 1 and (2 * self.b).denominator == 1 \
                and (self.a - self.b).denominator == 1
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_d_number(self) -> bool:
        """Degree <= 2 criterion: trace^2 divisible by norm over Z."""
        if not self.is_algebraic_integer():
            raise ValueError(f"{self} is not an algebraic integer")
        if self.a == 0 and self.b == 0:
            raise ValueError("zero is excluded")
        if self.b == 0:
            return True
        t = self.trace()
        n = self.norm()
        assert t.denominator == 1 and n.denominator == 1
        return (t.numerator ** 2) % abs(n.numerator) == 0

    def sqrt(self):
        """A square root in the same field, or None."""
        A, B = self.a, self.b
        if B == 0:
            r = _frac_sqrt(A)
            if r is not None:
                return QuadFieldElement(self.d, r, Fraction(0))
            r = _frac_sqrt(A / self.d)
            if r is not None:
                return QuadFieldElement(self.d, Fraction(0), r)
            return None
        s = _frac_sqrt(A * A - self.d * B * B)
        if s is None:
            return None
        for x2 in ((A + s) / 2, (A - s) / 2):
            x = _frac_sqrt(x2)
            if x is not None and x != 0:
                cand = QuadFieldElement(self.d, x, B / (2 * x))
                if cand * cand == self:
                    return cand
        return None

    # -- conversions

    def to_cyc(self) -> CycNumber:
        """Embed into the cyclotomic field via the standard sqrt expression."""
        return cyc(self.a) + cyc(self.b) * sqrt_cyc(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"Quad({self.a})"
        return f"Quad({self.a} + {self.b}*sqrt{self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        bs = "" if self.b == 1 else f"{self.b}*"
        return f"{self.a} + {bs}sqrt({self.d})" if self.b > 0 else \
            f"{self.a} - {bs.replace('-', '')}sqrt({self.d})".replace("--", "")


def quad(d: int, a, b=0) -> QuadFieldElement:
    return QuadFieldElement(d, Fraction(a), Fraction(b))


def fundamental_unit(d: int) -> QuadFieldElement:
    a, b = _FUNDAMENTAL_UNIT[d]
    return QuadFieldElement(d, a, b)


def sqrt_cyc(d: int) -> CycNumber:
    """sqrt(d) as an exact cyclotomic number (positive identity embedding)."""
    if d == 2:
        return zeta(8) + zeta(8) ** 7
    if d == 3:
        return zeta(12) + zeta(12) ** 11
    if d == 5:
        return zeta(5) + zeta(5) ** 4 - zeta(5) ** 2 - zeta(5) ** 3
    raise ValueError(f"unsupported d={d}")


def quad_from_cyc(x: CycNumber, d: int):
    """Recognize a cyclotomic number as a + b*sqrt(d), or None."""
    r = x.reduced()
    if r.is_rational():
        return QuadFieldElement(d, r.as_fraction(), Fraction(0))
    s = sqrt_cyc(d).embed(0) if False else sqrt_cyc(d)
    # align conductors and solve x = a*1 + b*s coordinatewise: in the power
    # basis the element 1 occupies coordinate 0 only.
    m = r.n * s.reduced().n // math.gcd(r.n, s.reduced().n)
    xr = r.embed(m)
    sr = s.reduced().embed(m)
    b = None
    for i in range(1, len(xr.coeffs)):
        if sr.coeffs[i]:
            b = xr.coeffs[i] / sr.coeffs[i]
            break
    if b is None:
        return None
    a = xr.coeffs[0] - b * sr.coeffs[0]
    cand = QuadFieldElement(d, a, b)
    if cand.to_cyc() == r:
        return cand
    return None


# ---------------------------------------------------------------------------
# d-number window scan in Q(sqrt5)


def d_numbers_q5_in_window(norm_base: int = 5, low=1, high=18) -> list[QuadFieldElement]:
    """All d-numbers in Q(sqrt5) with norm a power of norm_base whose Galois
    conjugates both lie strictly between low and high.

    Scans alpha^2 = norm_base^j * phi^m over the finite window of exponents
    the bounds force, then filters exactly.
    """
    low = Fraction(low)
    high = Fraction(high)
    if high <= low or high <= 0:
        return []
    phi = fundamental_unit(5)
    hi2 = high * high
    out = []
    seen = set()
    j = 0
    while Fraction(norm_base) ** j < hi2:
        base = Fraction(norm_base) ** j
        # |m| window: norm_base^j * phi^|m| < high^2 in the larger embedding
        m = 0
        while True:
            grow = phi ** abs(m) if m else quad(5, 1)
            if (grow * base).sign() > 0 and (grow * base - hi2).sign() > 0:
                break
            for mm in {m, -m}:
                alpha2 = quad(5, base) * phi ** mm
                alpha = alpha2.sqrt()
                if alpha is None:
                    continue
                for cand in (alpha, -alpha):
                    key = (cand.a, cand.b)
                    if key in seen:
                        continue
                    seen.add(key)
                    if not cand.is_algebraic_integer():
                        continue
                    lo_ok = (cand - low).sign() > 0 and (cand - low).conj().sign() > 0
                    hi_ok = (high - cand).sign() > 0 and (high - cand).conj().sign() > 0
                    if lo_ok and hi_ok and cand.is_d_number():
                        out.append(cand)
            m += 1
        j += 1
    out.sort(key=lambda x: (x.a, x.b))
    return out


def sqrt2_obstruction_scan(a_max: int, b_max: int) -> list[QuadFieldElement]:
    """Scan alpha = 2^a*eps^b and 2^a*eps^b*sqrt2 (eps = 1+sqrt2, a<=a_max,
    1<=b<=b_max) for totally >= 2 elements with alpha-1 a d-number.

    Expected empty: a nonempty return would witness a failure of the
    integrality obstruction this scan checks.
    """
    if a_max < 1 or b_max < 1:
        raise ValueError("bounds must be >= 1")
    eps = fundamental_unit(2)
    root2 = quad(2, 0, 1)
    hits = []
    for b in range(1, b_max + 1):
        eb = eps ** b
        for a in range(0, a_max + 1):
            for alpha in (quad(2, 2 ** a) * eb, quad(2, 2 ** a) * eb * root2):
                if not alpha.is_totally_geq(2):
                    continue
                if (alpha - 1).is_d_number():
                    hits.append(alpha)
    return hits
