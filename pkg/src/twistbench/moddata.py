"""Modular data (S, T) with exact axiom validation.

S is stored unnormalized (first row = dimensions, S[0][0] = 1); T is a
diagonal of roots of unity.  Validation covers symmetry, the unit row,
Verlinde integrality and nonnegativity, the Gauss-sum identity
tau_1 * tau_-1 = D, the balancing identity, the SL(2,Z) relations in
denormalized form, and divisibility of the T-order by the t-order.  A
report records per-check outcomes so searches can see which axiom broke.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import (
    CycNumber,
    RootOfUnity,
    as_root_of_unity,
    cyc,
    identity_sign,
    is_totally_positive,
)
from . import fastcheck


class InvalidDataError(ValueError):
    pass


class DegenerateDataError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class ModularData:
    """Unnormalized modular data: exact S matrix and diagonal T."""

    def __init__(self, S, T, name: str = ""):
        S = tuple(tuple(_to_cyc(e) for e in row) for row in S)
        T = tuple(_to_root(t) for t in T)
        r = len(S)
        if r == 0 or any(len(row) != r for row in S) or len(T) != r:
            raise InvalidDataError("S must be square and T of matching length")
        self.S = S
        self.T = T
        self.rank = r
        self.name = name
        self._cache: dict = {}

    # -- basic invariants

    @property
    def dims(self) -> tuple[CycNumber, ...]:
        return self.S[0]

    @property
    def global_dim(self) -> CycNumber:
        if "D" not in self._cache:
            tot = cyc(0)
            for d in self.dims:
                tot = tot + d * d
            self._cache["D"] = tot
        return self._cache["D"]

    @property
    def conductor(self) -> int:
        if "cond" not in self._cache:
            n = 1
            for row in self.S:
                for e in row:
                    n = _lcm(n, e.reduced().n)
            for t in self.T:
                n = _lcm(n, t.m)
            self._cache["cond"] = n
        return self._cache["cond"]

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<ModularData rank={self.rank}{tag}>"

    # -- serialization (schema moddata-v1)

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "conductor": self.conductor,
            "S": [[e.to_dict() for e in row] for row in self.S],
            "T": [{"k": t.k, "m": t.m} for t in self.T],
        }

    @staticmethod
    def from_json_dict(d: dict, name: str = "") -> "ModularData":
        S = [[CycNumber.from_dict(e) for e in row] for row in d["S"]]
        T = [RootOfUnity(t["k"], t["m"]) for t in d["T"]]
        return ModularData(S, T, name=name)

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _to_cyc(e) -> CycNumber:
    if isinstance(e, CycNumber):
        return e
    if isinstance(e, RootOfUnity):
        return e.as_cyc()
    return cyc(e)


def _to_root(t) -> RootOfUnity:
    if isinstance(t, RootOfUnity):
        return t
    if isinstance(t, str):
        return RootOfUnity.parse(t)
    raise InvalidDataError(f"bad twist entry {t!r}")


# ---------------------------------------------------------------------------
# Gauss sums, exponents, central charge


def gauss_sum(md: ModularData, m: int = 1) -> CycNumber:
    """tau_m = sum of dim(X)^2 * theta_X^m."""
    tot = cyc(0)
    for d, t in zip(md.dims, md.T):
        tot = tot + d * d * (t ** m).as_cyc()
    return tot


def fs_exponent(md: ModularData) -> int:
    """Order of the T matrix."""
    n = 1
    for t in md.T:
        n = _lcm(n, t.m)
    return n


def central_charge(md: ModularData) -> RootOfUnity:
    """The root of unity xi with tau_1 = xi * sqrt(D).

    sqrt(D) is the square root positive under the identity embedding
    (the positive root when D is rational).
    """
    if "xi" in md._cache:
        return md._cache["xi"]
    tau1 = gauss_sum(md, 1)
    if tau1.is_zero():
        raise DegenerateDataError("tau_1 = 0, no central charge")
    xi2 = tau1 * tau1 / md.global_dim
    u2 = as_root_of_unity(xi2)
    if u2 is None:
        raise InvalidDataError("tau_1^2 / D is not a root of unity")
    for u in (RootOfUnity(u2.k, 2 * u2.m), RootOfUnity(u2.k + u2.m, 2 * u2.m)):
        sqrt_d = tau1 / u.as_cyc()
        if sqrt_d.is_real() and identity_sign(sqrt_d) > 0:
            md._cache["xi"] = u
            md._cache["sqrtD"] = sqrt_d
            return u
    raise InvalidDataError("no root of unity u with tau_1/u real positive")


def sqrt_global_dim(md: ModularData) -> CycNumber:
    central_charge(md)
    return md._cache["sqrtD"]


def anomaly_root(md: ModularData) -> RootOfUnity:
    """gamma: the cube root of xi of minimal argument (the exposed convention)."""
    xi = central_charge(md)
    cands = [RootOfUnity(xi.k + j * xi.m, 3 * xi.m) for j in range(3)]
    return min(cands, key=lambda r: r.sort_key())


def t_order(md: ModularData) -> int:
    """Order of t = gamma^{-1} T."""
    g = anomaly_root(md).inverse()
    n = 1
    for th in md.T:
        n = _lcm(n, (th * g).m)
    return n


def normalized_t(md: ModularData) -> tuple[RootOfUnity, tuple[RootOfUnity, ...]]:
    """The chosen gamma together with the normalized diagonal gamma^{-1} T.

    The s-matrix side of the normalized pair is S scaled by the square
    root of D fixed in central_charge; downstream results quote gamma so
    the convention is visible."""
    g = anomaly_root(md)
    ginv = g.inverse()
    return g, tuple(th * ginv for th in md.T)


# ---------------------------------------------------------------------------
# Verlinde coefficients


def verlinde(md: ModularData, i: int, j: int, k: int) -> Fraction:
    """Fusion coefficient N_ij^k from the Verlinde sum; exact rational."""
    num = cyc(0)
    D = md.global_dim
    for m in range(md.rank):
        num = num + md.S[i][m] * md.S[j][m] * md.S[k][m].conj() / md.S[0][m]
    val = num / D
    if not val.is_rational():
        raise InvalidDataError(f"Verlinde N_{i}{j}^{k} is irrational: {val!r}")
    return val.as_fraction()


def verlinde_tensor(md: ModularData):
    """Full fusion tensor as nested lists of rationals (generic exact path)."""
    if "Ntensor" in md._cache:
        return md._cache["Ntensor"]
    fast = fastcheck.monomial_form(md)
    if fast is not None:
        ok, tensor, msg = fastcheck.verlinde_tensor_fast(fast)
        if ok:
            md._cache["Ntensor"] = tensor
            return tensor
        raise InvalidDataError(f"Verlinde failure: {msg}")
    r = md.rank
    D = md.global_dim
    cols = [[md.S[i][m] for i in range(r)] for m in range(r)]
    conj_cols = [[e.conj() for e in col] for col in cols]
    invw = [(D * md.S[0][m]).inverse() for m in range(r)]
    tensor = [[[Fraction(0)] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                acc = cyc(0)
                for m in range(r):
                    acc = acc + cols[m][i] * cols[m][j] * conj_cols[m][k] * invw[m]
                if not acc.is_rational():
                    raise InvalidDataError(f"Verlinde N_{i}{j}^{k} irrational")
                tensor[i][j][k] = acc.as_fraction()
    md._cache["Ntensor"] = tensor
    return tensor


def dual_permutation(md: ModularData) -> list[int]:
    """dual(i) = the unique k with N_ik^0 = 1."""
    tensor = verlinde_tensor(md)
    r = md.rank
    dual = []
    for i in range(r):
        hits = [k for k in range(r) if tensor[i][k][0] == 1]
        if len(hits) != 1 or any(tensor[i][k][0] != 0 for k in range(r) if k != hits[0]):
            raise InvalidDataError(f"no unique dual for index {i}")
        dual.append(hits[0])
    return dual


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def __str__(self):
        lines = []
        for name, ok, detail in self.checks:
            mark = "pass" if ok else "FAIL"
            lines.append(f"{mark}  {name}" + (f"  ({detail})" if detail else ""))
        return "\n".join(lines)


def validate(md: ModularData) -> ValidationReport:
    """Run every modular-data axiom check; never raises on mere failure."""
    rep = ValidationReport()
    r = md.rank

    sym = all(md.S[i][j] == md.S[j][i] for i in range(r) for j in range(i + 1, r))
    rep.add("symmetric", sym)

    unit_ok = md.S[0][0] == 1 and md.T[0] == RootOfUnity(0, 1)
    dims_ok = all((not d.is_zero()) and d.is_real() for d in md.dims)
    rep.add("unit_row", unit_ok and dims_ok,
            "" if unit_ok and dims_ok else "S[0][0], T[0] or dim reality failed")
    if not (sym and unit_ok and dims_ok):
        rep.add("verlinde", False, "skipped: structural checks failed")
        return rep

    fast = fastcheck.monomial_form(md)

    try:
        tensor = verlinde_tensor(md)
        bad = None
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    v = tensor[i][j][k]
                    if v != int(v) or v < 0:
                        bad = (i, j, k, v)
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("verlinde", bad is None, "" if bad is None else f"N{bad[:3]}={bad[3]}")
    except InvalidDataError as e:
        rep.add("verlinde", False, str(e))
        tensor = None

    tau1 = gauss_sum(md, 1)
    taum1 = gauss_sum(md, -1)
    rep.add("gauss_product", tau1 * taum1 == md.global_dim)

    if tensor is not None:
        if fast is not None:
            ok, msg = fastcheck.balancing_fast(fast, tensor)
        else:
            ok, msg = _balancing_generic(md, tensor)
        rep.add("balancing", ok, msg)
    else:
        rep.add("balancing", False, "skipped: no fusion tensor")

    if fast is not None:
        ok, msg = fastcheck.sl2_relations_fast(fast, tau1)
        rep.add("sl2_relations", ok, msg)
    else:
        rep.add("sl2_relations", *_sl2_relations_generic(md, tau1))

    try:
        central_charge(md)
        n = t_order(md)
        N = fs_exponent(md)
        rep.add("fs_divides_t_order", n % N == 0, f"N={N}, n={n}")
    except (DegenerateDataError, InvalidDataError) as e:
        rep.add("fs_divides_t_order", False, str(e))

    return rep


def _balancing_generic(md, tensor):
    r = md.rank
    for i in range(r):
        for j in range(r):
            lhs = md.S[i][j] * (md.T[i] * md.T[j]).as_cyc()
            rhs = cyc(0)
            for k in range(r):
                c = tensor[i][j][k]
                if c:
                    rhs = rhs + cyc(c) * md.dims[k] * md.T[k].as_cyc()
            if lhs != rhs:
                return False, f"balancing fails at ({i},{j})"
    return True, ""


def _sl2_relations_generic(md, tau1):
    r = md.rank
    D = md.global_dim
    S = md.S

    def matmul(A, B):
        return [
            [sum((A[i][m] * B[m][j] for m in range(r)), cyc(0)) for j in range(r)]
            for i in range(r)
        ]

    S2 = matmul(S, S)
    S4 = matmul(S2, S2)
    D2 = D * D
    ok_s4 = all(
        S4[i][j] == (D2 if i == j else cyc(0)) for i in range(r) for j in range(r)
    )
    ST = [[S[i][j] * md.T[j].as_cyc() for j in range(r)] for i in range(r)]
    ST3 = matmul(matmul(ST, ST), ST)
    tD = tau1 * D
    ok_st = all(
        ST3[i][j] == (tD if i == j else cyc(0)) for i in range(r) for j in range(r)
    )
    ok_comm = all(
        S2[i][j] * md.T[j].as_cyc() == md.T[i].as_cyc() * S2[i][j]
        for i in range(r)
        for j in range(r)
    )
    msg = "" if ok_s4 and ok_st and ok_comm else \
        f"s4={ok_s4} (st)3={ok_st} comm={ok_comm}"
    return ok_s4 and ok_st and ok_comm, msg


# ---------------------------------------------------------------------------
# twist spectrum


def twist_spectrum(md: ModularData) -> dict[RootOfUnity, CycNumber]:
    """D_zeta = sum of dim^2 over simples of twist zeta."""
    out: dict[RootOfUnity, CycNumber] = {}
    for d, t in zip(md.dims, md.T):
        out[t] = out.get(t, cyc(0)) + d * d
    return out


def twist_set(md: ModularData) -> frozenset[RootOfUnity]:
    return frozenset(md.T)


def check_twist_spectrum(md: ModularData) -> bool:
    """Spectrum invariants: sums to D, each class totally positive, D_1 >= 1."""
    spec = twist_spectrum(md)
    tot = cyc(0)
    for v in spec.values():
        tot = tot + v
        if not is_totally_positive(v):
            return False
    one = spec.get(RootOfUnity(0, 1), cyc(0))
    if not is_totally_positive(one - 1) and one != cyc(1):
        return False
    return tot == md.global_dim


# ---------------------------------------------------------------------------
# Galois permutation


def galois_permutation(md: ModularData, k: int, check_t: bool = True) -> list[int]:
    """Permutation sigma-hat with sigma(S[j][x]/S[0][x]) = S[j][p(x)]/S[0][p(x)].

    Raises InvalidDataError when no consistent permutation exists.  When
    check_t is set, also verifies t_{p(x)} = sigma^2(t_x) on normalized data,
    lifting k to a unit modulo the larger conductor that contains gamma.
    """
    n = md.conductor
    if math.gcd(k, n) != 1:
        raise ValueError(f"k={k} not coprime to conductor {n}")
    r = md.rank
    cols = []
    for x in range(r):
        inv = md.S[0][x].inverse()
        cols.append(tuple((md.S[j][x] * inv).reduced() for j in range(r)))
    index = {}
    for x, col in enumerate(cols):
        if col in index:
            raise InvalidDataError("duplicate normalized columns")
        index[col] = x
    perm = []
    for x in range(r):
        target = tuple(e.galois(k) for e in cols[x])
        if target not in index:
            raise InvalidDataError(f"no Galois image column for index {x} (k={k})")
        perm.append(index[target])
    if check_t:
        g = anomaly_root(md)
        n_full = _lcm(n, g.m)
        kk = next(
            k + j * n for j in range(n_full // n + 1)
            if math.gcd(k + j * n, n_full) == 1
        )
        ginv = g.inverse()
        for x in range(r):
            tx = md.T[x] * ginv
            if md.T[perm[x]] * ginv != tx ** (kk * kk):
                raise InvalidDataError(
                    f"t-eigenvalue Galois relation fails at {x} (k={k})"
                )
    return perm


# ---------------------------------------------------------------------------
# products and relabeling


def product(a: ModularData, b: ModularData) -> ModularData:
    """Deligne product: Kronecker S, pointwise T."""
    ra, rb = a.rank, b.rank
    S = [
        [a.S[i1][j1] * b.S[i2][j2] for j1 in range(ra) for j2 in range(rb)]
        for i1 in range(ra)
        for i2 in range(rb)
    ]
    T = [a.T[i1] * b.T[i2] for i1 in range(ra) for i2 in range(rb)]
    name = f"{a.name}*{b.name}" if a.name and b.name else ""
    return ModularData(S, T, name=name)


def equal_up_to_relabeling(a: ModularData, b: ModularData):
    """A permutation p with b.S[i][j] = a.S[p[i]][p[j]], b.T[i] = a.T[p[i]],
    or None.  Colors by (twist, dim) and refines before backtracking."""
    if a.rank != b.rank:
        return None
    r = a.rank

    def colorize(md):
        colors = [hash((md.T[i], md.dims[i])) for i in range(r)]
        for _ in range(r):
            nxt = []
            for i in range(r):
                sig = sorted((colors[j], hash(md.S[i][j])) for j in range(r))
                nxt.append(hash((colors[i], tuple(sig))))
            if nxt == colors:
                break
            colors = nxt
        return colors

    ca, cb = colorize(a), colorize(b)
    if sorted(ca) != sorted(cb):
        return None
    cands = [[x for x in range(r) if ca[x] == cb[i]] for i in range(r)]
    perm: list[int] = []
    used = [False] * r

    def extend(i: int) -> bool:
        if i == r:
            return True
        for x in cands[i]:
            if used[x] or a.T[x] != b.T[i]:
                continue
            ok = all(a.S[x][perm[j]] == b.S[i][j] for j in range(i))
            if ok and a.S[x][x] == b.S[i][i]:
                used[x] = True
                perm.append(x)
                if extend(i + 1):
                    return True
                perm.pop()
                used[x] = False
        return False

    if extend(0):
        return perm
    return None
