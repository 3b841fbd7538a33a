"""Certified tables of irreducible congruence representations with at most
three distinct t-eigenvalues, and the admissibility machinery built on them.

Representations are stored as descriptors (name, level, dimension,
t-spectrum) only; the arguments here never need matrices.  The sixteen
level-16 classes are counted but their spectra are externally sourced and
excluded from spectrum logic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import RootOfUnity

Z12 = [RootOfUnity(j, 12) for j in range(12)]


def _r(k: int, m: int) -> RootOfUnity:
    return RootOfUnity(k, m)


def _spec(*roots) -> frozenset[RootOfUnity]:
    return frozenset(roots)


@dataclass(frozen=True)
class RepDescriptor:
    name: str
    level: int
    dim: int
    spectrum: frozenset[RootOfUnity] | None  # None: externally sourced
    external: bool = False

    def __post_init__(self):
        if self.spectrum is not None:
            if len(self.spectrum) > 3 or not self.spectrum:
                raise ValueError("spectrum must have 1..3 distinct eigenvalues")
            lvl = math.lcm(*(t.m for t in self.spectrum))
            if lvl != self.level:
                raise ValueError(
                    f"{self.name}: level {self.level} != spectrum order {lvl}"
                )

    def n_distinct(self) -> int:
        return len(self.spectrum) if self.spectrum is not None else 3

    def __str__(self):
        spec = "external" if self.spectrum is None else \
            "{" + ",".join(sorted(t.token() for t in self.spectrum)) + "}"
        return f"{self.name} (level {self.level}, dim {self.dim}, t={spec})"


def _one_dimensionals() -> list[RepDescriptor]:
    out = []
    for j in range(12):
        lvl = 12 // math.gcd(12, j) if j else 1
        out.append(RepDescriptor(f"C_{j}", lvl, 1, _spec(Z12[j])))
    return out


def _two_eigenvalue_rows() -> list[RepDescriptor]:
    return [
        RepDescriptor("N_1(chi_1)", 2, 2, _spec(_r(1, 2), _r(0, 1))),
        RepDescriptor("N_1(chi)", 3, 2, _spec(_r(1, 3), _r(2, 3))),
        RepDescriptor("N_1(chi)xC_4", 3, 2, _spec(_r(0, 1), _r(2, 3))),
        RepDescriptor("N_1(chi)xC_8", 3, 2, _spec(_r(0, 1), _r(1, 3))),
        RepDescriptor("N_2(chi)", 4, 2, _spec(_r(1, 4), _r(3, 4))),
        RepDescriptor("R_1(1,chi_-1)", 5, 2, _spec(_r(1, 5), _r(4, 5))),
        RepDescriptor("R_2(r,chi_-1)", 5, 2, _spec(_r(2, 5), _r(3, 5))),
        RepDescriptor("N_3(chi)+", 8, 2, _spec(_r(3, 8), _r(5, 8))),
        RepDescriptor("N_3(chi)+xC_6", 8, 2, _spec(_r(1, 8), _r(7, 8))),
        RepDescriptor("N_3(chi)+xC_9", 8, 2, _spec(_r(1, 8), _r(3, 8))),
        RepDescriptor("N_3(chi)+xC_3", 8, 2, _spec(_r(5, 8), _r(7, 8))),
    ]


def _three_eigenvalue_rows() -> list[RepDescriptor]:
    rows = [
        RepDescriptor("N_1(chi_1)'", 3, 3, _spec(_r(0, 1), _r(1, 3), _r(2, 3))),
        RepDescriptor("D_2(chi)+", 4, 3, _spec(_r(0, 1), _r(1, 2), _r(1, 4))),
        RepDescriptor("D_2(chi)+xC_6", 4, 3, _spec(_r(0, 1), _r(1, 2), _r(3, 4))),
        RepDescriptor("D_2(chi)+xC_9", 4, 3, _spec(_r(0, 1), _r(1, 4), _r(3, 4))),
        RepDescriptor("D_2(chi)+xC_3", 4, 3, _spec(_r(1, 2), _r(1, 4), _r(3, 4))),
        RepDescriptor("R_1(1,chi_1)", 5, 3, _spec(_r(0, 1), _r(1, 5), _r(4, 5))),
        RepDescriptor("R_1(2,chi_1)", 5, 3, _spec(_r(0, 1), _r(2, 5), _r(3, 5))),
        RepDescriptor("R_1(1,chi_-1)", 7, 3, _spec(_r(1, 7), _r(2, 7), _r(4, 7))),
        RepDescriptor("R_1(2,chi_-1)", 7, 3, _spec(_r(3, 7), _r(5, 7), _r(6, 7))),
        RepDescriptor("R_3^0(1,3,chi)+", 8, 3, _spec(_r(0, 1), _r(1, 8), _r(5, 8))),
        RepDescriptor("R_3^0(1,3,chi)+xC_6", 8, 3, _spec(_r(1, 2), _r(1, 8), _r(5, 8))),
        RepDescriptor("R_3^0(1,3,chi)-", 8, 3, _spec(_r(0, 1), _r(3, 8), _r(7, 8))),
        RepDescriptor("R_3^0(1,3,chi)-xC_6", 8, 3, _spec(_r(1, 2), _r(3, 8), _r(7, 8))),
        RepDescriptor("R_3^0(1,3,chi)+xC_3", 8, 3, _spec(_r(1, 4), _r(3, 8), _r(7, 8))),
        RepDescriptor("R_3^0(1,3,chi)+xC_9", 8, 3, _spec(_r(3, 4), _r(3, 8), _r(7, 8))),
        RepDescriptor("R_3^0(1,3,chi)-xC_3", 8, 3, _spec(_r(1, 4), _r(1, 8), _r(5, 8))),
        RepDescriptor("R_3^0(1,3,chi)-xC_9", 8, 3, _spec(_r(3, 4), _r(1, 8), _r(5, 8))),
    ]
    for base in ("R_4^0(1,1,chi)", "R_4^0(3,1,chi)"):
        for sign in "+-":
            for j in (0, 3, 6, 9):
                rows.append(
                    RepDescriptor(f"{base}{sign}xC_{j}", 16, 3, None, external=True)
                )
    return rows


@lru_cache(maxsize=None)
def rep_table(max_distinct: int) -> tuple[RepDescriptor, ...]:
    """Irreducible congruence representations with <= max_distinct
    t-eigenvalues (1, 2 or 3)."""
    if max_distinct not in (1, 2, 3):
        raise ValueError("max_distinct must be 1, 2 or 3")
    rows = _one_dimensionals()
    if max_distinct >= 2:
        rows += _two_eigenvalue_rows()
    if max_distinct >= 3:
        rows += _three_eigenvalue_rows()
    return tuple(rows)


def _fold_char_name(name: str, j: int) -> str:
    """Characters compose: base xC_k then xC_j is base xC_(k+j mod 12)."""
    if name.startswith("C_") and name[2:].isdigit():
        return f"C_{(int(name[2:]) + j) % 12}"
    head, sep, tail = name.rpartition("xC_")
    if sep and tail.isdigit():
        j = (j + int(tail)) % 12
        name = head
    if j == 0:
        return name
    return f"{name}xC_{j}"


def tensor_with_char(rep: RepDescriptor, j: int) -> RepDescriptor:
    """Tensor with the one-dimensional character of t-eigenvalue zeta_12^j."""
    if not 0 <= j <= 11:
        raise ValueError("character index must be in 0..11")
    if j == 0:
        return rep
    if rep.spectrum is None:
        raise ValueError("cannot tensor an externally sourced spectrum")
    w = Z12[j]
    spec = frozenset(t * w for t in rep.spectrum)
    return RepDescriptor(
        _fold_char_name(rep.name, j), math.lcm(*(t.m for t in spec)), rep.dim, spec
    )


# ---------------------------------------------------------------------------
# admissible decompositions


def _candidate_summands(target: frozenset[RootOfUnity]) -> list[RepDescriptor]:
    """All table reps, twisted by any one-dimensional character, whose
    spectrum lands inside the target (deduplicated by spectrum + dim)."""
    out = []
    seen = set()
    for j in range(12):  # untwisted table names take precedence
        for rep in rep_table(3):
            if rep.spectrum is None:
                continue  # external spectra take no part in spectrum logic
            tw = tensor_with_char(rep, j)
            if tw.spectrum <= target:
                key = (tw.dim, tw.spectrum)
                if key not in seen:
                    seen.add(key)
                    out.append(tw)
    return out


def _connected(specs: list[frozenset]) -> bool:
    """Spectrum-sharing graph on the summands is connected."""
    if not specs:
        return False
    n = len(specs)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in range(n):
                if j not in seen and specs[i] & specs[j]:
                    seen.add(j)
                    nxt.append(j)
        frontier = nxt
    return len(seen) == n


@dataclass(frozen=True)
class AdmissibleSum:
    """A multiset support: each rep may occur with any multiplicity >= 1."""

    summands: tuple[RepDescriptor, ...]

    def __str__(self):
        return " + ".join(f"m_{i}*{r.name}" for i, r in enumerate(self.summands))


def admissible_sums(target) -> list[AdmissibleSum]:
    """All ways to cover the target spectrum by irreducible summands such
    that every summand spectrum is inside the target, their union is the
    target, and the spectrum-sharing graph is connected."""
    target = frozenset(target)
    if len(target) > 3:
        raise ValueError("target spectrum must have at most 3 eigenvalues")
    cands = _candidate_summands(target)
    out = []
    for k in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            specs = [c.spectrum for c in combo]
            union = frozenset().union(*specs)
            if union != target:
                continue
            if not _connected(specs):
                continue
            out.append(AdmissibleSum(tuple(combo)))
    return out


# ---------------------------------------------------------------------------
# twist candidates


@dataclass(frozen=True)
class TwistCandidate:
    t_spectrum: frozenset[RootOfUnity]
    gamma: RootOfUnity
    xi: RootOfUnity
    twists: frozenset[RootOfUnity]


def twist_candidates(spectrum) -> list[TwistCandidate]:
    """For each choice of the unit eigenvalue t_1 in the spectrum:
    gamma = t_1^{-1}, xi = gamma^3, twists = spectrum * gamma."""
    spectrum = frozenset(spectrum)
    if len(spectrum) > 3:
        raise ValueError("spectrum must have at most 3 eigenvalues")
    out = []
    for t1 in sorted(spectrum, key=lambda t: t.sort_key()):
        gamma = t1.inverse()
        twists = frozenset(t * gamma for t in spectrum)
        out.append(
            TwistCandidate(spectrum, gamma, gamma ** 3, twists)
        )
    return out


def table_csv(max_distinct: int = 3) -> str:
    """CSV dump: name, level, dim, spectrum as k/m tokens."""
    lines = ["name,level,dim,spectrum"]
    for rep in rep_table(max_distinct):
        spec = "external" if rep.spectrum is None else \
            ";".join(f"{t.k}/{t.m}" for t in sorted(rep.spectrum, key=lambda r: r.sort_key()))
        lines.append(f"{rep.name},{rep.level},{rep.dim},{spec}")
    return "\n".join(lines) + "\n"
