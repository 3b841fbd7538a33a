"""Golden modular data: explicit matrices and parameterized generators.

The three explicit data sets are the nontrivial rank-4 double of C2, the
rank-16 pointed double of an order-4 group, and the rank-22 double of
C2^3 (the largest datum with under four distinct twists).  Generators
produce the golden-ratio rank-2 family, the rank-3 family with a fermion,
and the rank-3 adjoint quantum-group family; their S matrices come from
the quantum-integer formula and are certified by the validator rather
than trusted.
"""

from __future__ import annotations

import hashlib
import os
from fractions import Fraction

from .cyclotomic import CycNumber, RootOfUnity, cyc, zeta
from .moddata import ModularData

_I = RootOfUnity(1, 4)
_MI = RootOfUnity(3, 4)


def _parse_matrix(text: str):
    table = {"i": _I.as_cyc(), "-i": _MI.as_cyc()}
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            row.append(table[tok] if tok in table else cyc(int(tok)))
        rows.append(row)
    return rows


_RANK4_S = """
1 1 1 1
1 1 -1 -1
1 -1 -1 1
1 -1 1 -1
"""
_RANK4_T = ["1", "1", "-i", "i"]


_RANK16_S = """
1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1
1 1 1 1 -1 -1 -1 -1 1 1 1 1 -1 -1 -1 -1
1 1 1 1 1 1 1 1 -1 -1 -1 -1 -1 -1 -1 -1
1 1 1 1 -1 -1 -1 -1 -1 -1 -1 -1 1 1 1 1
1 -1 1 -1 -1 1 -1 1 i i -i -i -i i -i i
1 -1 1 -1 1 -1 1 -1 -i -i i i -i i -i i
1 -1 1 -1 -1 1 -1 1 -i -i i i i -i i -i
1 -1 1 -1 1 -1 1 -1 i i -i -i i -i i -i
1 1 -1 -1 i -i -i i -1 1 1 -1 -i -i i i
1 1 -1 -1 i -i -i i 1 -1 -1 1 i i -i -i
1 1 -1 -1 -i i i -i 1 -1 -1 1 -i -i i i
1 1 -1 -1 -i i i -i -1 1 1 -1 i i -i -i
1 -1 -1 1 -i -i i i -i i -i i -1 1 1 -1
1 -1 -1 1 i i -i -i -i i -i i 1 -1 -1 1
1 -1 -1 1 -i -i i i i -i i -i 1 -1 -1 1
1 -1 -1 1 i i -i -i i -i i -i -1 1 1 -1
"""
# the orientation pairing with this S matrix; the conjugate twist vector
# fails the balancing axiom exactly
_RANK16_T = ["1", "1", "1", "1", "i", "-i", "i", "-i",
             "i", "-i", "-i", "i", "-i", "i", "i", "-i"]


_RANK22_S = """
1 1 1 1 1 1 1 1 2 2 2 2 2 2 2 2 2 2 2 2 2 2
1 1 1 1 1 1 1 1 -2 -2 2 2 2 2 -2 -2 -2 -2 2 2 -2 -2
1 1 1 1 1 1 1 1 2 2 -2 -2 2 2 -2 -2 2 2 -2 -2 -2 -2
1 1 1 1 1 1 1 1 -2 -2 -2 -2 2 2 2 2 -2 -2 -2 -2 2 2
1 1 1 1 1 1 1 1 2 2 2 2 -2 -2 2 2 -2 -2 -2 -2 -2 -2
1 1 1 1 1 1 1 1 -2 -2 2 2 -2 -2 -2 -2 2 2 -2 -2 2 2
1 1 1 1 1 1 1 1 2 2 -2 -2 -2 -2 -2 -2 -2 -2 2 2 2 2
1 1 1 1 1 1 1 1 -2 -2 -2 -2 -2 -2 2 2 2 2 2 2 -2 -2
2 -2 2 -2 2 -2 2 -2 -4 4 0 0 0 0 0 0 0 0 0 0 0 0
2 -2 2 -2 2 -2 2 -2 4 -4 0 0 0 0 0 0 0 0 0 0 0 0
2 2 -2 -2 2 2 -2 -2 0 0 -4 4 0 0 0 0 0 0 0 0 0 0
2 2 -2 -2 2 2 -2 -2 0 0 4 -4 0 0 0 0 0 0 0 0 0 0
2 2 2 2 -2 -2 -2 -2 0 0 0 0 -4 4 0 0 0 0 0 0 0 0
2 2 2 2 -2 -2 -2 -2 0 0 0 0 4 -4 0 0 0 0 0 0 0 0
2 -2 -2 2 2 -2 -2 2 0 0 0 0 0 0 -4 4 0 0 0 0 0 0
2 -2 -2 2 2 -2 -2 2 0 0 0 0 0 0 4 -4 0 0 0 0 0 0
2 -2 2 -2 -2 2 -2 2 0 0 0 0 0 0 0 0 -4 4 0 0 0 0
2 -2 2 -2 -2 2 -2 2 0 0 0 0 0 0 0 0 4 -4 0 0 0 0
2 2 -2 -2 -2 -2 2 2 0 0 0 0 0 0 0 0 0 0 -4 4 0 0
2 2 -2 -2 -2 -2 2 2 0 0 0 0 0 0 0 0 0 0 4 -4 0 0
2 -2 -2 2 -2 2 2 -2 0 0 0 0 0 0 0 0 0 0 0 0 -4 4
2 -2 -2 2 -2 2 2 -2 0 0 0 0 0 0 0 0 0 0 0 0 4 -4
"""
_RANK22_T = ["1"] * 8 + ["-i", "i"] * 7


def twisted_double_c2() -> ModularData:
    """Rank-4 pointed datum: the nontrivially twisted double of C2."""
    return ModularData(_parse_matrix(_RANK4_S), _RANK4_T, name="twisted_double_c2")


def pointed_double_order4() -> ModularData:
    """Rank-16 pointed datum with three distinct twists (order-4 group double)."""
    return ModularData(_parse_matrix(_RANK16_S), _RANK16_T, name="pointed_double_order4")


def rank22_double_c2c2c2() -> ModularData:
    """The rank-22, dimension-64 datum with three distinct twists."""
    return ModularData(_parse_matrix(_RANK22_S), _RANK22_T, name="rank22_double_c2c2c2")


# ---------------------------------------------------------------------------
# parameterized generators


def fibonacci(q: RootOfUnity) -> ModularData:
    """Rank-2 data with the golden fusion rule; q a primitive 10th root.

    dim tau = q + q^{-1}, theta_tau = q^4.
    """
    if q.order != 10:
        raise ValueError("q must be a primitive 10th root of unity")
    d = q.as_cyc() + q.inverse().as_cyc()
    S = [[cyc(1), d], [d, cyc(-1)]]
    return ModularData(S, [RootOfUnity(0, 1), q ** 4], name=f"fibonacci_{q.token()}")


def ising(q: RootOfUnity) -> ModularData:
    """Rank-3 data with twists (1, q, -1); q a primitive 16th root."""
    if q.order != 16:
        raise ValueError("q must be a primitive 16th root of unity")
    r2 = zeta(8) + zeta(8) ** 7
    S = [[cyc(1), r2, cyc(1)], [r2, cyc(0), -r2], [cyc(1), -r2, cyc(1)]]
    return ModularData(
        S, [RootOfUnity(0, 1), q, RootOfUnity(1, 2)], name=f"ising_{q.token()}"
    )


def _quantum_int(q: RootOfUnity, m: int) -> CycNumber:
    num = (q ** m).as_cyc() - (q ** (-m)).as_cyc()
    den = q.as_cyc() - q.inverse().as_cyc()
    return num / den


def sl2_level7_adjoint(q: RootOfUnity) -> ModularData:
    """Rank-3 adjoint data at a primitive 14th root q; twists (1, q^4, q^12)."""
    if q.order != 14:
        raise ValueError("q must be a primitive 14th root of unity")
    odd = (1, 3, 5)
    S = [[_quantum_int(q, a * b) for b in odd] for a in odd]
    T = [RootOfUnity(0, 1), q ** 4, q ** 12]
    return ModularData(S, T, name=f"sl2_level7_{q.token()}")


def fibonacci_all() -> list[ModularData]:
    return [fibonacci(RootOfUnity(j, 10)) for j in (1, 3, 7, 9)]


def ising_all() -> list[ModularData]:
    return [ising(RootOfUnity(j, 16)) for j in (1, 3, 5, 7, 9, 11, 13, 15)]


def sl2_level7_all() -> list[ModularData]:
    return [sl2_level7_adjoint(RootOfUnity(j, 14)) for j in (1, 3, 5, 9, 11, 13)]


# ---------------------------------------------------------------------------
# registry and fixture files


def fixtures() -> dict[str, ModularData]:
    """Named golden data set (explicit matrices plus generator instances)."""
    out = {
        "twisted_double_c2": twisted_double_c2(),
        "pointed_double_order4": pointed_double_order4(),
        "rank22_double_c2c2c2": rank22_double_c2c2c2(),
    }
    for md in fibonacci_all() + ising_all() + sl2_level7_all():
        out[md.name] = md
    from .metricgroups import cyclic_group, enumerate_forms, metric_modular_data

    for n in (2, 3, 5):
        for q in enumerate_forms(cyclic_group(n)):
            md = metric_modular_data(q)
            md.name = f"metric_c{n}_{md.T[1].token().replace('^', 'p')}"
            out[md.name] = md
    return out


def get_fixture(name: str) -> ModularData:
    reg = fixtures()
    if name not in reg:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(reg)}")
    return reg[name]


def emit_fixture_files(directory: str) -> dict[str, str]:
    """Write every fixture as canonical JSON plus a SHA256SUMS file."""
    os.makedirs(directory, exist_ok=True)
    sums = {}
    for name, md in sorted(fixtures().items()):
        payload = md.to_json().encode()
        path = os.path.join(directory, f"{name}.json")
        with open(path, "wb") as fh:
            fh.write(payload + b"\n")
        sums[f"{name}.json"] = hashlib.sha256(payload + b"\n").hexdigest()
    with open(os.path.join(directory, "SHA256SUMS"), "w") as fh:
        for fname, digest in sorted(sums.items()):
            fh.write(f"{digest}  {fname}\n")
    return sums


def verify_fixture_files(directory: str) -> bool:
    """Recompute checksums of shipped fixture files."""
    path = os.path.join(directory, "SHA256SUMS")
    with open(path) as fh:
        for line in fh:
            digest, fname = line.split()
            with open(os.path.join(directory, fname), "rb") as f:
                if hashlib.sha256(f.read()).hexdigest() != digest:
                    return False
    return True
