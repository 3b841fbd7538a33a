"""Exact integer kernels for batch validation of monomial modular data.

Most generated data (pointed metric groups, twisted doubles, the golden
fixtures) has S entries of the form integer * root-of-unity at a common
conductor.  For those, Verlinde sums, balancing and the SL(2,Z) relations
reduce to integer histogram arithmetic over the exponent ring
Z[x]/(x^n - 1), followed by one reduction modulo the cyclotomic
polynomial.  Everything stays in int64; float64 is used only as an exact
carrier for bincount weights (values far below 2^53).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import (
    CycNumber,
    _reduction_table,
    euler_phi,
)


@dataclass
class MonomialForm:
    """S[i][j] = num[i][j] * zeta_n^exp[i][j], T[j] = zeta_n^texp[j]."""

    n: int
    num: np.ndarray   # (r, r) int64
    exp: np.ndarray   # (r, r) int64
    texp: np.ndarray  # (r,) int64
    dims: np.ndarray  # (r,) int64
    D: int


@lru_cache(maxsize=None)
def _root_rows(n: int):
    """Power-basis integer vectors of zeta_n^k."""
    tab = _reduction_table(n)
    return tuple((k, tab[k]) for k in range(n))


def _try_monomial(e: CycNumber, n: int):
    """Decompose e as integer * zeta_n^k, or None (sign lives in the integer)."""
    r = e.reduced()
    if r.is_zero():
        return 0, 0
    if r.is_rational():
        q = r.as_fraction()
        if q.denominator != 1:
            return None
        return int(q), 0
    if n % r.n != 0:
        return None
    cs = r.coeffs
    j0 = next(i for i, c in enumerate(cs) if c)
    step = n // r.n
    for k, row in _root_rows(r.n):
        if row[j0] == 0:
            continue
        q = cs[j0] / row[j0]
        if q.denominator != 1:
            continue
        if all(cs[i] == q * row[i] for i in range(len(cs))):
            return int(q), k * step
    return None


def monomial_form(md) -> MonomialForm | None:
    """Try to put the data in integer-monomial form at a common conductor."""
    if "mono" in md._cache:
        return md._cache["mono"]
    n = md.conductor
    for t in md.T:
        n = n * t.m // math.gcd(n, t.m)
    r = md.rank
    num = np.zeros((r, r), dtype=np.int64)
    exp = np.zeros((r, r), dtype=np.int64)
    out: MonomialForm | None = None
    ok = True
    for i in range(r):
        for j in range(r):
            dec = _try_monomial(md.S[i][j], n)
            if dec is None:
                ok = False
                break
            num[i, j], exp[i, j] = dec
        if not ok:
            break
    if ok:
        dims = num[0].copy()
        if np.all(exp[0] == 0) and np.all(dims != 0):
            texp = np.array([t.k * (n // t.m) for t in md.T], dtype=np.int64)
            D = int(np.sum(dims.astype(object) ** 2))
            out = MonomialForm(n=n, num=num, exp=exp, texp=texp, dims=dims, D=D)
    md._cache["mono"] = out
    return out


def _red_matrix(n: int) -> np.ndarray:
    tab = _reduction_table(n)
    phi = euler_phi(n)
    return np.array([tab[e] for e in range(n)], dtype=np.int64).reshape(n, phi)


# ---------------------------------------------------------------------------
# Verlinde


def verlinde_tensor_fast(mf: MonomialForm):
    """Exact fusion tensor; returns (ok, tensor-or-None, message)."""
    r = mf.num.shape[0]
    n = mf.n
    num = mf.num.astype(np.int64)
    exp = mf.exp
    dims = mf.dims
    R = _red_matrix(n)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    jk_base = (np.arange(r)[:, None, None] * r + np.arange(r)[None, :, None]) * n
    for i in range(r):
        pij_all = num[i][None, :] * num  # (r, r): num[i,m]*num[j,m]
        if np.any(pij_all % dims[None, :]):
            return False, None, "dims do not divide Verlinde weights"
        P = pij_all // dims[None, :]
        F = exp[i][None, :] + exp                        # (r, r): (j, m)
        M = (F[:, None, :] - exp[None, :, :]) % n        # (j, k, m)
        V = (P[:, None, :] * num[None, :, :]).astype(np.float64)
        flat = (jk_base + M).ravel()
        H = np.bincount(flat, weights=V.ravel(), minlength=r * r * n)
        H = H.reshape(r * r, n)
        Hi = H.astype(np.int64)
        if not np.array_equal(Hi.astype(np.float64), H):
            return False, None, "histogram overflow"
        V2 = Hi @ R  # (r*r, phi)
        if np.any(V2[:, 1:]):
            return False, None, f"irrational Verlinde value in row i={i}"
        c = V2[:, 0]
        if np.any(c % mf.D):
            return False, None, f"non-integer Verlinde value in row i={i}"
        tensor[i] = (c // mf.D).reshape(r, r)
    out = [[[Fraction(int(tensor[i, j, k])) for k in range(r)] for j in range(r)]
           for i in range(r)]
    return True, out, ""


# ---------------------------------------------------------------------------
# balancing


def balancing_fast(mf: MonomialForm, tensor):
    r = mf.num.shape[0]
    n = mf.n
    N = np.array(
        [[[int(tensor[i][j][k]) for k in range(r)] for j in range(r)] for i in range(r)],
        dtype=np.int64,
    )
    W = np.zeros((r, n), dtype=np.int64)
    W[np.arange(r), mf.texp] = mf.dims
    R = _red_matrix(n)
    lhs_exp = (mf.exp + mf.texp[:, None] + mf.texp[None, :]) % n
    for i in range(r):
        rhs = N[i] @ W  # (r, n) histograms over j
        rhs[np.arange(r), lhs_exp[i]] -= mf.num[i]
        if np.any(rhs @ R):
            return False, f"balancing fails in row {i}"
    return True, ""


# ---------------------------------------------------------------------------
# SL(2,Z) relations on unnormalized data


def _as_cyclic_tensor(mf: MonomialForm) -> np.ndarray:
    r = mf.num.shape[0]
    A = np.zeros((r, r, mf.n), dtype=np.int64)
    ii, jj = np.nonzero(mf.num)
    A[ii, jj, mf.exp[ii, jj]] = mf.num[ii, jj]
    return A


def _matmul_cyc(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    r, _, n = A.shape
    Bf = B.reshape(r, r * n).astype(np.float64)
    C = np.zeros((r, r, n), dtype=np.float64)
    for u in range(n):
        Au = A[:, :, u].astype(np.float64)
        if not Au.any():
            continue
        P = (Au @ Bf).reshape(r, r, n)
        C += np.roll(P, u, axis=2)
    Ci = C.astype(np.int64)
    assert np.array_equal(Ci.astype(np.float64), C), "overflow in cyclic matmul"
    return Ci


def _scale_cols_by_t(A: np.ndarray, texp: np.ndarray) -> np.ndarray:
    out = np.empty_like(A)
    for j in range(A.shape[1]):
        out[:, j, :] = np.roll(A[:, j, :], int(texp[j]), axis=1)
    return out


def _scale_rows_by_t(A: np.ndarray, texp: np.ndarray) -> np.ndarray:
    out = np.empty_like(A)
    for i in range(A.shape[0]):
        out[i, :, :] = np.roll(A[i, :, :], int(texp[i]), axis=1)
    return out


def _mul_scalar_poly(A: np.ndarray, poly: np.ndarray) -> np.ndarray:
    out = np.zeros_like(A)
    for u, c in enumerate(poly):
        if c:
            out += int(c) * np.roll(A, u, axis=2)
    return out


def _is_zero_mod_cyclo(A: np.ndarray, n: int) -> bool:
    R = _red_matrix(n)
    r = A.shape[0]
    return not np.any(A.reshape(r * r, n) @ R)


def sl2_relations_fast(mf: MonomialForm, tau1: CycNumber):
    n = mf.n
    r = mf.num.shape[0]
    S = _as_cyclic_tensor(mf)
    S2 = _matmul_cyc(S, S)
    S4 = _matmul_cyc(S2, S2)
    eye = np.zeros_like(S4)
    eye[np.arange(r), np.arange(r), 0] = mf.D * mf.D
    ok_s4 = _is_zero_mod_cyclo(S4 - eye, n)

    ST = _scale_cols_by_t(S, mf.texp)
    ST3 = _matmul_cyc(_matmul_cyc(ST, ST), ST)
    # tau1 embedded at conductor n, as coefficients over the power basis
    tau_poly = np.zeros(n, dtype=np.int64)
    t1 = tau1.reduced()
    if n % t1.n != 0:
        return False, "tau_1 outside the monomial conductor"
    t1n = t1.embed(n)
    for e, c in enumerate(t1n.coeffs):
        if c:
            if c.denominator != 1:
                return False, "non-integral tau_1"
            tau_poly[e] = int(c)
    eye_tau = np.zeros_like(ST3)
    eye_tau[np.arange(r), np.arange(r), :] = mf.D * tau_poly[None, :]
    ok_st = _is_zero_mod_cyclo(ST3 - eye_tau, n)

    ok_comm = _is_zero_mod_cyclo(
        _scale_cols_by_t(S2, mf.texp) - _scale_rows_by_t(S2, mf.texp), n
    )
    msg = "" if ok_s4 and ok_st and ok_comm else \
        f"s4={ok_s4} (st)3={ok_st} comm={ok_comm}"
    return bool(ok_s4 and ok_st and ok_comm), msg
