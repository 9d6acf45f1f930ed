"""Brute-force reference implementations used by tests and `verify`.

Deliberately simple and deliberately independent: nothing here touches
the transform kernels, the root tables or any cached state, so a bug in
the fast paths cannot mask itself.  Quadratic cost throughout.
"""

from __future__ import annotations

import numpy as np

from .errors import ConstantTermNotOne, NonzeroConstantTerm
from .field import FourierPrime
from .series import Series


def mul_naive(a: Series, b: Series, prime: FourierPrime) -> Series:
    """Schoolbook product, pure Python integers."""
    av = [int(c) for c in a.coeffs]
    bv = [int(c) for c in b.coeffs]
    if not av or not bv:
        return Series.zero()
    p = prime.p
    out = [0] * (len(av) + len(bv) - 1)
    for i, x in enumerate(av):
        if x == 0:
            continue
        for j, y in enumerate(bv):
            out[i + j] += x * y
    return Series([c % p for c in out], len(out))


def _moddot(a: np.ndarray, b: np.ndarray, p: int) -> int:
    # values < p < 2^31: each product < 2^62; reduce before summing so the
    # uint64 accumulator cannot overflow (sum of < 2^31 terms below 2^31).
    if len(a) == 0:
        return 0
    return int((a * b % np.uint64(p)).sum() % np.uint64(p))


def exp_naive(h: Series, n: int, prime: FourierPrime) -> Series:
    """First n coefficients of exp(h) from the recurrence k*f_k = sum j*h_j*f_{k-j}.

    The recurrence is the coefficient form of f' = h'f, which the
    exponential satisfies; it never evaluates a transform.
    """
    if n < 1:
        raise ValueError("precision must be at least 1")
    if h.coeff(0) != 0:
        raise NonzeroConstantTerm("exp needs h(0) = 0")
    p = prime.p
    hv = h.padded(n)
    jh = hv * np.arange(n, dtype=np.uint64) % np.uint64(p)  # j * h_j
    f = np.zeros(n, dtype=np.uint64)
    f[0] = 1
    inv = _range_inverses(n, p)
    for k in range(1, n):
        s = _moddot(jh[1:k + 1], f[k - 1::-1][:k], p)
        f[k] = s * inv[k] % p
    return Series(f, n)


def log_naive(f: Series, n: int, prime: FourierPrime) -> Series:
    """Series l with l(0) = 0 and exp(l) = f mod x^n, from l' = f'/f."""
    if n < 1:
        raise ValueError("precision must be at least 1")
    if f.coeff(0) != 1:
        raise ConstantTermNotOne("log needs f(0) = 1")
    p = prime.p
    fv = f.padded(n)
    # g = 1/f by long division
    g = np.zeros(n, dtype=np.uint64)
    g[0] = 1
    for k in range(1, n):
        s = _moddot(fv[1:k + 1], g[k - 1::-1][:k], p)
        g[k] = (p - s) % p
    # f' * g, then divide coefficient k-1 by k
    fprime = fv[1:] * np.arange(1, n, dtype=np.uint64) % np.uint64(p)
    inv = _range_inverses(n, p)
    out = np.zeros(n, dtype=np.uint64)
    for k in range(1, n):
        c = _moddot(fprime[:k], g[k - 1::-1][:k], p)
        out[k] = c * inv[k] % p
    return Series(out, n)


def dft_naive(coeffs, m: int, table) -> np.ndarray:
    """Horner evaluation at each m-th root of unity, one point at a time."""
    p = table.prime.p
    w = table.prime.root_of_order(m)
    cs = [int(c) for c in coeffs]
    out = []
    for j in range(m):
        x = pow(w, j, p)
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % p
        out.append(acc)
    return np.array(out, dtype=np.uint64)


def _range_inverses(n: int, p: int) -> list[int]:
    inv = [0] * max(n, 2)
    inv[1] = 1
    for i in range(2, n):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    return inv
