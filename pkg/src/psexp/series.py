"""Truncated power series over a Fourier-prime field.

A Series holds canonical residues for the coefficients of x^0, x^1, ...
plus an explicit truncation order (`precision`).  Stored coefficients
never extend past the precision; missing trailing coefficients are
zero.  Values are immutable at operation boundaries: operations return
fresh Series and never mutate their arguments.

Structural operations (truncate, shift_div) are pure index work and
cost no field operations.  Arithmetic kernels (mul_fft, cyclic_mul,
newton_inv) record their work on the caller's OpLedger.
"""

from __future__ import annotations

import numpy as np

from .errors import NotInvertible, ShapeError, UnsupportedLength
from .transform import OpLedger, RootTable, dft, idft


class Series:
    """Coefficient vector (lowest degree first) with a truncation order."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision: int | None = None):
        arr = np.asarray(coeffs, dtype=np.uint64)
        if arr.ndim != 1:
            raise ShapeError("series coefficients must be one-dimensional")
        if precision is None:
            precision = max(len(arr), 1)
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        if len(arr) > precision:
            raise ValueError(f"{len(arr)} coefficients exceed precision {precision}")
        self.coeffs = arr
        self.precision = precision

    @classmethod
    def one(cls, precision: int = 1) -> "Series":
        return cls([1], precision)

    @classmethod
    def zero(cls, precision: int = 1) -> "Series":
        return cls([], precision)

    def coeff(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return int(self.coeffs[i])
        return 0

    def padded(self, length: int | None = None) -> np.ndarray:
        """Coefficients as an array of the given length (default: precision)."""
        if length is None:
            length = self.precision
        out = np.zeros(length, dtype=np.uint64)
        k = min(len(self.coeffs), length)
        out[:k] = self.coeffs[:k]
        return out

    def to_list(self) -> list[int]:
        return [int(c) for c in self.padded()]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        if self.precision != other.precision:
            return False
        n = max(len(self.coeffs), len(other.coeffs))
        return bool(np.array_equal(self.padded(max(n, 1)), other.padded(max(n, 1))))

    def __hash__(self):
        return hash((self.precision, bytes(self.padded().tobytes())))

    def __repr__(self) -> str:
        shown = self.to_list()
        if len(shown) > 8:
            shown = shown[:8] + ["..."]
        return f"Series({shown}, precision={self.precision})"


def truncate(a: Series, ell: int) -> Series:
    """a mod x^ell.  Index work only."""
    if ell < 0:
        raise ValueError("truncation order must be nonnegative")
    return Series(a.coeffs[:ell], ell)


def shift_div(a: Series, ell: int) -> Series:
    """a div x^ell.  Index work only."""
    if ell < 0:
        raise ValueError("shift must be nonnegative")
    return Series(a.coeffs[ell:], max(a.precision - ell, 1))


def derivative(a: Series, prime, ledger: OpLedger | None = None) -> Series:
    """Coefficient i of the result is (i+1) * a_{i+1}; precision drops by one."""
    n = len(a.coeffs)
    if n <= 1:
        return Series([], max(a.precision - 1, 0))
    idx = np.arange(1, n, dtype=np.uint64)
    out = a.coeffs[1:] * idx % np.uint64(prime.p)
    if ledger is not None:
        ledger.add_muls(n - 1)
    return Series(out, max(a.precision - 1, 0))


def integral_offset(t: Series, offset: int, table: RootTable,
                    ledger: OpLedger | None = None) -> Series:
    """Coefficients t_j / (offset + j): the integral of t*x^(offset-1), shifted down by x^offset.

    Divisors must stay below the modulus; callers enforce that through
    their own precision checks.  One multiplication (by a precomputed
    inverse) per coefficient.
    """
    n = len(t.coeffs)
    if n == 0:
        return Series([], t.precision)
    if offset + n - 1 <= table.max_len:
        invs = table.index_inverses[offset:offset + n]
    else:
        invs = np.array([table.index_inverse(offset + j) for j in range(n)],
                        dtype=np.uint64)
    out = t.coeffs * invs % np.uint64(table.prime.p)
    if ledger is not None:
        ledger.add_muls(n)
    return Series(out, t.precision)


def mul_fft(a: Series, b: Series, table: RootTable, ledger: OpLedger) -> Series:
    """Full product a*b by one cyclic convolution of power-of-two length.

    The transform length L is the smallest power of two holding the
    product, so no wraparound occurs: 2 forward transforms, L pointwise
    multiplications, 1 inverse transform.
    """
    la, lb = len(a.coeffs), len(b.coeffs)
    if la == 0 or lb == 0:
        return Series.zero()
    out_len = la + lb - 1
    L = 1
    while L < out_len:
        L *= 2
    if L > table.max_len:
        raise UnsupportedLength(f"product needs transform length {L} > {table.max_len}")
    av = dft(a.coeffs, L, table, ledger)
    bv = dft(b.coeffs, L, table, ledger)
    prod = av * bv % np.uint64(table.prime.p)
    ledger.add_muls(L)
    full = idft(prod, L, table, ledger)
    return Series(full[:out_len], out_len)


def cyclic_mul(a_vals: np.ndarray, b_vals: np.ndarray, table: RootTable,
               ledger: OpLedger) -> Series:
    """a*b mod (x^m - 1) from value vectors dft(a, m) and dft(b, m)."""
    m = len(a_vals)
    if len(b_vals) != m:
        raise ShapeError(f"value vectors disagree: {m} vs {len(b_vals)}")
    if not table.supported(m):
        raise UnsupportedLength(f"length {m} unsupported")
    prod = np.asarray(a_vals, dtype=np.uint64) * np.asarray(b_vals, dtype=np.uint64) \
        % np.uint64(table.prime.p)
    ledger.add_muls(m)
    return Series(idft(prod, m, table, ledger), m)


def newton_inv(f: Series, n: int, table: RootTable,
               ledger: OpLedger | None = None) -> Series:
    """Inverse of f modulo x^n for n a power of two, by doubling updates.

    Each doubling applies g <- (2g - f g^2) mod x^2m.  The low half of
    2g - f g^2 coincides with g, so the update keeps g's coefficients
    and only negates the upper half of f*g^2; the coincidence is
    asserted on every step.
    """
    if n < 1 or n & (n - 1):
        raise UnsupportedLength(f"precision {n} is not a power of two")
    if f.coeff(0) == 0:
        raise NotInvertible("constant term is zero")
    if ledger is None:
        ledger = OpLedger()
    p = table.prime.p
    g = np.array([table.prime.inv(f.coeff(0))], dtype=np.uint64)
    ledger.add_muls(1)  # one division, unit cost
    m = 1
    while m < n:
        fm = truncate(f, 2 * m)
        g_sq = mul_fft(Series(g, m), Series(g, m), table, ledger)
        fg2 = mul_fft(fm, truncate(g_sq, 2 * m), table, ledger)
        low = fg2.padded(2 * m)[:m]
        if not np.array_equal(low, g):
            raise AssertionError("Newton update lost the low-order coincidence")
        top = (np.uint64(p) - fg2.padded(2 * m)[m:]) % np.uint64(p)
        ledger.add_adds(m)
        g = np.concatenate([g, top])
        m *= 2
    return Series(g, n)
