"""Radix-2 number-theoretic transforms with exact operation accounting.

Three transforms are provided, all in natural (not bit-reversed) index
order at the boundary:

  dft(f, m)          values f(w_m^j), j = 0..m-1
  dft_twisted(f, m)  values f(w_2m * w_m^j) -- the odd half of dft(f, 2m)
  idft(v, m)         inverse of dft, with the final division by m done
                     as m multiplications by a precomputed m^-1

Every field multiplication and addition performed by a transform is
recorded on the caller's OpLedger; that is how the cost claims made by
the exponential algorithms are checked mechanically instead of trusted.
Permutations (zero padding, bit reversal, interleaving) cost no field
operations and are not counted.

Vectors are numpy uint64 arrays of canonical residues.  The modulus is
bounded to 31 bits so products of two residues stay below 2^62 and all
kernels run exactly in uint64.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .errors import ShapeError, UnsupportedLength
from .field import FourierPrime

FORWARD = "forward"
TWISTED = "twisted"
INVERSE = "inverse"


@dataclass
class OpLedger:
    """Per-invocation counter of field work.

    field_adds counts additions, subtractions and negations alike.
    butterfly_ops is the subset of field_muls + field_adds spent inside
    transform kernels proper (excluding twist scaling and the inverse
    transform's final division); the per-pass audit uses it to separate
    transform cost from linear cost.  Single-owner: one ledger per
    algorithm invocation, never shared between threads.
    """

    field_muls: int = 0
    field_adds: int = 0
    transforms: Counter = dc_field(default_factory=Counter)
    butterfly_ops: int = 0
    passes: list = dc_field(default_factory=list)  # PassTally records, filled by exp_fast

    @property
    def total_ops(self) -> int:
        return self.field_muls + self.field_adds

    def add_muls(self, k: int) -> None:
        self.field_muls += k

    def add_adds(self, k: int) -> None:
        self.field_adds += k

    def add_butterflies(self, muls: int, adds: int) -> None:
        self.field_muls += muls
        self.field_adds += adds
        self.butterfly_ops += muls + adds

    def record_transform(self, kind: str, length: int) -> None:
        self.transforms[(kind, length)] += 1

    def snapshot(self) -> tuple[int, int, int, Counter]:
        return (self.field_muls, self.field_adds, self.butterfly_ops,
                Counter(self.transforms))

    def transforms_by_length(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (_, length), count in self.transforms.items():
            out[length] = out.get(length, 0) + count
        return out


class RootTable:
    """Precomputed roots of unity, inverses and permutations, built once.

    forward_roots[i] = w^i for w of order max_len; roots for any smaller
    power-of-two length m are the stride-(max_len/m) subsequence, which
    realizes w_m = w_2m^2 automatically.  Immutable after construction
    (arrays are frozen), so safe for concurrent readers.
    """

    def __init__(self, prime: FourierPrime, max_len: int):
        if max_len < 1 or max_len & (max_len - 1):
            raise UnsupportedLength(f"max_len {max_len} is not a power of two")
        if max_len > (1 << prime.v):
            raise UnsupportedLength(
                f"max_len {max_len} exceeds the 2^{prime.v} roots of {prime.p}")
        self.prime = prime
        self.max_len = max_len
        p = prime.p
        w = prime.root_of_order(max_len)

        fwd = np.empty(max_len, dtype=np.uint64)
        fwd[0] = 1
        size = 1
        while size < max_len:  # doubling: fwd[size:2*size] = fwd[:size] * w^size
            step = np.uint64(pow(w, size, p))
            fwd[size:2 * size] = fwd[:size] * step % np.uint64(p)
            size *= 2
        self.forward_roots = fwd
        self.inverse_roots = np.concatenate([fwd[:1], fwd[:0:-1]])  # w^-i = w^(max_len-i)

        self.len_inverses = {m: prime.inv(m % p) for m in _powers_of_two_up_to(max_len)}

        # inverses of 1..max_len, used for the integration divisors
        inv = np.zeros(max_len + 1, dtype=np.uint64)
        if max_len >= 1:
            inv[1] = 1
        for i in range(2, max_len + 1):
            inv[i] = (p - (p // i) * int(inv[p % i]) % p) % p
        self.index_inverses = inv

        # bit-reversal permutation per supported length
        self.bitrev: dict[int, np.ndarray] = {}
        rev = np.zeros(1, dtype=np.intp)
        self.bitrev[1] = rev
        m = 2
        while m <= max_len:
            rev = np.concatenate([2 * rev, 2 * rev + 1])
            self.bitrev[m] = rev
            m *= 2

        for arr in (self.forward_roots, self.inverse_roots, self.index_inverses,
                    *self.bitrev.values()):
            arr.setflags(write=False)

    def supported(self, m: int) -> bool:
        return m >= 1 and m & (m - 1) == 0 and m <= self.max_len

    def index_inverse(self, i: int) -> int:
        """inv(i) in the field, table-backed for i <= max_len."""
        if 1 <= i <= self.max_len:
            return int(self.index_inverses[i])
        return self.prime.inv(i % self.prime.p)


def _powers_of_two_up_to(n: int) -> Iterable[int]:
    m = 1
    while m <= n:
        yield m
        m *= 2


def _check_length(m: int, table: RootTable) -> None:
    if not table.supported(m):
        raise UnsupportedLength(f"length {m} unsupported (power of two <= {table.max_len})")


def _pad(coeffs, m: int) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=np.uint64)
    if arr.ndim != 1:
        raise ShapeError("coefficient input must be one-dimensional")
    if len(arr) > m:
        raise ShapeError(f"{len(arr)} coefficients do not fit in length {m}")
    out = np.zeros(m, dtype=np.uint64)
    out[:len(arr)] = arr
    return out


def _butterfly_passes(a: np.ndarray, m: int, roots: np.ndarray,
                      table: RootTable, ledger: OpLedger) -> np.ndarray:
    """In-place decimation-in-time passes over a bit-reversed input.

    Each stage does m/2 twiddle multiplications and m additions or
    subtractions (one of each per butterfly), all recorded.
    """
    p = np.uint64(table.prime.p)
    half = 1
    while half < m:
        stride = table.max_len // (2 * half)
        w = roots[:half * stride:stride]  # w_2half^j, j < half
        blocks = a.reshape(-1, 2, half)
        lo = blocks[:, 0, :]
        t = blocks[:, 1, :] * w % p
        s0 = lo + t
        s1 = lo + (p - t)
        blocks[:, 0, :] = s0 % p
        blocks[:, 1, :] = s1 % p
        ledger.add_butterflies(muls=m // 2, adds=m)
        half *= 2
    return a


def dft(coeffs, m: int, table: RootTable, ledger: OpLedger) -> np.ndarray:
    """Evaluate at the m-th roots of unity: out[j] = f(w_m^j), natural order."""
    _check_length(m, table)
    a = _pad(coeffs, m)[table.bitrev[m]]
    _butterfly_passes(a, m, table.forward_roots, table, ledger)
    ledger.record_transform(FORWARD, m)
    return a


def dft_twisted(coeffs, m: int, table: RootTable, ledger: OpLedger) -> np.ndarray:
    """Evaluate at the odd 2m-th roots: out[j] = f(w_2m * w_m^j).

    Scaling coefficient i by w_2m^i reduces this to a plain dft; the
    scaling costs one multiplication per supplied coefficient (at most
    m, within the 2m budgeted for it).
    """
    _check_length(m, table)
    if 2 * m > table.max_len:
        raise UnsupportedLength(f"twisted length {m} needs 2m <= {table.max_len}")
    arr = np.asarray(coeffs, dtype=np.uint64)
    if len(arr) > m:
        raise ShapeError(f"{len(arr)} coefficients do not fit in length {m}")
    stride = table.max_len // (2 * m)
    tw = table.forward_roots[:len(arr) * stride:stride]  # w_2m^i
    scaled = arr * tw % np.uint64(table.prime.p)
    ledger.add_muls(len(arr))
    a = _pad(scaled, m)[table.bitrev[m]]
    _butterfly_passes(a, m, table.forward_roots, table, ledger)
    ledger.record_transform(TWISTED, m)
    return a


def idft(values, m: int, table: RootTable, ledger: OpLedger) -> np.ndarray:
    """Inverse of dft: m butterfly stages plus m multiplications by m^-1."""
    _check_length(m, table)
    arr = np.asarray(values, dtype=np.uint64)
    if len(arr) != m:
        raise ShapeError(f"expected {m} values, got {len(arr)}")
    a = arr[table.bitrev[m]]
    _butterfly_passes(a, m, table.inverse_roots, table, ledger)
    a = a * np.uint64(table.len_inverses[m]) % np.uint64(table.prime.p)
    ledger.add_muls(m)
    ledger.record_transform(INVERSE, m)
    return a


def merge_dft(evens: np.ndarray, odds: np.ndarray) -> np.ndarray:
    """Interleave dft(f, m) and dft_twisted(f, m) into dft(f, 2m).

    Pure permutation: dft(f,2m)[2j] = f(w_m^j) and dft(f,2m)[2j+1] =
    f(w_2m * w_m^j).  No field operations, no ledger.
    """
    if len(evens) != len(odds):
        raise ShapeError(f"length mismatch: {len(evens)} vs {len(odds)}")
    out = np.empty(2 * len(evens), dtype=np.uint64)
    out[0::2] = evens
    out[1::2] = odds
    return out


def measure_E(m: int, table: RootTable) -> int:
    """Exact field-op count of one forward dft of length m.

    Deterministic for fixed m: the kernel's work does not depend on the
    data, so scratch zeros suffice.
    """
    _check_length(m, table)
    scratch = OpLedger()
    dft(np.zeros(m, dtype=np.uint64), m, table, scratch)
    return scratch.total_ops
