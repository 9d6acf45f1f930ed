"""Timing harness: exponential cost vs. full-product cost as n grows.

Two signals are produced.  Wall-clock medians feed the CSV report; the
operation-count ratio (exp_fast ledger vs. one full product's ledger)
is deterministic and machine-independent, and is the one the acceptance
checks lean on.  Timed sections run single-threaded; nothing here may
parallelize them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from statistics import median

import numpy as np

from .errors import EmptyInput, PrecisionTooLarge
from .field import FourierPrime, DEFAULT_PRIME
from .series import Series, mul_fft
from .transform import OpLedger, RootTable
from .exponential import exp_fast

CSV_HEADER = "n,t_mul_ns,t_exp_ns,ratio,reps"


@dataclass
class BenchRecord:
    """One row: precision, median times in ns, their ratio, sample count."""

    n: int
    t_mul_ns: int
    t_exp_ns: int
    ratio: float
    reps: int


@dataclass
class OpCountRecord:
    """Ledger sizes for one n: field ops of exp_fast vs. one full product."""

    n: int
    exp_ops: int
    mul_ops: int

    @property
    def ratio(self) -> float:
        return self.exp_ops / self.mul_ops


def _random_series(rng, n: int, p: int, zero_constant: bool) -> Series:
    coeffs = rng.integers(0, p, n, dtype=np.uint64)
    if zero_constant:
        coeffs[0] = 0
    return Series(coeffs, n)


def _time_ns(fn, reps: int) -> int:
    fn()  # warmup
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(median(samples))


def run_bench(n_min: int, n_max: int, reps: int = 9, seed: int = 0,
              prime: FourierPrime = DEFAULT_PRIME) -> list[BenchRecord]:
    """Median-of-reps timings for each n = n_min, 2 n_min, ..., n_max."""
    for n in (n_min, n_max):
        if n < 1 or n & (n - 1):
            raise PrecisionTooLarge(f"{n} is not a power of two")
    if n_min < 64:
        raise PrecisionTooLarge(f"n_min {n_min} below the minimum of 64")
    if n_max < n_min:
        raise PrecisionTooLarge(f"n_max {n_max} below n_min {n_min}")
    if reps < 5:
        raise ValueError("need at least 5 repetitions")
    if 2 * n_max > (1 << prime.v):
        raise PrecisionTooLarge(
            f"n_max {n_max} needs roots of order {2 * n_max} > 2^{prime.v}")
    table = RootTable(prime, 2 * n_max)
    rng = np.random.default_rng(seed)
    records = []
    n = n_min
    while n <= n_max:
        h = _random_series(rng, n, prime.p, zero_constant=True)
        a = _random_series(rng, n, prime.p, zero_constant=False)
        b = _random_series(rng, n, prime.p, zero_constant=False)
        t_exp = _time_ns(lambda: exp_fast(h, n, table), reps)
        t_mul = _time_ns(lambda: mul_fft(a, b, table, OpLedger()), reps)
        records.append(BenchRecord(n=n, t_mul_ns=t_mul, t_exp_ns=t_exp,
                                   ratio=t_exp / t_mul, reps=reps))
        n *= 2
    return records


def opcount_record(n: int, table: RootTable, seed: int = 0) -> OpCountRecord:
    """Deterministic op-count comparison at one n (no timing involved)."""
    prime = table.prime
    rng = np.random.default_rng(seed)
    h = _random_series(rng, n, prime.p, zero_constant=True)
    _, exp_ledger = exp_fast(h, n, table)
    a = _random_series(rng, n, prime.p, zero_constant=False)
    b = _random_series(rng, n, prime.p, zero_constant=False)
    mul_ledger = OpLedger()
    mul_fft(a, b, table, mul_ledger)
    return OpCountRecord(n=n, exp_ops=exp_ledger.total_ops,
                         mul_ops=mul_ledger.total_ops)


def opcount_series(n_min: int, n_max: int, table: RootTable,
                   seed: int = 0) -> list[OpCountRecord]:
    out = []
    n = n_min
    while n <= n_max:
        out.append(opcount_record(n, table, seed))
        n *= 2
    return out


def emit_csv(records: list[BenchRecord]) -> str:
    """CSV text: header plus one row per record, ratio to 4 decimal places."""
    if not records:
        raise EmptyInput("no benchmark records")
    lines = [CSV_HEADER]
    for r in records:
        lines.append(f"{r.n},{r.t_mul_ns},{r.t_exp_ns},{r.ratio:.4f},{r.reps}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[BenchRecord]:
    """Inverse of emit_csv, for tests and downstream tooling."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise EmptyInput("missing benchmark header")
    out = []
    for ln in lines[1:]:
        n, t_mul, t_exp, ratio, reps = ln.split(",")
        out.append(BenchRecord(n=int(n), t_mul_ns=int(t_mul), t_exp_ns=int(t_exp),
                               ratio=float(ratio), reps=int(reps)))
    return out
