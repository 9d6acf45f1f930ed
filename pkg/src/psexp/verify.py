"""Self-check suite behind the `verify` CLI command.

Runs the oracle cross-checks (both exponentials against the quadratic
reference), the transform identities, and the cost-ledger audits, and
reports one pass/fail line per check.  Everything is seeded and
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FourierPrime, DEFAULT_PRIME
from .series import Series, mul_fft, newton_inv, truncate
from .transform import OpLedger, RootTable, dft, dft_twisted, idft, measure_E, merge_dft
from .exponential import TOTAL_SLACK, exp_fast, exp_standard
from . import oracle


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _random_h(rng, n: int, p: int) -> Series:
    coeffs = rng.integers(0, p, n, dtype=np.uint64)
    coeffs[0] = 0
    return Series(coeffs, n)


def run_verify(nmax: int = 512, seed: int = 0,
               prime: FourierPrime = DEFAULT_PRIME) -> list[CheckResult]:
    if nmax < 2 or nmax & (nmax - 1):
        raise ValueError("nmax must be a power of two >= 2")
    table = RootTable(prime, max(2 * nmax, 4))
    rng = np.random.default_rng(seed)
    p = prime.p
    results = []

    def check(name: str, fn) -> None:
        try:
            detail = fn() or ""
            results.append(CheckResult(name, True, detail))
        except Exception as exc:  # noqa: BLE001 - every failure is a report line
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))

    def sizes():
        n = 2
        while n <= nmax:
            yield n
            n *= 2

    def exp_equivalence():
        count = 0
        for n in sizes():
            for _ in range(3):
                h = _random_h(rng, n, p)
                fast, _ = exp_fast(h, n, table)
                if fast != exp_standard(h, n, table):
                    raise AssertionError(f"fast != standard at n={n}")
                if fast != oracle.exp_naive(h, n, prime):
                    raise AssertionError(f"fast != naive at n={n}")
                count += 1
        return f"{count} cases"
    check("exp-equivalence", exp_equivalence)

    def exp_internal_identities():
        for n in sizes():
            exp_fast(_random_h(rng, n, p), n, table, validate=True)
        return f"validated up to n={nmax}"
    check("exp-internal-identities", exp_internal_identities)

    def dft_roundtrip():
        for m in (1, 2, 4, 8, 64, min(512, nmax)):
            f = rng.integers(0, p, m, dtype=np.uint64)
            led = OpLedger()
            if not np.array_equal(idft(dft(f, m, table, led), m, table, led), f):
                raise AssertionError(f"roundtrip failed at m={m}")
        return ""
    check("dft-roundtrip", dft_roundtrip)

    def dft_against_naive():
        for m in (1, 2, 4, 8, 16):
            f = rng.integers(0, p, m, dtype=np.uint64)
            if not np.array_equal(dft(f, m, table, OpLedger()),
                                  oracle.dft_naive(f, m, table)):
                raise AssertionError(f"dft != naive at m={m}")
        return ""
    check("dft-vs-naive", dft_against_naive)

    def interleaving():
        for m in (1, 2, 8, 32):
            f = rng.integers(0, p, 2 * m, dtype=np.uint64)
            led = OpLedger()
            merged = merge_dft(dft(f[:m] * 0 + f[:m], m, table, led)
                               if False else dft(f, m, table, led),
                               dft_twisted(f, m, table, led))
            if not np.array_equal(merged, dft(f, 2 * m, table, led)):
                raise AssertionError(f"interleaving failed at m={m}")
        return ""
    check("dft-interleaving", interleaving)

    def superlinearity():
        m = 1
        while 2 * m <= table.max_len:
            if measure_E(2 * m, table) < 2 * measure_E(m, table):
                raise AssertionError(f"E(2m) < 2E(m) at m={m}")
            m *= 2
        return ""
    check("superlinearity", superlinearity)

    def newton_product():
        for n in sizes():
            f = Series(np.concatenate([[1], rng.integers(0, p, n - 1)]).astype(np.uint64), n)
            g = newton_inv(f, n, table)
            prod = oracle.mul_naive(f, g, prime).padded(n)
            if prod[0] != 1 or np.any(prod[1:]):
                raise AssertionError(f"f * inv(f) != 1 mod x^{n}")
        return ""
    check("newton-inverse", newton_product)

    def exp_log_roundtrip():
        for n in sizes():
            h = _random_h(rng, n, p)
            f, _ = exp_fast(h, n, table)
            if oracle.log_naive(f, n, prime) != truncate(h, n):
                raise AssertionError(f"log(exp(h)) != h at n={n}")
        return ""
    check("exp-log-roundtrip", exp_log_roundtrip)

    def pass_audits():
        # the per-pass audit runs inside exp_fast; recheck the shape here
        _, ledger = exp_fast(_random_h(rng, nmax, p), nmax, table)
        for tally in ledger.passes:
            by_len = tally.by_length()
            want = {2 * tally.m: 4, tally.m: 8} if tally.final \
                else {2 * tally.m: 7, tally.m: 3}
            if by_len != want:
                raise AssertionError(f"pass m={tally.m}: {by_len} != {want}")
        return f"{len(ledger.passes)} passes"
    check("pass-transform-tallies", pass_audits)

    def cost_bound():
        for n in sizes():
            _, ledger = exp_fast(_random_h(rng, n, p), n, table)
            bound = 16.5 * measure_E(n, table) + 24.25 * n + TOTAL_SLACK
            if ledger.total_ops > bound:
                raise AssertionError(f"{ledger.total_ops} ops > {bound} at n={n}")
        return ""
    check("total-cost-bound", cost_bound)

    def mul_against_naive():
        for la, lb in ((1, 1), (3, 5), (17, 30), (64, 64)):
            a = Series(rng.integers(0, p, la, dtype=np.uint64), la)
            b = Series(rng.integers(0, p, lb, dtype=np.uint64), lb)
            if mul_fft(a, b, table, OpLedger()) != oracle.mul_naive(a, b, prime):
                raise AssertionError(f"mul_fft != naive at {la}x{lb}")
        return ""
    check("mul-vs-naive", mul_against_naive)

    return results


def render_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        suffix = f"  ({r.detail})" if r.detail else ""
        lines.append(f"[{status}] {r.name}{suffix}")
    ok = sum(r.ok for r in results)
    lines.append(f"{ok}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
