"""Arithmetic modulo a Fourier prime p = c*2^v + 1.

Primes of this shape contain elements of multiplicative order 2^k for
every k <= v, which is exactly what the radix-2 number-theoretic
transforms need.  Field elements are plain canonical ints in [0, p);
FourierPrime carries the modulus together with its root structure and
is validated at construction rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedLength

# A field element is a canonical residue: an int in [0, p).
FieldElement = int

# Word-size bound: keeps a*b < 2^62 so uint64 vector kernels never overflow.
MAX_MODULUS_BITS = 31

# Deterministic Miller-Rabin witnesses for all n < 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class FourierPrime:
    """A prime p = c*2^v + 1 with a verified element of order 2^v.

    Immutable; safe to share between threads.  `omega_max` generates the
    group of 2^v-th roots of unity from which every transform root is
    drawn as a power.
    """

    p: int
    v: int
    g: int
    omega_max: int

    def __post_init__(self):
        p, v = self.p, self.v
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p.bit_length() > MAX_MODULUS_BITS:
            raise ValueError(f"modulus must fit in {MAX_MODULUS_BITS} bits")
        if (p - 1) % (1 << v) != 0 or ((p - 1) >> v) % 2 == 0:
            raise ValueError(f"p - 1 is not odd * 2^{v}")
        # Do not trust g: check the claimed order of omega_max directly.
        w = self.omega_max
        if pow(w, 1 << v, p) != 1 or pow(w, 1 << (v - 1), p) != p - 1:
            raise ValueError(f"{w} does not have order 2^{v} modulo {p}")

    @classmethod
    def from_modulus(cls, p: int, g: int | None = None) -> "FourierPrime":
        """Build from a modulus, deriving v and (if needed) searching for g."""
        if not _is_prime(p) or p == 2:
            raise ValueError(f"{p} is not an odd prime")
        v = 0
        c = p - 1
        while c % 2 == 0:
            c //= 2
            v += 1
        candidates = [g] if g is not None else list(range(2, 100))
        for cand in candidates:
            w = pow(cand, (p - 1) >> v, p)
            if pow(w, 1 << (v - 1), p) == p - 1:
                return cls(p=p, v=v, g=cand, omega_max=w)
        raise ValueError(f"no generator found for {p}")

    # -- scalar operations (canonical in, canonical out) --

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a + b) % self.p

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return (a - b) % self.p

    def neg(self, a: FieldElement) -> FieldElement:
        return -a % self.p

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a * b % self.p

    def inv(self, a: FieldElement) -> FieldElement:
        """Inverse by extended Euclid; 0 raises ZeroDivisionError."""
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        g, x, _ = _xgcd(a % self.p, self.p)
        assert g == 1
        return x % self.p

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return pow(a, e, self.p)

    def root_of_order(self, m: int) -> FieldElement:
        """The canonical root omega_m = omega_max^(2^v / m), for m a power of two.

        Chosen so that root_of_order(m) == root_of_order(2m)**2 exactly,
        not merely up to a choice of root.
        """
        if m < 1 or m & (m - 1):
            raise UnsupportedLength(f"{m} is not a power of two")
        if m > (1 << self.v):
            raise UnsupportedLength(f"no roots of order {m} modulo {self.p} (max 2^{self.v})")
        return pow(self.omega_max, (1 << self.v) // m, self.p)


# p = 119 * 2^23 + 1: supports transforms up to length 2^23, i.e. any
# precision n with 2n <= 2^23.  Verified at import time by __post_init__.
DEFAULT_PRIME = FourierPrime.from_modulus(998244353, 3)
