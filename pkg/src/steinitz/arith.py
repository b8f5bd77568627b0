"""Exact integer helpers: prime parts, the gcd/Bezout identities used in
discriminant decompositions, and invariant-factor normalization."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod

from sympy.ntheory import factorint

from .errors import DomainError


@dataclass(frozen=True)
class Factored:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise DomainError(f"Factored needs a positive integer, got {self.value}")
        primes = [p for p, _ in self.factors]
        assert primes == sorted(set(primes)), "primes must be strictly increasing"
        assert all(e >= 1 for _, e in self.factors)
        assert prod(p**e for p, e in self.factors) == self.value

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __int__(self):
        return self.value


def factor(n: int | Factored) -> Factored:
    if isinstance(n, Factored):
        return n
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    return Factored(n, tuple(sorted(factorint(n).items())))


def prime_factors(n: int) -> list[int]:
    return factor(n).primes


def valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def l_part(n: int | Factored, l: int) -> int:
    """Largest power of the prime ``l`` dividing ``n`` (1 if l does not divide n)."""
    return l ** dict(factor(n).factors).get(l, 0)


def _check_divides(e: int, m: int) -> None:
    if e < 1 or m < 1 or m % e:
        raise DomainError(f"need e | m with positive e, m; got e={e}, m={m}")


def mcd_lemma_gcd(e: int | Factored, m: int) -> int:
    """gcd over primes l | e of (l-1)*m/e(l).

    The result always divides (e-1)*m/e; this is asserted.  For e = 1 the
    gcd is empty and 0 is returned (0 divides 0 = (e-1)*m/e).
    """
    e = factor(e)
    _check_divides(e.value, m)
    if e.value == 1:
        return 0
    g = reduce(gcd, ((l - 1) * (m // l**k) for l, k in e.factors))
    target = (e.value - 1) * (m // e.value)
    assert target % g == 0, f"gcd {g} does not divide {target} (e={e.value}, m={m})"
    return g


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout_decompose(e: int | Factored, m: int) -> dict[int, int]:
    """Integers b_l with sum_l b_l*(l-1)*m/e(l) = (e-1)*m/e, over primes l | e.

    Coefficients come from an iterated extended gcd; the first coefficient is
    then reduced into [0, a_2/gcd(a_1, a_2)) so the output is deterministic.
    """
    e = factor(e)
    _check_divides(e.value, m)
    if e.value == 1:
        raise DomainError("bezout_decompose needs e > 1")
    primes = e.primes
    coeffs = [(l - 1) * (m // l**k) for l, k in e.factors]
    g, weights = coeffs[0], [1]
    for a in coeffs[1:]:
        g, x, y = _ext_gcd(g, a)
        weights = [w * x for w in weights] + [y]
    target = (e.value - 1) * (m // e.value)
    assert target % g == 0
    b = [w * (target // g) for w in weights]
    if len(b) >= 2:
        a0, a1 = coeffs[0], coeffs[1]
        g01 = gcd(a0, a1)
        step0, step1 = a1 // g01, a0 // g01
        t = b[0] // step0
        b[0] -= t * step0
        b[1] += t * step1
    assert sum(bi * ai for bi, ai in zip(b, coeffs)) == target
    return dict(zip(primes, b))


def congruence_power(x: int, m: int, n: int) -> bool:
    """Whether x = 1 mod m and every prime of n divides m.

    When it holds, x**n = 1 mod m*n is checked by modular exponentiation.
    """
    if m < 1 or n < 1:
        raise DomainError("m and n must be positive")
    ok = (x - 1) % m == 0 and all(m % q == 0 for q in prime_factors(n))
    if ok:
        assert pow(x, n, m * n) == 1 % (m * n), (x, m, n)
    return ok


def invariant_factors(orders: list[int]) -> list[int]:
    """Invariant factors n_1, n_2, ... (n_{i+1} | n_i) of prod C(orders_i).

    The trivial group is returned as [1].
    """
    if not orders:
        raise DomainError("need at least one cyclic factor")
    if any(int(o) < 1 for o in orders):
        raise DomainError(f"orders must be positive: {orders}")
    parts: dict[int, list[int]] = {}
    for o in orders:
        for p, k in factor(o).factors:
            parts.setdefault(p, []).append(p**k)
    rank = max((len(v) for v in parts.values()), default=0)
    if rank == 0:
        return [1]
    out = [1] * rank
    for powers in parts.values():
        for i, q in enumerate(sorted(powers, reverse=True)):
            out[i] *= q
    return out
