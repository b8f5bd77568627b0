"""Brute-force reference computations that share no code with the package.

Class groups come from reduced forms with Gauss composition done by
searching for a third form representing the product; subgroups are plain
Python sets of form triples.  Everything here is slow and only meant for
small discriminants.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from sympy import isprime


def field_disc(d: int) -> int:
    return d if d % 4 == 1 else 4 * d


def reduce_form(a, b, c):
    while True:
        if b > a or b <= -a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            continue
        return (a, b, c)


@lru_cache(maxsize=None)
def forms(D: int) -> tuple:
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a) == 0:
                c = (b * b - D) // (4 * a)
                if c >= a and not (c == a and b < 0) and gcd(gcd(a, b), c) == 1:
                    out.append((a, b, c))
        a += 1
    return tuple(sorted(out))


def compose(f, g, D):
    """Dirichlet composition via united forms, searching for the shared
    middle coefficient."""
    a1, b1, _ = f
    a2, b2, _ = g
    e = gcd(gcd(a1, a2), (b1 + b2) // 2)
    A = a1 * a2 // (e * e)
    for B in range(-A, A + 1):
        if (B - b1) % (2 * a1 // e) == 0 and (B - b2) % (2 * a2 // e) == 0 and (B * B - D) % (4 * A) == 0:
            return reduce_form(A, B, (B * B - D) // (4 * A))
    raise AssertionError("no composite found")


@lru_cache(maxsize=None)
def table(D: int) -> dict:
    fs = forms(D)
    return {(f, g): compose(f, g, D) for f in fs for g in fs}


def identity(D: int):
    return forms(D)[0]


def power(f, n, D):
    t = table(D)
    out = identity(D)
    for _ in range(n):
        out = t[(out, f)]
    return out


def order(f, D):
    n, x = 1, f
    while x != identity(D):
        x, n = table(D)[(x, f)], n + 1
    return n


def structure(D: int) -> list[int]:
    """Invariant factors (descending) read off from counts of l-power torsion."""
    fs = forms(D)
    h = len(fs)
    out = []
    for l in [p for p in range(2, h + 1) if isprime(p) and h % p == 0]:
        # rank of G[l^j]/G[l^(j-1)] from torsion counts
        sizes, j = [1], 1
        while sizes[-1] < l ** _val(h, l):
            sizes.append(sum(1 for f in fs if power(f, l**j, D) == identity(D)))
            j += 1
        ranks = [round(_log(sizes[i] // sizes[i - 1], l)) for i in range(1, len(sizes))]
        exps = [sum(1 for r in ranks if r > i) for i in range(ranks[0])]
        out.append([l**e for e in exps])
    width = max((len(x) for x in out), default=0)
    if width == 0:
        return [1]
    res = [1] * width
    for lst in out:
        for i, q in enumerate(lst):
            res[i] *= q
    return res


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _log(n, b):
    k = 0
    while n > 1:
        n //= b
        k += 1
    return k


def closure(D: int, gens) -> frozenset:
    t = table(D)
    seen = {identity(D)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[(x, g)]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def set_power(S, n, D):
    return frozenset(power(x, n, D) for x in S)


def set_product(S, T, D):
    t = table(D)
    return frozenset(t[(x, y)] for x in S for y in T)


def prime_form(p: int, D: int):
    """Reduced form of a prime of norm p (p split or ramified); None if inert."""
    for b in range(D % 2, 2 * p, 2):
        if (b * b - D) % (4 * p) == 0:
            return reduce_form(p, b, (b * b - D) // (4 * p))
    return None


@lru_cache(maxsize=None)
def w_set(d: int, m: int, residues=(1,), bound: int = 3000) -> frozenset:
    """Classes of degree-1 primes p < bound, p not dividing m or D, p mod m in residues."""
    D = field_disc(d)
    gens = []
    for p in range(2, bound):
        if not isprime(p) or D % p == 0 or m % p == 0 or (p % m) not in {r % m for r in residues}:
            continue
        f = prime_form(p, D)
        if f is not None:
            gens.append(f)
            gens.append(reduce_form(f[0], -f[1], f[2]))
    return closure(D, gens)


def whole(d: int) -> frozenset:
    return frozenset(forms(field_disc(d)))


def represents(f, n: int) -> bool:
    """Whether the positive definite form f properly or improperly represents n."""
    a, b, c = f
    D = b * b - 4 * a * c
    ymax = isqrt(4 * a * n // -D) + 1
    for y in range(-ymax, ymax + 1):
        for x in range(-isqrt(4 * n) - 2, isqrt(4 * n) + 3):
            if a * x * x + b * x * y + c * y * y == n:
                return True
    return False


def squarefree_part(a: int) -> int:
    s = 1 if a > 0 else -1
    a = abs(a)
    p = 2
    while p * p <= a:
        while a % (p * p) == 0:
            a //= p * p
        p += 1
    return s * a


def rational_alpha_tame(d: int, a: int) -> bool:
    """k(sqrt(a))/k unramified above 2 for rational a, via ramification of 2 in
    the quadratic subfields of the biquadratic field Q(sqrt(d), sqrt(a))."""
    ram = lambda t: squarefree_part(t) % 4 != 1
    a1 = squarefree_part(a)
    a2 = squarefree_part(a1 * d)
    if d % 4 == 1:
        return not ram(a1)
    return not ram(a1) or not ram(a2)


def all_exponent_tuples(factors):
    return list(product(*(range(f) for f in factors)))
