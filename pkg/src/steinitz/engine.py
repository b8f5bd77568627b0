"""Closed-form realizable Steinitz classes R_t(k, G).

Every answer is a :class:`RealizableInterval`, a pair ``lower <= upper`` of
subgroups of Cl(k).  Odd abelian groups and abelian groups whose two
largest 2-parts agree come out exact.  Otherwise the answer depends on
R_t(k, C(2^s)), which is only bracketed: below by W(k, 2^s), above by
Cl(k) unless the caller knows better.  Intervals are pushed through
products and powers, and small class groups often collapse them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Callable

from .abgroup import ClassElem, Subgroup
from .arith import factor, invariant_factors, l_part
from .errors import DomainError, InconsistencyError, UnsupportedError
from .quadfield import QuadField
from .wgroups import NormCondition, WPolicy, w_group


@dataclass(frozen=True)
class AbelianGroupSpec:
    """C(n_1) x ... x C(n_r) with n_{i+1} | n_i."""

    factors: tuple[int, ...]

    def __post_init__(self):
        f = tuple(invariant_factors(list(self.factors)))
        object.__setattr__(self, "factors", f)

    @classmethod
    def of(cls, *orders: int) -> AbelianGroupSpec:
        if len(orders) == 1 and not isinstance(orders[0], int):
            orders = tuple(orders[0])
        return cls(tuple(orders))

    @property
    def n(self) -> int:
        return prod(self.factors)

    @property
    def primes(self) -> list[int]:
        return factor(self.n).primes

    def part(self, i: int, l: int) -> int:
        """n_i(l), with i counted from 1; 1 beyond the rank."""
        return l_part(self.factors[i - 1], l) if i <= len(self.factors) else 1

    def n_part(self, l: int) -> int:
        return l_part(self.n, l)

    @property
    def l_parts(self) -> dict[int, tuple[int, list[int]]]:
        return {l: (self.n_part(l), [self.part(i + 1, l) for i in range(len(self.factors))])
                for l in self.primes}

    @property
    def eta(self) -> int:
        return 2 if self.n % 2 == 0 and self.part(2, 2) == 1 else 1

    def sylow(self, l: int) -> AbelianGroupSpec:
        return AbelianGroupSpec(tuple(l_part(f, l) for f in self.factors))

    def __str__(self):
        if self.n == 1:
            return "C(1)"
        return " x ".join(f"C({f})" for f in self.factors)


@dataclass(frozen=True)
class SpecialGroupSpec:
    """A4, D_{2n} for odd n, or (C(2)^n) x| G for an odd abelian G."""

    kind: str
    n: int = 0
    odd: AbelianGroupSpec | None = None

    def __post_init__(self):
        if self.kind not in ("A4", "D2n", "C2VEC"):
            raise DomainError(f"unknown special group kind {self.kind!r}")
        if self.kind == "D2n" and (self.n < 3 or self.n % 2 == 0):
            raise DomainError("D_{2n} needs odd n >= 3")
        if self.kind == "C2VEC":
            if self.n < 1:
                raise DomainError("C2VEC needs n >= 1")
            if self.odd is None or self.odd.n % 2 == 0:
                raise DomainError("C2VEC needs an odd abelian acting group")

    @classmethod
    def a4(cls) -> SpecialGroupSpec:
        return cls("A4")

    @classmethod
    def dihedral(cls, n: int) -> SpecialGroupSpec:
        return cls("D2n", n)

    @classmethod
    def two_vector(cls, n: int, odd: AbelianGroupSpec) -> SpecialGroupSpec:
        return cls("C2VEC", n, odd)

    def __str__(self):
        if self.kind == "A4":
            return "A4"
        if self.kind == "D2n":
            return f"D{2 * self.n}"
        return f"C(2)^{self.n} x| ({self.odd})"


@dataclass
class RealizableInterval:
    lower: Subgroup
    upper: Subgroup
    trail: list[tuple[str, str]] = field(default_factory=list)
    stabilized: bool = True

    def __post_init__(self):
        if not self.lower.issubgroup(self.upper):
            raise InconsistencyError(f"lower bound {self.lower} not inside upper bound {self.upper}")

    @classmethod
    def exact_value(cls, sub: Subgroup, tag: str = "", desc: str = "", stabilized: bool = True):
        return cls(sub, sub, [(tag, desc)] if tag else [], stabilized)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Subgroup | None:
        return self.lower if self.exact else None

    def power(self, e: int) -> RealizableInterval:
        return RealizableInterval(self.lower.power(e), self.upper.power(e), list(self.trail), self.stabilized)

    __pow__ = power

    def product(self, other: RealizableInterval) -> RealizableInterval:
        return RealizableInterval(self.lower * other.lower, self.upper * other.upper,
                                  self.trail + other.trail, self.stabilized and other.stabilized)

    __mul__ = product

    def same_bounds(self, other: RealizableInterval) -> bool:
        return self.lower == other.lower and self.upper == other.upper


TwoOracle = Callable[..., RealizableInterval]


def _trivial(k: QuadField) -> RealizableInterval:
    return RealizableInterval.exact_value(k.class_group().trivial())


def _w_factor(k: QuadField, m: int, e: int, tag: str, policy: WPolicy | None,
              plus_minus: bool = False) -> RealizableInterval:
    if e < 0:
        raise DomainError(f"negative exponent {e}")
    cond = NormCondition.plus_minus_one(m) if plus_minus else NormCondition.one(m)
    res = w_group(k, cond, policy)
    name = f"W+-({m})" if plus_minus else f"W({m})"
    sub = res.subgroup.power(e)
    return RealizableInterval.exact_value(sub, tag, f"{name}^{e} -> order {sub.order()}", res.stabilized)


def _odd_factors(k: QuadField, G: AbelianGroupSpec, tag: str, policy) -> RealizableInterval:
    out = _trivial(k)
    n = G.n
    for l in G.primes:
        if l == 2:
            continue
        n1 = G.part(1, l)
        out = out * _w_factor(k, n1, (l - 1) // 2 * (n // n1), tag, policy)
    return out


def realizable_odd(k: QuadField, G: AbelianGroupSpec, policy: WPolicy | None = None) -> RealizableInterval:
    if G.n % 2 == 0:
        raise DomainError(f"{G} has even order")
    return _odd_factors(k, G, "odd-abelian", policy)


def two_cyclic_bounds(k: QuadField, s: int, policy: WPolicy | None = None, upper: Subgroup | None = None,
                      realized: Subgroup | None = None) -> RealizableInterval:
    """Bracket R_t(k, C(2^s)).

    Lower: W(k, 2^s), joined with ``realized`` (classes seen on actual
    extensions).  Upper: ``upper`` if given, else Cl(k).
    """
    if s < 1:
        raise DomainError("s must be >= 1")
    cg = k.class_group()
    w = w_group(k, NormCondition.one(2**s), policy)
    lower = w.subgroup * w.subgroup.power(2)
    trail = [("cyclic-2-power", f"W({2**s}) <= R_t(C({2**s})); order {w.subgroup.order()}")]
    if realized is not None:
        lower = lower * realized
        trail.append(("cyclic-2-power", f"observed classes, order {realized.order()}"))
    top = cg.whole() if upper is None else upper
    trail.append(("cyclic-2-power", "upper = Cl(k)" if upper is None else f"supplied upper, order {top.order()}"))
    if not lower.issubgroup(top):
        raise InconsistencyError(f"supplied upper bound misses known realizable classes for C({2**s})")
    return RealizableInterval(lower, top, trail, w.stabilized)


def _two_term(k, s, two_oracle, policy) -> RealizableInterval:
    oracle = two_oracle or two_cyclic_bounds
    return oracle(k, s, policy=policy)


def realizable_even(k: QuadField, G: AbelianGroupSpec, two_oracle: TwoOracle | None = None,
                    policy: WPolicy | None = None, printed_variant: bool = False) -> RealizableInterval:
    """R_t(k, G) for abelian G of even order.

    With ``printed_variant`` the middle factor in the noncyclic case uses
    modulus n_1(2) rather than n_2(2); see :func:`compare_even_variants`.
    """
    n = G.n
    if n % 2:
        raise DomainError(f"{G} has odd order; use realizable_odd")
    s1, s2 = G.part(1, 2), G.part(2, 2)
    odd = _odd_factors(k, G, "odd-part", policy)
    if s1 == s2:
        return _w_factor(k, s1, n // (2 * s1), "equal-2-parts", policy) * odd
    two = _two_term(k, s1.bit_length() - 1, two_oracle, policy).power(n // s1)
    tag = "noncyclic-2-sylow" if s2 != 1 else "cyclic-2-sylow"
    two.trail.append((tag, f"R_t(C({s1}))^{n // s1}"))
    if s2 != 1:
        m = s1 if printed_variant else s2
        assert n % (2 * s2) == 0
        mid = _w_factor(k, m, n // (2 * s2), "noncyclic-2-sylow", policy)
        return two * mid * odd
    return two * odd


def compare_even_variants(k: QuadField, G: AbelianGroupSpec, two_oracle: TwoOracle | None = None,
                          policy: WPolicy | None = None):
    """Both readings of the noncyclic middle factor and whether they differ."""
    a = realizable_even(k, G, two_oracle, policy)
    b = realizable_even(k, G, two_oracle, policy, printed_variant=True)
    return a, b, not a.same_bounds(b)


def realizable(k: QuadField, G: AbelianGroupSpec, two_oracle: TwoOracle | None = None,
               policy: WPolicy | None = None) -> RealizableInterval:
    if G.n % 2:
        return realizable_odd(k, G, policy)
    return realizable_even(k, G, two_oracle, policy)


def realizable_special(k: QuadField, spec: SpecialGroupSpec, policy: WPolicy | None = None,
                       inner: Subgroup | None = None) -> RealizableInterval:
    """A4, D_{2n} (n odd), or C(2)^n x| G with G odd abelian.

    ``inner`` overrides R_t(k, G) for the semidirect case; by default it is
    computed with :func:`realizable_odd`.
    """
    cg = k.class_group()
    whole = cg.whole()
    if spec.kind == "A4":
        out = realizable_special(k, SpecialGroupSpec.two_vector(2, AbelianGroupSpec.of(3)), policy)
        if out.value != whole:
            raise InconsistencyError(f"A4 gave {out.value}, expected all of Cl(k)")
        out.trail.append(("a4", "W(3)^4 Cl^3 >= Cl^8 Cl^3 = Cl"))
        return out
    if spec.kind == "C2VEC":
        if spec.n < 2:
            raise UnsupportedError("the C(2)^n semidirect formula needs n > 1")
        m = spec.odd.n
        if inner is None:
            base = realizable_odd(k, spec.odd, policy)
        else:
            base = RealizableInterval.exact_value(inner, "c2-vector", "supplied R_t of the acting group")
        base = base.power(2**spec.n)
        base.trail.append(("c2-vector", f"R_t({spec.odd})^{2**spec.n}"))
        out = base * RealizableInterval.exact_value(
            whole.power(m * 2 ** (spec.n - 2)), "c2-vector", f"Cl^{m * 2 ** (spec.n - 2)}")
        return out
    # dihedral D_{2n}, n odd
    n = spec.n
    out = RealizableInterval.exact_value(whole.power(n), "dihedral", f"Cl^{n}")
    for l, v in factor(n).factors:
        for j in range(1, v + 1):
            o = l**j
            out = out * _w_factor(k, o, (l - 1) * 2 * n // o, "dihedral", policy, plus_minus=True)
    return out


def sylow_recompose(k: QuadField, G: AbelianGroupSpec, two_oracle: TwoOracle | None = None,
                    policy: WPolicy | None = None) -> RealizableInterval:
    """prod_l R_t(k, G_l)^(n/n(l)); raises if it disagrees with :func:`realizable`."""
    n = G.n
    out = _trivial(k)
    for l in G.primes:
        Gl = G.sylow(l)
        out = out * realizable(k, Gl, two_oracle, policy).power(n // Gl.n)
    direct = realizable(k, G, two_oracle, policy)
    if not out.same_bounds(direct):
        raise InconsistencyError(f"Sylow recomposition of {G} disagrees: {out} vs {direct}")
    out.trail.append(("sylow-recompose", f"matches direct evaluation for {G}"))
    return out


def steinitz_tower(st_E_over_k: ClassElem, deg_K_over_E: int, norm_of_st_K_over_E: ClassElem) -> ClassElem:
    """st(K/k) = st(E/k)^[K:E] * N_{E/k}(st(K/E)), written additively."""
    return deg_K_over_E * st_E_over_k + norm_of_st_K_over_E


def upper_bound_analytic(k: QuadField, G: AbelianGroupSpec, two_oracle: TwoOracle | None = None,
                         policy: WPolicy | None = None) -> Subgroup:
    """A subgroup containing the Steinitz class of every tame G-extension."""
    n = G.n
    odd = _odd_factors(k, G, "odd-part", policy)
    if n % 2:
        return odd.upper
    s1 = G.part(1, 2)
    if G.part(2, 2) != 1:
        assert n % (2 * s1) == 0
        return (_w_factor(k, s1, n // (2 * s1), "analytic", policy) * odd).upper
    # cyclic 2-Sylow: (l-1)/2 * n/n_1(2) is not an integer; bound R_t(C(n_1(2)))^(n/n_1(2)) instead
    two = _two_term(k, s1.bit_length() - 1, two_oracle, policy)
    return two.upper.power(n // s1) * odd.upper
