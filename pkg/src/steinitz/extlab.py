"""Tame quadratic and biquadratic extensions of k, computed from scratch.

A quadratic extension k(sqrt(alpha)) is tame exactly when it is unramified
above 2.  That is decided by brute force in a finite quotient of O_k:
at a prime P over 2 with e = v_P(2), alpha (of even valuation v) is a
square up to unramified twist iff x^2 = alpha mod P^(v+2e) is solvable.
The relative discriminant is then the product of the odd primes where
alpha has odd valuation, and d/(alpha) is the square of an ideal whose
class is the Steinitz class.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm

from .abgroup import ClassElem, Subgroup
from .engine import AbelianGroupSpec, RealizableInterval, realizable, upper_bound_analytic
from .errors import (CapacityError, DegenerateExtension, DomainError, InconsistencyError, NotASquare,
                     PreconditionError, TheoremContradiction, UnsupportedError, WildRamification)
from .quadfield import FieldElem, FracIdeal, PrimeIdeal, QuadField, ideal_sqrt

SEARCH_CAP = 1 << 16


@dataclass(frozen=True)
class TwoAdicCheck:
    prime: PrimeIdeal
    valuation: int
    witness: FieldElem | None

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class TameResult:
    tame: bool
    checks: tuple[TwoAdicCheck, ...]

    @property
    def failing_prime(self) -> PrimeIdeal | None:
        for c in self.checks:
            if not c.ok:
                return c.prime
        return None


def _nonzero_nonsquare(k: QuadField, alpha: FieldElem, code: str = "DEGENERATE_SQUARE") -> FieldElem:
    if not isinstance(alpha, FieldElem):
        alpha = k.elem(alpha)
    if alpha.is_zero():
        raise DomainError("alpha must be nonzero")
    if alpha.is_square():
        raise DegenerateExtension(f"{alpha} is a square in {k}", code)
    return alpha


def _integral_model(alpha: FieldElem) -> FieldElem:
    """alpha times a rational square, integral and with as little 2-power as possible."""
    den = lcm(alpha.a.denominator, alpha.b.denominator)
    alpha = alpha * (den * den)
    while (alpha / 4).is_integral():
        alpha = alpha / 4
    return alpha


_local_cache: dict[tuple, tuple[int, int] | None] = {}


def _local_square(k: QuadField, alpha: FieldElem, P: PrimeIdeal) -> TwoAdicCheck:
    v = k.valuation(alpha, P)
    if v % 2:
        return TwoAdicCheck(P, v, None)
    e = 2 if P.ramified else 1
    N = v + 2 * e
    c = -(-N // e)
    size = 1 << c
    if size * size > SEARCH_CAP:
        raise CapacityError(f"residue search modulo 2^{c} is too large")
    # the answer only depends on alpha mod 2^c, which lies inside P^N
    A, B = int(alpha.a) % size, int(alpha.b) % size
    key = (k.d, P, v, A, B)
    if key not in _local_cache:
        _local_cache[key] = None
        for s in range(size):
            for t in range(size):
                x, y = k._mul_xy((s, t), (s, t))
                x, y = x - A, y - B
                if (x == 0 and y == 0) or k._int_valuation(x, y, P) >= N:
                    _local_cache[key] = (s, t)
                    break
            if _local_cache[key] is not None:
                break
    w = _local_cache[key]
    return TwoAdicCheck(P, v, None if w is None else k.elem(*w))


def tame_test(k: QuadField, alpha: FieldElem) -> TameResult:
    """Whether k(sqrt(alpha))/k is unramified above 2, with per-prime witnesses."""
    alpha = _integral_model(_nonzero_nonsquare(k, alpha))
    checks = tuple(_local_square(k, alpha, P) for P in k.split_prime(2))
    return TameResult(all(c.ok for c in checks), checks)


def _require_tame(k: QuadField, alpha: FieldElem) -> TameResult:
    res = tame_test(k, alpha)
    if not res.tame:
        raise WildRamification(f"k(sqrt({alpha})) is wildly ramified at {res.failing_prime}")
    return res


def quad_discriminant(k: QuadField, alpha: FieldElem) -> FracIdeal:
    _require_tame(k, alpha)
    return _odd_part(k, alpha)


def _odd_part(k: QuadField, alpha: FieldElem) -> FracIdeal:
    return FracIdeal.from_dict({P: 1 for P, e in k.element_ideal(alpha).items() if e % 2 and P.p != 2})


def _steinitz_ideal(k: QuadField, disc: FracIdeal, alpha: FieldElem) -> FracIdeal:
    try:
        return ideal_sqrt(disc / k.element_ideal(alpha))
    except NotASquare as exc:
        raise InconsistencyError(f"d/(alpha) is not a square for alpha={alpha}: {exc}") from exc


def steinitz_quad(k: QuadField, alpha: FieldElem) -> ClassElem:
    disc = quad_discriminant(k, alpha)
    return k.ideal_class(_steinitz_ideal(k, disc, alpha))


@dataclass(frozen=True)
class TameQuadExt:
    alpha: FieldElem
    disc: FracIdeal
    steinitz: ClassElem
    tame: TameResult

    @property
    def unramified(self) -> bool:
        return self.disc.is_unit()


def quad_extension(k: QuadField, alpha: FieldElem) -> TameQuadExt:
    """The tame extension k(sqrt(alpha)) with its discriminant and Steinitz class."""
    if not isinstance(alpha, FieldElem):
        alpha = k.elem(alpha)
    tame = _require_tame(k, alpha)
    disc = _odd_part(k, alpha)
    st = k.ideal_class(_steinitz_ideal(k, disc, alpha))
    if 2 * st != k.ideal_class(disc / k.element_ideal(alpha)):
        raise InconsistencyError(f"Steinitz class of {alpha} does not square to the class of d/(alpha)")
    return TameQuadExt(alpha, disc, st, tame)


@lru_cache(maxsize=4096)
def _quad_cached(k: QuadField, alpha: FieldElem) -> TameQuadExt:
    return quad_extension(k, alpha)


@dataclass(frozen=True)
class BiquadExt:
    alphas: tuple[FieldElem, FieldElem]
    disc: FracIdeal
    steinitz: ClassElem
    contributions: tuple[ClassElem, ClassElem, ClassElem]
    coprime: bool

    @property
    def paths_agree(self) -> bool:
        a, b, c = self.contributions
        return a + b + c == self.steinitz


def compose_biquadratic(k: QuadField, alpha1: FieldElem, alpha2: FieldElem,
                        require_coprime: bool = True) -> BiquadExt:
    """k(sqrt(alpha1), sqrt(alpha2)) assembled from its three quadratic subfields.

    The Steinitz class is the class of sqrt(d1*d2*d3); it is checked against
    the sum of the three quadratic Steinitz classes, which must agree since
    alpha1*alpha2*(alpha1*alpha2) is a square.
    """
    if not isinstance(alpha1, FieldElem):
        alpha1 = k.elem(alpha1)
    if not isinstance(alpha2, FieldElem):
        alpha2 = k.elem(alpha2)
    _nonzero_nonsquare(k, alpha1)
    _nonzero_nonsquare(k, alpha2)
    alpha3 = _nonzero_nonsquare(k, alpha1 * alpha2, "DEGENERATE_PRODUCT_SQUARE")
    q1, q2, q3 = (_quad_cached(k, a) for a in (alpha1, alpha2, alpha3))
    coprime = not set(q1.disc.primes()) & set(q2.disc.primes())
    if require_coprime and not coprime:
        raise PreconditionError(f"discriminants {q1.disc} and {q2.disc} are not coprime")
    disc = q1.disc * q2.disc * q3.disc
    try:
        root = ideal_sqrt(disc)
    except NotASquare as exc:
        raise InconsistencyError(f"biquadratic discriminant {disc} is not a square") from exc
    out = BiquadExt((alpha1, alpha2), disc, k.ideal_class(root), (q1.steinitz, q2.steinitz, q3.steinitz), coprime)
    if not out.paths_agree:
        raise InconsistencyError(f"biquadratic Steinitz paths disagree for {alpha1}, {alpha2}")
    if coprime and q3.steinitz != q1.steinitz + q2.steinitz:
        raise InconsistencyError(f"coprime composition rule fails for {alpha1}, {alpha2}")
    return out


@dataclass(frozen=True)
class Sample:
    alpha: tuple[FieldElem, ...]
    disc_norm: int
    steinitz: ClassElem

    def to_json(self) -> dict:
        a = [x.as_pair() for x in self.alpha]
        return {"alpha": a[0] if len(a) == 1 else a, "disc_norm": self.disc_norm,
                "class": list(self.steinitz.exponents)}


@dataclass
class EnumerationReport:
    field_d: int
    bound: int
    samples: list[Sample]
    realized: Subgroup
    kind: str = "quadratic"
    rejected_wild: int = 0

    @property
    def count(self) -> int:
        return len(self.samples)

    def classes(self) -> list[ClassElem]:
        return sorted({s.steinitz for s in self.samples}, key=lambda c: c.exponents)

    def to_json(self) -> dict:
        return {
            "field_d": self.field_d,
            "bound": self.bound,
            "kind": self.kind,
            "count": self.count,
            "rejected_wild": self.rejected_wild,
            "samples": [s.to_json() for s in self.samples],
            "realized": [list(g.exponents) for g in self.realized.generators()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _candidate_ideals(k: QuadField, bound: int, max_primes: int, exponents):
    primes = k.odd_primes_up_to(bound)
    for r in range(1, max_primes + 1):
        for combo in itertools.combinations(primes, r):
            for exps in itertools.product(exponents, repeat=r):
                yield FracIdeal.from_dict(dict(zip(combo, exps)))


def _is_rational_square(q: Fraction) -> bool:
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def _integral_is_square(alpha: FieldElem) -> bool:
    """Square test for an algebraic integer using integer arithmetic only.

    Write 2*alpha = X + Y*sqrt(d).  If alpha = ((U + V*sqrt(d))/2)^2 then
    U^2 = X +- 2*sqrt(N(alpha)) and Y = U*V.
    """
    k = alpha.field
    x, y = alpha.sqrt_coords()
    X, Y = int(2 * x), int(2 * y)
    n2 = (X * X - k.d * Y * Y) // 4
    n = isqrt(n2)
    if n * n != n2:
        return False
    for U2 in {X + 2 * n, X - 2 * n}:
        U = isqrt(U2) if U2 >= 0 else -1
        if U < 0 or U * U != U2:
            continue
        if U == 0:
            if Y or (2 * X) % k.d:
                continue
            V2 = 2 * X // k.d
            V = isqrt(V2) if V2 >= 0 else -1
        elif Y % U:
            continue
        else:
            V = Y // U
        if V < 0 and U == 0 or U * U + k.d * V * V != 2 * X:
            continue
        if (U - V) % 2 == 0 and (k.trace == 1 or U % 2 == 0):
            return True
    return False


def _odd_exponent_part(I: FracIdeal) -> FracIdeal:
    return FracIdeal.from_dict({P: 1 for P, e in I.items() if e % 2})


def enumerate_tame_quadratic(k: QuadField, norm_bound: int, max_primes: int = 3,
                             exponents=(1, 2)) -> EnumerationReport:
    """Tame quadratic extensions k(sqrt(alpha)) for alpha = unit * generator of a principal
    product of at most ``max_primes`` odd primes of norm <= ``norm_bound``.

    Exponent 2 is allowed by default: with squarefree (alpha) only, d/(alpha)
    is a unit ideal and every class found would be trivial.
    """
    if norm_bound < 2:
        raise DomainError("norm bound must be >= 2")
    units = k.unit_square_classes()
    buckets: dict[FracIdeal, list[tuple[FieldElem, Fraction]]] = {}
    samples, wild = [], 0
    for I in _candidate_ideals(k, norm_bound, max_primes, exponents):
        if not k.ideal_class_by_primes(I).is_identity():
            continue
        g = k.principal_generator(I)
        if g is None:
            raise InconsistencyError(f"{I} has trivial class but no generator")
        disc = _odd_exponent_part(I)
        for u in units:
            alpha = g * u
            if disc.is_unit() and alpha.is_square():
                continue
            # same odd part means alpha/beta generates a square ideal; test it directly
            bucket = buckets.setdefault(disc, [])
            nI = I.norm()
            if any(_is_rational_square(nI / nb) and _integral_is_square(alpha * b) for b, nb in bucket):
                continue
            bucket.append((alpha, nI))
            if not tame_test(k, alpha).tame:
                wild += 1
                continue
            st = k.ideal_class(ideal_sqrt(disc / I))
            if 2 * st != k.ideal_class_by_primes(disc / I):
                raise InconsistencyError(f"Steinitz class of {alpha} does not square to the class of d/(alpha)")
            samples.append(Sample((alpha,), int(disc.norm()), st))
    cg = k.class_group()
    realized = Subgroup.generated(cg.group, [s.steinitz for s in samples])
    return EnumerationReport(k.d, norm_bound, samples, realized, "quadratic", wild)


def enumerate_tame_biquadratic(k: QuadField, norm_bound: int, sample_limit: int = 60,
                               base: EnumerationReport | None = None) -> EnumerationReport:
    """Biquadratic extensions from pairs of the first ``sample_limit`` quadratic samples.

    Pairs with common ramified primes are kept: coprime pairs only reach
    classes of the form 2*(x + y).
    """
    base = base or enumerate_tame_quadratic(k, norm_bound)
    alphas = [s.alpha[0] for s in base.samples[:sample_limit]]
    samples = []
    for a1, a2 in itertools.combinations(alphas, 2):
        if (a1 * a2).is_square():
            continue
        b = compose_biquadratic(k, a1, a2, require_coprime=False)
        samples.append(Sample((a1, a2), int(b.disc.norm()), b.steinitz))
    realized = Subgroup.generated(k.class_group().group, [s.steinitz for s in samples])
    return EnumerationReport(k.d, norm_bound, samples, realized, "biquadratic", 0)


@dataclass(frozen=True)
class VerificationOutcome:
    group: AbelianGroupSpec
    realized: Subgroup
    interval: RealizableInterval
    attained: bool
    samples_checked: int

    @property
    def certified(self) -> bool:
        return self.interval.exact and self.attained

    def to_json(self) -> dict:
        gens = lambda s: [list(g.exponents) for g in s.generators()]
        return {
            "group": list(self.group.factors),
            "realized": gens(self.realized),
            "realized_order": self.realized.order(),
            "lower": gens(self.interval.lower),
            "upper": gens(self.interval.upper),
            "exact": self.interval.exact,
            "attained": self.attained,
            "certified": self.certified,
            "samples_checked": self.samples_checked,
        }


ENUMERABLE = {(2,), (2, 2)}


def verify_against_engine(k: QuadField, G: AbelianGroupSpec, report: EnumerationReport,
                          interval: RealizableInterval | None = None, policy=None) -> VerificationOutcome:
    """Check enumerated Steinitz classes against the engine's interval for G.

    Raises TheoremContradiction if anything realized falls outside the upper
    bound or the analytic bound.
    """
    if G.factors not in ENUMERABLE:
        raise UnsupportedError(f"only C(2) and C(2) x C(2) extensions are enumerable, not {G}")
    interval = interval or realizable(k, G, policy=policy)
    if not report.realized.issubgroup(interval.upper):
        raise TheoremContradiction(f"realized {report.realized} escapes upper bound {interval.upper}")
    bound = upper_bound_analytic(k, G, policy=policy)
    for s in report.samples:
        if not bound.contains(s.steinitz):
            raise TheoremContradiction(f"Steinitz class {s.steinitz} of {s.alpha} escapes the analytic bound")
    attained = interval.lower.issubgroup(report.realized)
    return VerificationOutcome(G, report.realized, interval, attained, len(report.samples))


def alpha_from_pair(k: QuadField, pair) -> FieldElem:
    """Inverse of FieldElem.as_pair."""
    return k.elem(Fraction(pair[0]), Fraction(pair[1]))
