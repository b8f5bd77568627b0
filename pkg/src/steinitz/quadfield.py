"""Imaginary quadratic fields: elements, prime ideals, factored fractional
ideals, principality and the ideal class group via reduced forms.

Elements are written ``a + b*omega`` with ``omega = sqrt(d)`` when
``d = 2, 3 mod 4`` and ``omega = (1 + sqrt(d))/2`` when ``d = 1 mod 4``.
Integral ideals also have a Z-basis ``{A, B + C*omega}`` (Hermite form),
which is what links them to binary quadratic forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt, lcm
from typing import Iterator

from sympy import primerange
from sympy.ntheory import sqrt_mod

from .abgroup import ClassElem, FinAbGroup, Subgroup, hermite_normal_form
from .arith import prime_factors, valuation
from .errors import DomainError, NotASquare, UnsupportedError
from .forms import Form, principal_form, reduced_forms


def _is_squarefree(n: int) -> bool:
    return all(valuation(n, p) == 1 for p in prime_factors(abs(n))) if abs(n) > 1 else True


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D|p) for a prime p."""
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 == 1 else -1
    return 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class QuadField:
    d: int
    disc: int
    trace: int  # trace of omega
    norm_omega: int  # norm of omega; omega^2 = trace*omega - norm_omega

    # ---- elements -------------------------------------------------------

    def elem(self, a, b=0) -> FieldElem:
        return FieldElem(self, Fraction(a), Fraction(b))

    def from_sqrt(self, x, y=0) -> FieldElem:
        """The element x + y*sqrt(d)."""
        x, y = Fraction(x), Fraction(y)
        if self.trace == 0:
            return FieldElem(self, x, y)
        return FieldElem(self, x - y, 2 * y)

    @property
    def omega(self) -> FieldElem:
        return self.elem(0, 1)

    def _norm_xy(self, x, y):
        return x * x + self.trace * x * y + self.norm_omega * y * y

    def _mul_xy(self, u, v):
        x1, y1 = u
        x2, y2 = v
        return (x1 * x2 - self.norm_omega * y1 * y2, x1 * y2 + x2 * y1 + self.trace * y1 * y2)

    # ---- primes ---------------------------------------------------------

    def _roots_mod(self, p: int) -> list[int]:
        if p == 2:
            return [r for r in (0, 1) if (r * r - self.trace * r + self.norm_omega) % 2 == 0]
        if self.trace == 0:
            return sorted(sqrt_mod(self.d % p, p, all_roots=True))
        inv2 = (p + 1) // 2
        return sorted({((s + 1) * inv2) % p for s in sqrt_mod(self.d % p, p, all_roots=True)})

    def split_prime(self, p: int) -> list[PrimeIdeal]:
        k = kronecker(self.disc, p)
        if k == -1:
            return [PrimeIdeal(p, 2, None, False)]
        roots = self._roots_mod(p)
        if k == 0:
            return [PrimeIdeal(p, 1, roots[0], True)]
        assert len(roots) == 2
        return [PrimeIdeal(p, 1, r, False) for r in roots]

    def conjugate_prime(self, P: PrimeIdeal) -> PrimeIdeal:
        if P.root is None or P.ramified:
            return P
        return PrimeIdeal(P.p, 1, (self.trace - P.root) % P.p, False)

    def valuation(self, alpha: FieldElem, P: PrimeIdeal) -> int:
        if alpha.is_zero():
            raise DomainError("valuation of 0")
        den = lcm(alpha.a.denominator, alpha.b.denominator)
        x, y = int(alpha.a * den), int(alpha.b * den)
        e = 2 if P.ramified else 1
        return self._int_valuation(x, y, P) - e * valuation(den, P.p)

    def _int_valuation(self, x: int, y: int, P: PrimeIdeal) -> int:
        p = P.p
        t = valuation(gcd(x, y), p)
        x, y = x // p**t, y // p**t
        if P.residue_degree == 2:
            return t
        vn = valuation(self._norm_xy(x, y), p)
        if P.ramified:
            return 2 * t + vn
        return t + vn if (x + y * P.root) % p == 0 else t

    def degree_one_primes(self, norm_bound: int) -> Iterator[PrimeIdeal]:
        """Unramified primes of norm p <= norm_bound, in increasing norm order."""
        for p in primerange(2, norm_bound + 1):
            if kronecker(self.disc, p) == 1:
                yield from self.split_prime(p)

    def odd_primes_up_to(self, norm_bound: int) -> list[PrimeIdeal]:
        """All prime ideals not above 2 with norm <= norm_bound."""
        out = []
        for p in primerange(3, norm_bound + 1):
            out.extend(P for P in self.split_prime(p) if P.norm <= norm_bound)
        return out

    # ---- ideals ---------------------------------------------------------

    def element_ideal(self, alpha: FieldElem) -> FracIdeal:
        if alpha.is_zero():
            raise DomainError("the zero element does not generate a fractional ideal")
        den = lcm(alpha.a.denominator, alpha.b.denominator)
        x, y = int(alpha.a * den), int(alpha.b * den)
        primes = set(prime_factors(abs(self._norm_xy(x, y)))) | set(prime_factors(den))
        exps = {}
        for p in primes:
            for P in self.split_prime(p):
                v = self.valuation(alpha, P)
                if v:
                    exps[P] = v
        return FracIdeal.from_dict(exps)

    def integral_part(self, I: FracIdeal) -> tuple[int, FracIdeal]:
        """(m, J) with J integral and I = J / m."""
        m, out = 1, {}
        for P, e in I.items():
            if e > 0:
                out[P] = out.get(P, 0) + e
                continue
            m *= P.p ** (-e)
            if P.residue_degree == 2:
                continue
            Q = self.conjugate_prime(P)
            out[Q] = out.get(Q, 0) - e
        return m, FracIdeal.from_dict(out)

    def prime_hnf(self, P: PrimeIdeal) -> tuple[int, int, int]:
        if P.residue_degree == 2:
            return (P.p, 0, P.p)
        return (P.p, (-P.root) % P.p, 1)

    def _hnf_of(self, vectors) -> tuple[int, int, int]:
        # columns ordered (y, x) so the Hermite form reads [[C, B], [0, A]]
        (C, B), (_, A) = hermite_normal_form([(y, x) for x, y in vectors], 2)
        return (A, B, C)

    def hnf_multiply(self, h1, h2) -> tuple[int, int, int]:
        A1, B1, C1 = h1
        A2, B2, C2 = h2
        basis1 = [(A1, 0), (B1, C1)]
        basis2 = [(A2, 0), (B2, C2)]
        return self._hnf_of([self._mul_xy(u, v) for u in basis1 for v in basis2])

    def hnf(self, I: FracIdeal) -> tuple[int, int, int]:
        """Z-basis {A, B + C*omega} of an integral ideal."""
        if not I.is_integral():
            raise DomainError("hnf needs an integral ideal")
        h = (1, 0, 1)
        for P, e in I.items():
            hp = self.prime_hnf(P)
            for _ in range(e):
                h = self.hnf_multiply(h, hp)
        return h

    def hnf_form(self, h) -> Form:
        """Reduced form attached to the ideal with Z-basis {A, B + C*omega}."""
        A, B, C = h
        assert A % C == 0 and B % C == 0, h
        a, b0 = A // C, B // C
        b = -2 * b0 - self.trace
        num = b * b - self.disc
        assert num % (4 * a) == 0, (h, a, b)
        return Form(a, b, num // (4 * a)).reduced()

    def ideal_form(self, I: FracIdeal) -> Form:
        return self.hnf_form(self.hnf(self.integral_part(I)[1]))

    def prime_form(self, P: PrimeIdeal) -> Form:
        return self.hnf_form(self.prime_hnf(P))

    @cached_property
    def _class_group(self) -> ClassGroup:
        return ClassGroup.build(self)

    def class_group(self) -> ClassGroup:
        return self._class_group

    def ideal_class(self, I: FracIdeal) -> ClassElem:
        return self.class_group().form_class(self.ideal_form(I))

    @cached_property
    def _prime_classes(self) -> dict:
        return {}

    def prime_class(self, P: PrimeIdeal) -> ClassElem:
        c = self._prime_classes.get(P)
        if c is None:
            c = self._prime_classes[P] = self.class_group().form_class(self.prime_form(P))
        return c

    def ideal_class_by_primes(self, I: FracIdeal) -> ClassElem:
        """Class of I summed prime by prime; an independent route used for checks."""
        out = self.class_group().group.identity()
        for P, e in I.items():
            out = out + e * self.prime_class(P)
        return out

    def principal_generator(self, I: FracIdeal) -> FieldElem | None:
        """A generator of I, or None if I is not principal.

        The norm form is positive definite, so I is principal exactly when
        the shortest vector of its lattice has norm N(I).
        """
        m, J = self.integral_part(I)
        A, B, C = self.hnf(J)
        u, v = (A, 0), (B, C)
        nu, nv = self._norm_xy(*u), self._norm_xy(*v)
        while True:
            if nv < nu:
                u, v, nu, nv = v, u, nv, nu
            cross = self._norm_xy(u[0] + v[0], u[1] + v[1]) - nu - nv
            mu = (cross + nu) // (2 * nu)
            if mu == 0:
                break
            v = (v[0] - mu * u[0], v[1] - mu * u[1])
            nv = self._norm_xy(*v)
        if nu != A * C:
            return None
        return FieldElem(self, Fraction(u[0], m), Fraction(u[1], m))

    def is_principal(self, I: FracIdeal) -> bool:
        return self.principal_generator(I) is not None

    def unit_square_classes(self) -> list[FieldElem]:
        """Representatives of units modulo squares of units."""
        if self.d == -1:
            return [self.elem(1), self.omega]
        return [self.elem(1), self.elem(-1)]

    def __str__(self):
        return f"Q(sqrt({self.d}))"


@lru_cache(maxsize=None)
def make_field(d: int) -> QuadField:
    d = int(d)
    if d >= 0:
        raise UnsupportedError(f"only imaginary quadratic fields are supported (d={d})")
    if not _is_squarefree(d):
        raise DomainError(f"d={d} is not squarefree")
    if d % 4 == 1:
        return QuadField(d, d, 1, (1 - d) // 4)
    return QuadField(d, 4 * d, 0, -d)


@dataclass(frozen=True)
class FieldElem:
    field: QuadField = field(repr=False)
    a: Fraction
    b: Fraction

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        return FieldElem(self.field, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        x, y = self.field._mul_xy((self.a, self.b), (o.a, o.b))
        return FieldElem(self.field, x, y)

    __rmul__ = __mul__

    def conj(self) -> FieldElem:
        # conj(omega) = trace - omega
        return FieldElem(self.field, self.a + self.field.trace * self.b, -self.b)

    def norm(self) -> Fraction:
        return self.field._norm_xy(self.a, self.b)

    def inverse(self) -> FieldElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        c = self.conj()
        return FieldElem(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        out = FieldElem(self.field, Fraction(1), Fraction(0))
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """(x, y) with self = x + y*sqrt(d)."""
        if self.field.trace == 0:
            return self.a, self.b
        return self.a + self.b / 2, self.b / 2

    def sqrt(self) -> FieldElem | None:
        """A square root in the field, or None if self is not a square."""
        k = self.field
        if self.is_zero():
            return self
        A, B = self.sqrt_coords()
        candidates = []
        if B == 0:
            r = _rational_sqrt(A)
            if r is not None:
                candidates.append(k.from_sqrt(r, 0))
            r = _rational_sqrt(A / k.d)
            if r is not None:
                candidates.append(k.from_sqrt(0, r))
        else:
            n = _rational_sqrt(A * A - k.d * B * B)
            if n is not None:
                for s in (n, -n):
                    x = _rational_sqrt((A + s) / 2)
                    if x:
                        candidates.append(k.from_sqrt(x, B / (2 * x)))
        for c in candidates:
            if c * c == self:
                return c
        return None

    def is_square(self) -> bool:
        return self.sqrt() is not None

    def as_pair(self) -> list:
        """JSON-friendly [a, b] (ints when integral, else 'p/q' strings)."""
        return [int(c) if c.denominator == 1 else str(c) for c in (self.a, self.b)]

    def __str__(self):
        return f"{self.a} + {self.b}*w"


@dataclass(frozen=True)
class PrimeIdeal:
    """The prime (p, omega - root) of O_k, or (p) itself when p is inert."""

    p: int
    residue_degree: int
    root: int | None
    ramified: bool

    @property
    def norm(self) -> int:
        return self.p**self.residue_degree

    @property
    def generator_pair(self) -> tuple[int, int | None]:
        return (self.p, self.root)

    def _key(self):
        return (self.p, -1 if self.root is None else self.root)

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        if self.root is None:
            return f"({self.p})"
        return f"({self.p}, w-{self.root})"


@dataclass(frozen=True)
class FracIdeal:
    """Fractional ideal as a sorted tuple of (prime, nonzero exponent)."""

    exps: tuple[tuple[PrimeIdeal, int], ...] = ()

    @classmethod
    def from_dict(cls, d) -> FracIdeal:
        return cls(tuple(sorted(((P, e) for P, e in d.items() if e), key=lambda t: t[0]._key())))

    @classmethod
    def unit(cls) -> FracIdeal:
        return cls()

    @classmethod
    def prime(cls, P: PrimeIdeal, e: int = 1) -> FracIdeal:
        return cls.from_dict({P: e})

    def items(self):
        return iter(self.exps)

    def as_dict(self) -> dict:
        return dict(self.exps)

    def __mul__(self, other: FracIdeal) -> FracIdeal:
        d = self.as_dict()
        for P, e in other.exps:
            d[P] = d.get(P, 0) + e
        return FracIdeal.from_dict(d)

    def __pow__(self, n: int) -> FracIdeal:
        return FracIdeal.from_dict({P: e * n for P, e in self.exps})

    def inverse(self) -> FracIdeal:
        return self**-1

    def __truediv__(self, other: FracIdeal) -> FracIdeal:
        return self * other.inverse()

    def norm(self) -> Fraction:
        out = Fraction(1)
        for P, e in self.exps:
            out *= Fraction(P.norm) ** e
        return out

    def is_integral(self) -> bool:
        return all(e > 0 for _, e in self.exps)

    def is_unit(self) -> bool:
        return not self.exps

    def valuation(self, P: PrimeIdeal) -> int:
        return self.as_dict().get(P, 0)

    def primes(self) -> list[PrimeIdeal]:
        return [P for P, _ in self.exps]

    def __str__(self):
        if not self.exps:
            return "(1)"
        return "*".join(f"{P}^{e}" if e != 1 else str(P) for P, e in self.exps)


def ideal_sqrt(k_or_I, I: FracIdeal | None = None) -> FracIdeal:
    """The unique J with J^2 = I.  Accepts ``ideal_sqrt(I)`` or ``ideal_sqrt(k, I)``."""
    if I is None:
        I = k_or_I
    bad = [str(P) for P, e in I.exps if e % 2]
    if bad:
        raise NotASquare(f"odd exponent at {', '.join(bad)}")
    return FracIdeal.from_dict({P: e // 2 for P, e in I.exps})


@dataclass
class ClassGroup:
    """Cl(k) in invariant-factor form with the form <-> class dictionary."""

    field: QuadField
    group: FinAbGroup
    forms: list[Form]
    form_to_elem: dict[Form, ClassElem]
    elem_to_form: dict[ClassElem, Form]

    @classmethod
    def build(cls, k: QuadField) -> ClassGroup:
        from sympy import Matrix
        from sympy.matrices.normalforms import smith_normal_decomp

        D = k.disc
        forms = reduced_forms(D)
        one = principal_form(D)
        # greedy generators; coords[f] are exponents in the generators chosen so far
        coords: dict[Form, list[int]] = {one: []}
        relations: list[list[int]] = []
        for g in forms:
            if g in coords:
                continue
            s = len(relations)
            for v in coords.values():
                v.append(0)
            e, x = 1, g
            while x not in coords:
                e, x = e + 1, x * g
            rel = [-c for c in coords[x]]
            rel[s] += e
            relations.append(rel)
            old = list(coords.items())
            x = one
            for j in range(e):
                for f, v in old:
                    y = f * x
                    if y not in coords:
                        w = list(v)
                        w[s] = j
                        coords[y] = w
                x = x * g
        assert len(coords) == len(forms)
        if not relations:
            group = FinAbGroup((1,))
            f2e = {one: group.identity()}
            return cls(k, group, forms, f2e, {group.identity(): one})
        width = len(relations)
        R = Matrix([r + [0] * (width - len(r)) for r in relations])
        S, _, V = smith_normal_decomp(R)
        diag = [int(S[i, i]) for i in range(S.rows)]
        keep = [i for i, s in enumerate(diag) if s > 1][::-1]
        group = FinAbGroup(tuple(diag[i] for i in keep))
        f2e = {}
        for f, v in coords.items():
            y = Matrix([v]) * V
            f2e[f] = group.elem([int(y[0, i]) for i in keep])
        e2f = {e: f for f, e in f2e.items()}
        assert len(e2f) == len(forms) == group.order
        return cls(k, group, forms, f2e, e2f)

    @property
    def order(self) -> int:
        return self.group.order

    def form_class(self, f: Form) -> ClassElem:
        return self.form_to_elem[f.reduced()]

    def whole(self) -> Subgroup:
        return self.group.whole()

    def trivial(self) -> Subgroup:
        return self.group.trivial()


# module-level spellings of the field operations

def split_prime(k: QuadField, p: int) -> list[PrimeIdeal]:
    return k.split_prime(p)


def class_group(k: QuadField) -> ClassGroup:
    return k.class_group()


def ideal_class(k: QuadField, I: FracIdeal) -> ClassElem:
    return k.ideal_class(I)


def element_ideal(k: QuadField, alpha: FieldElem) -> FracIdeal:
    return k.element_ideal(alpha)


def degree_one_primes(k: QuadField, norm_bound: int) -> Iterator[PrimeIdeal]:
    return k.degree_one_primes(norm_bound)
