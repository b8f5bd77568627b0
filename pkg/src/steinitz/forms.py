"""Positive definite binary quadratic forms: reduction and composition."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .arith import _ext_gcd
from .errors import DomainError


@dataclass(frozen=True, order=True)
class Form:
    """The form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return -a < b <= a <= c and not (a == c and b < 0)

    def normalized(self) -> Form:
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return Form(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> Form:
        if self.a <= 0 or self.disc >= 0:
            raise DomainError(f"{self} is not positive definite")
        f = self.normalized()
        while f.a > f.c or (f.a == f.c and f.b < 0):
            a, b, c = f.c, -f.b, f.a
            f = Form(a, b, c).normalized()
        return f

    def inverse(self) -> Form:
        return Form(self.a, -self.b, self.c).reduced()

    def compose(self, other: Form) -> Form:
        """Dirichlet composition (Cohen, Algorithm 5.4.7), then reduction."""
        if self.disc != other.disc:
            raise DomainError("forms of different discriminants")
        f1, f2 = (self, other) if self.a <= other.a else (other, self)
        a1, b1, c1 = f1.a, f1.b, f1.c
        a2, b2, c2 = f2.a, f2.b, f2.c
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, u, _ = _ext_gcd(a2, a1)
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            d1, x2, y2 = _ext_gcd(s, d)
            y2 = -y2
        v1, v2 = a1 // d1, a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
        out = Form(a3, b3, c3)
        assert out.disc == self.disc
        return out.reduced()

    __mul__ = compose

    def __pow__(self, n: int) -> Form:
        result = principal_form(self.disc)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(D: int) -> Form:
    b = D % 2
    return Form(1, b, (b * b - D) // 4)


def reduced_forms(D: int) -> list[Form]:
    """All primitive reduced forms of negative discriminant D, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"bad negative discriminant {D}")
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(Form(a, b, c))
    return sorted(out)
