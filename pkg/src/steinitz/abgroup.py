"""Finite abelian groups in invariant-factor form and their subgroups.

A subgroup of ``C(f_1) x ... x C(f_r)`` is stored as the lattice ``L`` of
integer vectors whose reduction lands in it; ``L`` always contains
``diag(f)`` and is kept in row Hermite normal form, so two subgroups are
equal exactly when their stored matrices are.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import CapacityError, DomainError

ENUMERATION_CAP = 10_000


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Row HNF of a full-rank integer lattice in Z^ncols.

    Upper triangular, positive diagonal, entries above each pivot reduced
    into [0, pivot).  Raises if the rows do not span a full-rank lattice.
    """
    m = [list(r) for r in rows if any(r)]
    for j in range(ncols):
        active = [r for r in m[j:] if r[j] != 0]
        rest = [r for r in m[j:] if r[j] == 0]
        if not active:
            raise DomainError("lattice is not of full rank")
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[j]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[j] // piv[j]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[j] != 0 else rest).append(r)
            active = nxt
        piv = active[0]
        if piv[j] < 0:
            piv = [-a for a in piv]
        for i in range(j):
            q = m[i][j] // piv[j]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], piv)]
        m = m[:j] + [piv] + [r for r in rest if any(r)]
    return tuple(tuple(r) for r in m[:ncols])


@dataclass(frozen=True)
class FinAbGroup:
    """C(f_1) x ... x C(f_r) with f_{i+1} | f_i; the trivial group is (1,)."""

    factors: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(x) for x in self.factors)
        object.__setattr__(self, "factors", f)
        if not f or any(x < 1 for x in f):
            raise DomainError(f"bad invariant factors {f}")
        if any(f[i] % f[i + 1] for i in range(len(f) - 1)):
            raise DomainError(f"invariant factors must satisfy f_(i+1) | f_i: {f}")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def elem(self, *exponents: int) -> ClassElem:
        if len(exponents) == 1 and not isinstance(exponents[0], int):
            exponents = tuple(exponents[0])
        if len(exponents) != self.rank:
            raise DomainError(f"expected {self.rank} exponents, got {len(exponents)}")
        return ClassElem(self, tuple(int(e) % f for e, f in zip(exponents, self.factors)))

    def identity(self) -> ClassElem:
        return ClassElem(self, (0,) * self.rank)

    def elements(self) -> list[ClassElem]:
        if self.order > ENUMERATION_CAP:
            raise CapacityError(f"group of order {self.order} exceeds enumeration cap")
        out = [()]
        for f in self.factors:
            out = [v + (i,) for v in out for i in range(f)]
        return [ClassElem(self, v) for v in out]

    def whole(self) -> Subgroup:
        return Subgroup._from_rows(self, [[int(i == j) for j in range(self.rank)] for i in range(self.rank)])

    def trivial(self) -> Subgroup:
        return Subgroup.generated(self, [])

    def __str__(self):
        if self.order == 1:
            return "trivial"
        return " x ".join(f"C({f})" for f in self.factors)


@dataclass(frozen=True)
class ClassElem:
    """Element of a FinAbGroup as a reduced exponent vector (written additively)."""

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.group.rank:
            raise DomainError("exponent vector has wrong length")
        if any(not 0 <= e < f for e, f in zip(self.exponents, self.group.factors)):
            raise DomainError(f"exponents {self.exponents} not reduced mod {self.group.factors}")

    def _check(self, other: ClassElem) -> None:
        if other.group != self.group:
            raise DomainError("elements of different groups")

    def __add__(self, other: ClassElem) -> ClassElem:
        self._check(other)
        return self.group.elem([a + b for a, b in zip(self.exponents, other.exponents)])

    def __neg__(self) -> ClassElem:
        return self.group.elem([-a for a in self.exponents])

    def __sub__(self, other: ClassElem) -> ClassElem:
        return self + (-other)

    def __mul__(self, n: int) -> ClassElem:
        return self.group.elem([a * n for a in self.exponents])

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x, k = x + self, k + 1
        return k

    def __iter__(self):
        return iter(self.exponents)

    def __repr__(self):
        return f"ClassElem{list(self.exponents)}"


@dataclass(frozen=True)
class Subgroup:
    ambient: FinAbGroup
    lattice: tuple[tuple[int, ...], ...]

    @classmethod
    def generated(cls, ambient: FinAbGroup, elems: Iterable[ClassElem | Sequence[int]]) -> Subgroup:
        rows = []
        for x in elems:
            if isinstance(x, ClassElem):
                if x.group != ambient:
                    raise DomainError("element does not belong to the ambient group")
                rows.append(list(x.exponents))
            else:
                if len(x) != ambient.rank:
                    raise DomainError(f"dimension mismatch: {len(x)} vs {ambient.rank}")
                rows.append([int(a) for a in x])
        return cls._from_rows(ambient, rows)

    @classmethod
    def _from_rows(cls, ambient: FinAbGroup, rows) -> Subgroup:
        r = ambient.rank
        relations = [[f if i == j else 0 for j in range(r)] for i, f in enumerate(ambient.factors)]
        return cls(ambient, hermite_normal_form(list(rows) + relations, r))

    def _same(self, other: Subgroup) -> None:
        if other.ambient != self.ambient:
            raise DomainError("subgroups of different ambient groups")

    def generators(self) -> list[ClassElem]:
        """Canonical generators: nonzero reduced rows of the Hermite form."""
        out = []
        for row in self.lattice:
            x = self.ambient.elem(row)
            if not x.is_identity():
                out.append(x)
        return out

    def product(self, other: Subgroup) -> Subgroup:
        self._same(other)
        return Subgroup._from_rows(self.ambient, list(self.lattice) + list(other.lattice))

    __mul__ = product

    def power(self, n: int) -> Subgroup:
        """The subgroup {n*a : a in self}."""
        if n < 0:
            raise DomainError("negative exponent")
        return Subgroup._from_rows(self.ambient, [[n * a for a in x] for x in self.generators()])

    __pow__ = power

    def contains(self, x: ClassElem | Sequence[int]) -> bool:
        if isinstance(x, ClassElem):
            if x.group != self.ambient:
                raise DomainError("element does not belong to the ambient group")
            v = list(x.exponents)
        else:
            v = [int(a) for a in x]
        for j, row in enumerate(self.lattice):
            if v[j] % row[j]:
                return False
            q = v[j] // row[j]
            v = [a - q * b for a, b in zip(v, row)]
        return True

    __contains__ = contains

    def issubgroup(self, other: Subgroup) -> bool:
        self._same(other)
        return all(other.contains(x) for x in self.generators())

    __le__ = issubgroup

    def __ge__(self, other: Subgroup) -> bool:
        return other.issubgroup(self)

    def order(self) -> int:
        return self.ambient.order // prod(row[i] for i, row in enumerate(self.lattice))

    def is_trivial(self) -> bool:
        return self.order() == 1

    def is_whole(self) -> bool:
        return self.order() == self.ambient.order

    def enumerate(self, cap: int = ENUMERATION_CAP) -> list[ClassElem]:
        if self.order() > cap:
            raise CapacityError(f"subgroup of order {self.order()} exceeds cap {cap}")
        seen = {self.ambient.identity()}
        frontier = list(seen)
        gens = self.generators()
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x + g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, key=lambda e: e.exponents)

    def __repr__(self):
        gens = [list(g.exponents) for g in self.generators()]
        return f"Subgroup(order={self.order()} of {self.ambient}, gens={gens})"


def generated(ambient: FinAbGroup, elems) -> Subgroup:
    return Subgroup.generated(ambient, elems)


def product(a: Subgroup, b: Subgroup) -> Subgroup:
    return a.product(b)


def power(a: Subgroup, n: int) -> Subgroup:
    return a.power(n)


def contains(a: Subgroup, x) -> bool:
    return a.contains(x)


def equals(a: Subgroup, b: Subgroup) -> bool:
    a._same(b)
    return a == b


def order(a: Subgroup) -> int:
    return a.order()


def enumerate_subgroup(a: Subgroup, cap: int = ENUMERATION_CAP) -> list[ClassElem]:
    return a.enumerate(cap)
