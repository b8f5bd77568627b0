"""W(k, m): ideal classes containing primes that split completely in k(zeta_m).

A degree-1 prime of norm p (p not dividing m) splits completely in
k(zeta_m) exactly when p = 1 mod m, and in the fixed field of the
{+-1}-part exactly when p = +-1 mod m.  The subgroup is found by walking the
degree-1 primes in norm order until a run of ``window`` qualifying primes
adds no new class.  This is a sampling procedure, not a proof: the result
records whether it stabilized.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .abgroup import Subgroup
from .arith import prime_factors
from .errors import DomainError
from .quadfield import QuadField

log = logging.getLogger(__name__)

CACHE_ENV = "STEINITZ_CACHE_DIR"


@dataclass(frozen=True)
class NormCondition:
    modulus: int
    allowed_residues: frozenset[int]

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise DomainError("modulus must be positive")
        res = frozenset(r % m for r in self.allowed_residues)
        object.__setattr__(self, "allowed_residues", res)
        if 1 % m not in res:
            raise DomainError("allowed residues must contain 1")
        if any(gcd(r, m) != 1 for r in res if m > 1):
            raise DomainError(f"residues {sorted(res)} are not all units mod {m}")

    @classmethod
    def one(cls, m: int) -> NormCondition:
        return cls(m, frozenset({1}))

    @classmethod
    def plus_minus_one(cls, m: int) -> NormCondition:
        return cls(m, frozenset({1, m - 1}))

    def admits(self, p: int) -> bool:
        return p % self.modulus in self.allowed_residues

    def is_vacuous(self) -> bool:
        """True when every residue coprime to m is allowed (m <= 2)."""
        return self.modulus <= 2


@dataclass(frozen=True)
class WPolicy:
    window: int = 50
    max_norm: int = 100_000


@dataclass(frozen=True)
class Witness:
    p: int
    root: int
    cls: tuple[int, ...]


@dataclass
class WGroupResult:
    subgroup: Subgroup
    primes_used: list[Witness] = field(default_factory=list)
    stabilized: bool = True
    window: int = 0
    max_norm_reached: int = 0
    condition: NormCondition | None = None

    def witness_norms(self) -> list[int]:
        return [w.p for w in self.primes_used]


_memo: dict[tuple, WGroupResult] = {}


def _cache_path(cache_dir, k: QuadField, cond: NormCondition, policy: WPolicy) -> Path | None:
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    res = "-".join(str(r) for r in sorted(cond.allowed_residues))
    name = f"w_d{k.d}_m{cond.modulus}_r{res}_win{policy.window}_max{policy.max_norm}.jsonl"
    return Path(cache_dir) / name


def _fold(k: QuadField, witnesses, policy: WPolicy, cond: NormCondition) -> WGroupResult:
    """Replay a norm-ordered witness stream through the stopping rule."""
    cg = k.class_group()
    sub = cg.trivial()
    used, quiet, last = [], 0, 0
    for w in witnesses:
        used.append(w)
        last = w.p
        x = cg.group.elem(w.cls)
        if sub.contains(x):
            quiet += 1
        else:
            sub = sub.product(Subgroup.generated(cg.group, [x]))
            quiet = 0
        if quiet >= policy.window:
            return WGroupResult(sub, used, True, policy.window, last, cond)
    return WGroupResult(sub, used, False, policy.window, policy.max_norm, cond)


def _sample(k: QuadField, cond: NormCondition, policy: WPolicy):
    for P in k.degree_one_primes(policy.max_norm):
        if cond.modulus % P.p == 0 or not cond.admits(P.p):
            continue
        yield Witness(P.p, P.root, k.prime_class(P).exponents)


def w_group(k: QuadField, cond: NormCondition | int, policy: WPolicy | None = None,
            cache_dir: str | os.PathLike | None = None) -> WGroupResult:
    if isinstance(cond, int):
        cond = NormCondition.one(cond)
    policy = policy or WPolicy()
    cg = k.class_group()
    if cond.is_vacuous():
        return WGroupResult(cg.whole(), [], True, policy.window, 0, cond)
    key = (k.d, cond, policy)
    if key in _memo:
        return _memo[key]
    path = _cache_path(cache_dir, k, cond, policy)
    result = None
    if path is not None and path.exists():
        with open(path) as fh:
            wit = [Witness(o["p"], o["root"], tuple(o["class_vector"])) for o in map(json.loads, fh)]
        result = _fold(k, wit, policy, cond)
    if result is None:
        result = _fold(k, _sample(k, cond, policy), policy, cond)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w") as fh:
                for w in result.primes_used:
                    fh.write(json.dumps({"p": w.p, "root": w.root, "residue": w.p % cond.modulus,
                                         "class_vector": list(w.cls)}) + "\n")
    if not result.stabilized:
        log.warning("W(%s, %s) did not stabilize below norm %d", k, cond.modulus, policy.max_norm)
    _memo[key] = result
    return result


def w_plain(k: QuadField, m: int, policy: WPolicy | None = None) -> Subgroup:
    return w_group(k, NormCondition.one(m), policy).subgroup


def check_wexp(k: QuadField, m: int, n: int, policy: WPolicy | None = None) -> bool:
    """Whether W(k,m)^n is contained in W(k,mn) for the sampled subgroups."""
    if any(m % q for q in prime_factors(n)):
        raise DomainError(f"every prime of n={n} must divide m={m}")
    lhs = w_group(k, NormCondition.one(m), policy).subgroup.power(n)
    rhs = w_group(k, NormCondition.one(m * n), policy).subgroup
    return lhs.issubgroup(rhs)
