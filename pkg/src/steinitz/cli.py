"""Command-line front end.

    steinitz classgroup -d -5
    steinitz wgroup -d -5 -m 3 [--pm]
    steinitz realizable -d -5 -g 4,2 | --special a4 | d2n:9 | c2vec:2,3
    steinitz enumerate -d -5 -g 2,2 --bound 100
    steinitz verify -d -5 -g 2 --bound 100
    steinitz selftest

JSON output (the default) is sorted and indented, so identical inputs give
byte-identical output.  ``--format text`` prints the same payload flattened
to ``key: value`` lines.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure,
3 a W-group did not stabilize and ``--require-stable`` was given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from sympy import divisors

from . import arith
from .abgroup import FinAbGroup, Subgroup
from .engine import (AbelianGroupSpec, RealizableInterval, SpecialGroupSpec, compare_even_variants,
                     realizable, realizable_special)
from .errors import InconsistencyError, SteinitzError, TheoremContradiction
from .extlab import enumerate_tame_biquadratic, enumerate_tame_quadratic, verify_against_engine
from .quadfield import make_field
from .wgroups import CACHE_ENV, NormCondition, WPolicy, w_group

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_UNSTABLE = 0, 1, 2, 3

SCHEMAS = """JSON payloads (all keys sorted):
  classgroup  {field_d, disc, order, invariant_factors, forms: [{form: [a,b,c], class: [..]}]}
  wgroup      {field_d, modulus, residues, order, generators, stabilized, max_norm_reached,
               witnesses: [{p, root, class}]}
  realizable  {field_d, group, lower, upper, lower_order, upper_order, exact, value,
               stabilized, trail: [[tag, factor]]}
  enumerate   {field_d, bound, kind, count, rejected_wild, realized,
               samples: [{alpha: [a,b], disc_norm, class: [..]}]}
  verify      {field_d, group, realized, realized_order, lower, upper, exact,
               attained, certified, samples_checked}
Subgroups are lists of generator exponent vectors over the invariant factors of Cl(k)."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    field_d: int | None = None
    group: tuple[int, ...] | None = None
    special: SpecialGroupSpec | None = None
    bound: int = 100
    window: int = 50
    max_norm: int = 100_000
    cache_dir: str | None = None
    fmt: str = "json"
    require_stable: bool = False

    @property
    def policy(self) -> WPolicy:
        return WPolicy(self.window, self.max_norm)


def parse_group(text: str) -> tuple[int, ...]:
    try:
        orders = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad group {text!r}; expected comma-separated orders like 4,2")
    if not orders or any(o < 1 for o in orders):
        raise UsageError(f"bad group {text!r}")
    return tuple(arith.invariant_factors(orders))


def parse_special(text: str) -> SpecialGroupSpec:
    t = text.strip().lower()
    if t == "a4":
        return SpecialGroupSpec.a4()
    kind, _, rest = t.partition(":")
    try:
        nums = [int(x) for x in rest.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad special group {text!r}")
    if kind == "d2n" and len(nums) == 1:
        return SpecialGroupSpec.dihedral(nums[0])
    if kind == "c2vec" and len(nums) >= 2:
        return SpecialGroupSpec.two_vector(nums[0], AbelianGroupSpec.of(*nums[1:]))
    raise UsageError(f"bad special group {text!r}; use a4, d2n:<n> or c2vec:<n>,<odd factors>")


def _gens(s: Subgroup) -> list[list[int]]:
    return [list(g.exponents) for g in s.generators()]


def interval_payload(r: RealizableInterval) -> dict:
    return {
        "lower": _gens(r.lower),
        "upper": _gens(r.upper),
        "lower_order": r.lower.order(),
        "upper_order": r.upper.order(),
        "exact": r.exact,
        "value": _gens(r.lower) if r.exact else None,
        "stabilized": r.stabilized,
        "trail": [list(t) for t in r.trail],
    }


def cmd_classgroup(cfg: RunConfig) -> tuple[dict, int]:
    k = make_field(cfg.field_d)
    cg = k.class_group()
    forms = [{"form": [f.a, f.b, f.c], "class": list(cg.form_to_elem[f].exponents)} for f in cg.forms]
    return {"field_d": k.d, "disc": k.disc, "order": cg.order, "invariant_factors": list(cg.group.factors),
            "forms": forms}, EXIT_OK


def cmd_wgroup(cfg: RunConfig, modulus: int, pm: bool) -> tuple[dict, int]:
    k = make_field(cfg.field_d)
    cond = NormCondition.plus_minus_one(modulus) if pm else NormCondition.one(modulus)
    res = w_group(k, cond, cfg.policy)
    out = {
        "field_d": k.d,
        "modulus": modulus,
        "residues": sorted(cond.allowed_residues),
        "order": res.subgroup.order(),
        "generators": _gens(res.subgroup),
        "stabilized": res.stabilized,
        "max_norm_reached": res.max_norm_reached,
        "witnesses": [{"p": w.p, "root": w.root, "class": list(w.cls)} for w in res.primes_used],
    }
    return out, _stable_code(cfg, res.stabilized)


def _stable_code(cfg: RunConfig, stabilized: bool) -> int:
    return EXIT_UNSTABLE if cfg.require_stable and not stabilized else EXIT_OK


def cmd_realizable(cfg: RunConfig, printed_variant: bool = False) -> tuple[dict, int]:
    k = make_field(cfg.field_d)
    if cfg.special is not None:
        r = realizable_special(k, cfg.special, cfg.policy)
        name = str(cfg.special)
        extra = {}
    else:
        G = AbelianGroupSpec(cfg.group)
        name = str(G)
        extra = {}
        if printed_variant and G.n % 2 == 0 and G.part(2, 2) != 1:
            r, alt, differ = compare_even_variants(k, G, policy=cfg.policy)
            extra = {"printed_variant": interval_payload(alt), "variants_differ": differ}
        else:
            r = realizable(k, G, policy=cfg.policy)
    out = {"field_d": k.d, "group": name, "class_group": list(k.class_group().group.factors)}
    out.update(interval_payload(r))
    out.update(extra)
    return out, _stable_code(cfg, r.stabilized)


def _report(cfg: RunConfig, k):
    if cfg.group == (2,):
        return enumerate_tame_quadratic(k, cfg.bound)
    if cfg.group == (2, 2):
        return enumerate_tame_biquadratic(k, cfg.bound)
    raise UsageError("enumeration supports -g 2 and -g 2,2 only")


def cmd_enumerate(cfg: RunConfig) -> tuple[dict, int]:
    k = make_field(cfg.field_d)
    return _report(cfg, k).to_json(), EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    k = make_field(cfg.field_d)
    report = _report(cfg, k)
    G = AbelianGroupSpec(cfg.group)
    interval = realizable(k, G, policy=cfg.policy)
    try:
        outcome = verify_against_engine(k, G, report, interval, cfg.policy)
    except (TheoremContradiction, InconsistencyError) as exc:
        return {"field_d": k.d, "group": list(G.factors), "failure": exc.code, "message": str(exc)}, EXIT_VERIFY
    out = {"field_d": k.d}
    out.update(outcome.to_json())
    return out, _stable_code(cfg, interval.stabilized)


def _abgroup_laws(orders) -> int:
    """Exhaustive subgroup-lattice laws on one small group; returns the number of failures."""
    G = FinAbGroup(tuple(arith.invariant_factors(list(orders))))
    elems = G.elements()
    cyc = [Subgroup.generated(G, [x]) for x in elems]
    bad = 0
    for A in cyc:
        if not (A * G.trivial() == A and A * A == A and A <= G.whole()):
            bad += 1
        if len(A.enumerate()) != A.order():
            bad += 1
        for B in cyc:
            if A * B != B * A or not (A <= A * B and B <= A * B):
                bad += 1
    for x in elems:
        for y in elems:
            if x + y != y + x or (x + y) - y != x:
                bad += 1
    return bad


def cmd_selftest(cfg: RunConfig, limit: int = 2000, cong: int = 50) -> tuple[dict, int]:
    gcd_cases = gcd_fail = 0
    for m in range(1, limit + 1):
        for e in divisors(m):
            gcd_cases += 1
            try:
                arith.mcd_lemma_gcd(e, m)
            except AssertionError:
                gcd_fail += 1
    cong_cases = cong_fail = 0
    for x in range(1, cong + 1):
        for m in range(1, cong + 1):
            for n in range(1, cong + 1):
                try:
                    cong_cases += arith.congruence_power(x, m, n)
                except AssertionError:
                    cong_fail += 1
    groups = [(2,), (4,), (2, 2), (6,), (3, 3), (4, 2), (2, 2, 2), (12,), (6, 2), (9,), (8,), (4, 4)]
    law_fail = sum(_abgroup_laws(g) for g in groups)
    out = {
        "gcd_divisibility": {"cases": gcd_cases, "failures": gcd_fail, "limit": limit},
        "power_congruence": {"cases": cong_cases, "failures": cong_fail, "limit": cong},
        "abgroup_laws": {"groups": [list(g) for g in groups], "failures": law_fail},
    }
    ok = not (gcd_fail or cong_fail or law_fail)
    out["ok"] = ok
    return out, EXIT_OK if ok else EXIT_VERIFY


def render_text(payload, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            val = payload[key]
            name = f"{prefix}{key}"
            if isinstance(val, dict):
                lines.extend(render_text(val, name + "."))
            elif isinstance(val, list) and val and isinstance(val[0], dict):
                for i, item in enumerate(val):
                    lines.extend(render_text(item, f"{name}[{i}]."))
            else:
                lines.append(f"{name}: {json.dumps(val)}")
    return lines


def emit(payload: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "text":
        stream.write("\n".join(render_text(payload)) + "\n")
    else:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", type=int, dest="field_d", help="squarefree d < 0; k = Q(sqrt(d))")
    common.add_argument("--bound", type=int, default=100, help="norm bound for enumeration (default 100)")
    common.add_argument("--window", type=int, default=50,
                        help="qualifying primes without a new class before W-sampling stops (default 50)")
    common.add_argument("--max-norm", type=int, default=100_000, help="W-sampling norm ceiling (default 100000)")
    common.add_argument("--cache-dir", help=f"witness cache directory (also ${CACHE_ENV})")
    common.add_argument("--format", choices=["json", "text"], default="json", dest="fmt")
    common.add_argument("--require-stable", action="store_true",
                        help="exit 3 if any W-group failed to stabilize")

    p = _Parser(prog="steinitz", description="Realizable Steinitz classes over imaginary quadratic fields.",
                epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classgroup", parents=[common], help="class group and reduced forms")
    w = sub.add_parser("wgroup", parents=[common], help="classes of primes with norm = 1 (or +-1) mod m")
    w.add_argument("-m", type=int, required=True, dest="modulus")
    w.add_argument("--pm", action="store_true", help="allow norms = -1 mod m as well")
    r = sub.add_parser("realizable", parents=[common], help="realizable Steinitz classes for a group")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("-g", dest="group", help="invariant factors, e.g. 4,2")
    g.add_argument("--special", help="a4, d2n:<n> or c2vec:<n>,<odd factors>")
    r.add_argument("--printed-variant", action="store_true",
                   help="also evaluate the noncyclic middle factor with modulus n_1(2)")
    for name, hlp in (("enumerate", "enumerate tame C(2) or C(2)xC(2) extensions"),
                      ("verify", "enumerate and check against the engine")):
        e = sub.add_parser(name, parents=[common], help=hlp)
        e.add_argument("-g", dest="group", required=True, choices=["2", "2,2"])
    s = sub.add_parser("selftest", parents=[common], help="brute-force sweeps of the integer identities and group laws")
    s.add_argument("--limit", type=int, default=2000)
    return p


def config_from_args(args) -> RunConfig:
    group = special = None
    if getattr(args, "special", None):
        special = parse_special(args.special)
    elif getattr(args, "group", None):
        group = parse_group(args.group)
    if args.command != "selftest" and args.field_d is None:
        raise UsageError("-d is required")
    for name in ("bound", "window", "max_norm"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return RunConfig(args.field_d, group, special, args.bound, args.window, args.max_norm,
                     args.cache_dir, args.fmt, args.require_stable)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.cache_dir:
            os.environ[CACHE_ENV] = cfg.cache_dir
        if args.command == "classgroup":
            payload, code = cmd_classgroup(cfg)
        elif args.command == "wgroup":
            payload, code = cmd_wgroup(cfg, args.modulus, args.pm)
        elif args.command == "realizable":
            payload, code = cmd_realizable(cfg, args.printed_variant)
        elif args.command == "enumerate":
            payload, code = cmd_enumerate(cfg)
        elif args.command == "verify":
            payload, code = cmd_verify(cfg)
        else:
            payload, code = cmd_selftest(cfg, args.limit)
    except UsageError as exc:
        print(f"steinitz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TheoremContradiction, InconsistencyError) as exc:
        print(f"steinitz: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except SteinitzError as exc:
        print(f"steinitz: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(payload, cfg.fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
