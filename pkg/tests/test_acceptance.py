"""Acceptance criteria, one test each.  Every test prints a single
``CRITERION <n> PASS|FAIL`` line (visible with or without -s) before asserting."""

import time
from itertools import combinations_with_replacement
from math import prod

import pytest

import oracles
from steinitz import wgroups
from steinitz.arith import congruence_power, invariant_factors, mcd_lemma_gcd
from steinitz.engine import AbelianGroupSpec, SpecialGroupSpec, realizable, realizable_odd, \
    realizable_special, sylow_recompose, upper_bound_analytic
from steinitz.errors import DegenerateExtension
from steinitz.extlab import compose_biquadratic, enumerate_tame_biquadratic, enumerate_tame_quadratic, \
    tame_test, verify_against_engine
from steinitz.quadfield import QuadField, make_field
from steinitz.wgroups import check_wexp, w_group

FIELDS = [-5, -23, -14, -31, -47]


@pytest.fixture
def verdict(capsys):
    def report(n, ok, detail, started, budget=None):
        took = time.perf_counter() - started
        in_time = budget is None or took < budget
        status = "PASS" if ok and in_time else "FAIL"
        limit = f" (limit {budget:g}s)" if budget else ""
        with capsys.disabled():
            print(f"\nCRITERION {n} {status}: {detail} [{took:.2f}s{limit}]")
        assert ok, detail
        assert in_time, f"took {took:.2f}s, limit {budget}s"
    return report


def _fresh_field(d):
    """A field object with cold class-group caches, so timings include the computation."""
    base = make_field(d)
    return QuadField(base.d, base.disc, base.trace, base.norm_omega)


def test_criterion_01_class_groups(verdict):
    want = {-5: (2,), -23: (3,), -14: (4,), -163: (1,)}
    got, worst, t0 = {}, 0.0, time.perf_counter()
    for d in want:
        t = time.perf_counter()
        k = _fresh_field(d)
        got[d] = k.class_group().group.factors
        worst = max(worst, time.perf_counter() - t)
        assert len(k.class_group().forms) == len(oracles.forms(k.disc))
    ok = got == want and worst < 1.0
    verdict(1, ok, f"class groups {got}, slowest {worst:.3f}s", t0)


def test_criterion_02_gcd_sweep(verdict):
    t0 = time.perf_counter()
    cases = bad = 0
    for m in range(1, 2001):
        for e in range(1, m + 1):
            if m % e:
                continue
            cases += 1
            g = mcd_lemma_gcd(e, m)
            target = (e - 1) * (m // e)
            if (g == 0 and target != 0) or (g and target % g):
                bad += 1
    verdict(2, bad == 0, f"{cases} pairs e | m <= 2000, {bad} failures", t0, 5)


def test_criterion_03_congruence_sweep(verdict):
    t0 = time.perf_counter()
    cases = bad = 0
    for x in range(1, 51):
        for m in range(1, 51):
            for n in range(1, 51):
                if congruence_power(x, m, n):
                    cases += 1
                    bad += pow(x, n, m * n) != 1 % (m * n)
    verdict(3, bad == 0 and cases > 0, f"{cases} admissible triples, {bad} failures", t0, 5)


def test_criterion_04_w_groups(verdict):
    t0 = time.perf_counter()
    wgroups._memo.clear()
    k = make_field(-5)
    w2, w3 = w_group(k, 2), w_group(k, 3)
    first = {w.p: w.cls for w in w3.primes_used[:50]}
    ok = (w2.subgroup.is_whole() and w2.primes_used == [] and w3.subgroup.is_whole() and w3.stabilized
          and first.get(7) == (1,) and first.get(61) == (0,) and 4**2 + 5 * 3**2 == 61)
    verdict(4, ok, f"W(k,2) short-circuit whole; W(k,3) whole, p=7 class {first.get(7)}, "
                   f"p=61 class {first.get(61)}", t0, 10)


def test_criterion_05_exponent_containment(verdict):
    t0 = time.perf_counter()
    wgroups._memo.clear()
    res = {d: check_wexp(make_field(d), 3, 3) for d in FIELDS}
    verdict(5, all(res.values()), f"W(k,3)^3 <= W(k,9): {res}", t0, 60)


def test_criterion_06_engine_exactness(verdict):
    t0 = time.perf_counter()
    notes = []
    ok = True
    for d in FIELDS:
        k = make_field(d)
        cl = k.class_group().whole()
        for G in [(2,), (2, 2)]:
            r = realizable(k, AbelianGroupSpec(G))
            ok &= r.exact and r.value == cl
        a4 = realizable_special(k, SpecialGroupSpec.a4())
        w3 = realizable_odd(k, AbelianGroupSpec.of(3)).value
        ok &= a4.exact and a4.value == cl
        ok &= w3.power(4) * cl.power(3) >= cl.power(8) * cl.power(3) and cl.power(8) * cl.power(3) == cl
    k = make_field(-5)
    c6 = realizable(k, AbelianGroupSpec.of(6))
    c42 = realizable(k, AbelianGroupSpec.of(4, 2))
    ok &= c6.exact and c6.value.is_whole()
    ok &= c42.exact and c42.value.is_trivial()
    notes.append(f"C(6) order {c6.lower.order()}, C(4)xC(2) exact={c42.exact} order {c42.lower.order()}")
    verdict(6, ok, "C(2), C(2)xC(2), A4 give Cl(k) on all five fields; " + "; ".join(notes), t0, 60)


def _groups_up_to(n):
    out = set()
    for r in (1, 2, 3, 4, 5):
        for combo in combinations_with_replacement(range(2, n + 1), r):
            if prod(combo) <= n:
                out.add(tuple(invariant_factors(list(combo))))
    return sorted(out) + [(1,)]


def test_criterion_07_sylow_recomposition(verdict):
    t0 = time.perf_counter()
    groups = _groups_up_to(48)
    bad = []
    for d in (-5, -23):
        k = make_field(d)
        for G in groups:
            spec = AbelianGroupSpec(G)
            if not sylow_recompose(k, spec).same_bounds(realizable(k, spec)):
                bad.append((d, G))
    verdict(7, not bad, f"{len(groups)} abelian groups of order <= 48 on two fields, mismatches {bad}", t0, 120)


def test_criterion_08_end_to_end(verdict):
    t0 = time.perf_counter()
    k = make_field(-5)
    rep = enumerate_tame_quadratic(k, 100)
    classes = {c.exponents for c in rep.classes()}
    v2 = verify_against_engine(k, AbelianGroupSpec.of(2), rep)
    bq = enumerate_tame_biquadratic(k, 100, base=rep)
    v22 = verify_against_engine(k, AbelianGroupSpec.of(2, 2), bq)
    cl = k.class_group().whole()
    ok = (classes == {(0,), (1,)}
          and v2.interval.lower == v2.realized == v2.interval.upper == cl
          and v22.interval.lower == v22.realized == v22.interval.upper == cl)
    verdict(8, ok, f"{rep.count} quadratic and {bq.count} biquadratic tame extensions; "
                   f"C(2) certified={v2.certified}, C(2)xC(2) certified={v22.certified}", t0, 120)


def test_criterion_09_upper_bound_soundness(verdict):
    t0 = time.perf_counter()
    checked = violations = 0
    for d, bound in [(-5, 100), (-23, 120), (-14, 100), (-31, 100), (-47, 100), (-21, 80), (-65, 60), (-163, 50)]:
        k = make_field(d)
        rep = enumerate_tame_quadratic(k, bound)
        bq = enumerate_tame_biquadratic(k, bound, sample_limit=40, base=rep)
        for G, r in ((AbelianGroupSpec.of(2), rep), (AbelianGroupSpec.of(2, 2), bq)):
            ub = upper_bound_analytic(k, G)
            for s in r.samples:
                checked += 1
                violations += not ub.contains(s.steinitz)
    verdict(9, violations == 0, f"{checked} Steinitz classes checked, {violations} outside the analytic bound", t0)


def test_criterion_10_minus_one_rejected_as_wild(verdict):
    t0 = time.perf_counter()
    k = make_field(-5)
    res = tame_test(k, k.elem(-1))
    verdict(10, not res.tame,
            f"tame_test(Q(sqrt(-5)), -1).tame = {res.tame}; witness at 2: "
            f"{[c.witness.as_pair() if c.witness else None for c in res.checks]}", t0)


def test_criterion_10_degenerate_codes(verdict):
    t0 = time.perf_counter()
    codes = []
    i = make_field(-1)
    k = make_field(-5)
    for call in (lambda: tame_test(i, i.elem(-1)),
                 lambda: tame_test(k, k.elem(-5)),
                 lambda: compose_biquadratic(k, k.elem(3), k.elem(27)),
                 lambda: compose_biquadratic(k, k.elem(3), k.elem(4))):
        try:
            call()
            codes.append(None)
        except DegenerateExtension as exc:
            codes.append(exc.code)
    want = ["DEGENERATE_SQUARE", "DEGENERATE_SQUARE", "DEGENERATE_PRODUCT_SQUARE", "DEGENERATE_SQUARE"]
    verdict(10, codes == want, f"degenerate inputs rejected with {codes}", t0)
