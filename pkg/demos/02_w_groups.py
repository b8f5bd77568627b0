# W(k, m): which ideal classes contain a prime of norm 1 mod m?
#
# These are sampled, not proven.  Each result says whether the sample
# stabilized (a long run of qualifying primes added nothing new).

from steinitz.quadfield import make_field
from steinitz.wgroups import NormCondition, WPolicy, check_wexp, w_group

k = make_field(-5)
res = w_group(k, 3)
print("W(Q(sqrt(-5)), 3) has order", res.subgroup.order(), "stabilized:", res.stabilized)
print("first witnesses (norm, class):", [(w.p, list(w.cls)) for w in res.primes_used[:6]])

# norm 1 mod 4 primes over Q(sqrt(-5)) are exactly the principal split ones
print("W(Q(sqrt(-5)), 4) order:", w_group(k, 4).subgroup.order())

# the {+-1} condition used for dihedral groups is weaker, so the group is larger
for d in (-14, -41, -65):
    k = make_field(d)
    row = []
    for m in (3, 4, 5, 8):
        one = w_group(k, NormCondition.one(m)).subgroup.order()
        pm = w_group(k, NormCondition.plus_minus_one(m)).subgroup.order()
        row.append(f"m={m}: {one}/{pm}")
    print(f"d={d}  Cl={k.class_group().group}  |W| with 1 / +-1:", ", ".join(row))

# W(k,3)^3 sits inside W(k,9)
print("W(k,3)^3 <= W(k,9):", {d: check_wexp(make_field(d), 3, 3) for d in (-5, -23, -14, -31, -47)})

# a too-small norm ceiling leaves the sample unstabilized
res = w_group(make_field(-65), 16, WPolicy(window=200, max_norm=2000))
print("tight policy, W(Q(sqrt(-65)), 16): order", res.subgroup.order(), "stabilized:", res.stabilized)
