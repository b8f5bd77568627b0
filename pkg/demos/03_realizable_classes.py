# Realizable Steinitz classes R_t(k, G) from the closed forms.
#
# Answers are intervals lower <= upper.  They are exact for odd abelian
# groups and when the two largest 2-parts agree.  Otherwise the unknown
# R_t(k, C(2^s)) is bracketed by W(k, 2^s) and Cl(k).

from steinitz.engine import (AbelianGroupSpec, SpecialGroupSpec, compare_even_variants, realizable,
                             realizable_special, sylow_recompose)
from steinitz.quadfield import make_field


def show(k, r, label):
    state = f"exact, order {r.value.order()}" if r.exact else f"between orders {r.lower.order()} and {r.upper.order()}"
    print(f"  {label:14s} {state}")


for d in (-5, -14, -65):
    k = make_field(d)
    print(k, "Cl =", k.class_group().group)
    for G in [(3,), (2,), (2, 2), (4,), (6,), (4, 2), (12,), (8, 8)]:
        show(k, realizable(k, AbelianGroupSpec(G)), str(AbelianGroupSpec(G)))
    for spec in (SpecialGroupSpec.a4(), SpecialGroupSpec.dihedral(9),
                 SpecialGroupSpec.two_vector(3, AbelianGroupSpec.of(5))):
        show(k, realizable_special(k, spec), str(spec))

# the provenance trail for one evaluation
k = make_field(-5)
r = realizable(k, AbelianGroupSpec.of(4, 2))
print("trail for C(4) x C(2) over Q(sqrt(-5)):")
for tag, factor in r.trail:
    print("   ", tag, "|", factor)

# decomposing G into Sylow subgroups gives the same interval
G = AbelianGroupSpec.of(12, 2)
print("Sylow recomposition agrees for C(12) x C(2):", sylow_recompose(k, G).same_bounds(realizable(k, G)))

# the middle factor's modulus matters over Q(sqrt(-17))
a, b, differ = compare_even_variants(make_field(-17), AbelianGroupSpec.of(4, 2))
print("n_2(2) vs n_1(2) modulus differ over Q(sqrt(-17)):", differ,
      (a.lower.order(), a.upper.order()), (b.lower.order(), b.upper.order()))
