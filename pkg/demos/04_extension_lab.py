# Enumerating tame quadratic and biquadratic extensions and comparing with
# the engine.

from collections import Counter

from steinitz.engine import AbelianGroupSpec
from steinitz.extlab import (compose_biquadratic, enumerate_tame_biquadratic, enumerate_tame_quadratic,
                             quad_extension, tame_test, verify_against_engine)
from steinitz.quadfield import make_field

k = make_field(-5)

# tameness is decided in O_k / 4: sqrt(-5)^2 = -5 = 3 mod 4
print("k(sqrt 3) tame:", tame_test(k, k.elem(3)).tame)
print("k(sqrt(2+sqrt-5)) tame:", tame_test(k, k.from_sqrt(2, 1)).tame)
# -1 is tame too: k(i) is the Hilbert class field of k
print("k(sqrt -1) tame:", tame_test(k, k.elem(-1)).tame)

# (7 + 8 sqrt(-5)) = q41 * p3^2: discriminant q41, Steinitz class [p3^-1], nontrivial
q = quad_extension(k, k.from_sqrt(7, 8))
print("7+8*sqrt(-5): disc", q.disc, "Steinitz class", list(q.steinitz.exponents))

rep = enumerate_tame_quadratic(k, 100)
print(f"{rep.count} tame quadratic extensions, {rep.rejected_wild} wild candidates rejected")
print("class counts:", Counter(tuple(s.steinitz.exponents) for s in rep.samples))
out = verify_against_engine(k, AbelianGroupSpec.of(2), rep)
print("C(2): certified", out.certified)

b = compose_biquadratic(k, k.elem(3), k.elem(7))
print("k(sqrt 3, sqrt 7): disc norm", b.disc.norm(), "class", list(b.steinitz.exponents),
      "paths agree", b.paths_agree)
bq = enumerate_tame_biquadratic(k, 100, base=rep)
print("C(2) x C(2): certified", verify_against_engine(k, AbelianGroupSpec.of(2, 2), bq).certified)

# a field with 4-torsion
k = make_field(-14)
rep = enumerate_tame_quadratic(k, 80)
print("Q(sqrt(-14)): realized", rep.realized.order(), "of", k.class_group().order, "classes")
