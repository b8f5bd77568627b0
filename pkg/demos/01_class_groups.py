# Class groups of imaginary quadratic fields, from reduced forms to ideals.

from steinitz.quadfield import FracIdeal, make_field

# Q(sqrt(-5)) has two reduced forms of discriminant -20, so Cl(k) = C(2).
k = make_field(-5)
cg = k.class_group()
print(k, "Cl =", cg.group)
for f in cg.forms:
    print("  form", f, "-> class", list(cg.form_to_elem[f].exponents))

# The primes above 7 are not principal: x^2 + 5y^2 = 7 has no solution.
P7, Q7 = k.split_prime(7)
print("class of", P7, "=", list(k.prime_class(P7).exponents), "principal:", k.is_principal(FracIdeal.prime(P7)))

# 61 = 4^2 + 5*3^2, so the primes above 61 are principal
P61 = k.split_prime(61)[0]
print("generator of", P61, "=", k.principal_generator(FracIdeal.prime(P61)))

# a few more fields, including noncyclic ones
for d in (-23, -14, -21, -65, -105, -163):
    k = make_field(d)
    print(f"d={d:5d}  disc={k.disc:6d}  Cl = {k.class_group().group}")
