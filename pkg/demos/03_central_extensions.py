"""The central extensions A x_w A and what separates them from the abelian case.

Pairs multiply by (a1, g1)(a2, g2) = (a1 + a2 + w(g1, g2), g1 + g2); the
kernel copy A x {0} is always central, and for a nonzero bit sequence it is
the whole centre: every element with g != 0 has an explicit non-commuting
partner at a predictable probe degree."""

from congroup import BitSeq, Eta, Modulus, center_test, commutator, equivalence_map
from congroup.extensions import ext_identity, ext_iota, ext_sigma
from congroup.series import one_term, parse

F2 = Modulus(2)
eta = Eta(F2, BitSeq((1,)))

u = ext_sigma(eta, one_term(F2, 0))  # (0 ; t^0)
v = ext_sigma(eta, one_term(F2, 2))  # (0 ; t^2)

print("u v      =", u * v)
print("v u      =", v * u)
print("[u, v]   =", commutator(u, v), " -- lands in the kernel copy")
print("u^-1     =", u.inverse())
print("alpha(u) =", u.alpha(1))

# centre probing: kernel elements pass, anything with g != 0 fails with a witness
print("centre test for (a ; 0):   ", center_test(ext_iota(eta, parse(F2, "1*t^0 + 1*t^5"))).verdict)
verdict = center_test(u)
print("centre test for (0 ; t^0): ", verdict.verdict, f"(probe t^{verdict.probe}, witness {verdict.witness})")

# with the zero bit sequence the same construction is abelian
flat = Eta(F2, BitSeq((0, 0, 0)))
w1 = ext_sigma(flat, one_term(F2, 0))
w2 = ext_sigma(flat, one_term(F2, 2))
print("zero bits: [w1, w2] == identity:", commutator(w1, w2).agree(ext_identity(flat)))

# shifting the cocycle by a coboundary is an equivalence of extensions
fterms = ((0, one_term(F2, 0)),)
img = equivalence_map(fterms, u * v)
img2 = equivalence_map(fterms, u) * equivalence_map(fterms, v)
print("equivalence map is a homomorphism:", img.agree(img2))
