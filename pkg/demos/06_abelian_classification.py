"""Classifying abelian contraction groups.

Torsion shift groups are determined by the multiplicity table of their
cyclic blocks: Z/4 and the Klein group give non-isomorphic groups, while
Z/6 splits. The linear blocks over R and Q_p are cut out by polynomials
with all roots inside the unit circle, tested exactly."""

from fractions import Fraction

from congroup import (
    FiniteAbelianType,
    Modulus,
    NuTable,
    composition_data,
    element_order,
    omega_p_contractive,
    primary_decompose,
    schur_cohn,
    theta_x,
)
from congroup.classify import Block, ContractionSpec, INF_PLACE, canonicalize_spec, parse_poly, spec_iso_test
from congroup.series import one_term, parse

# the torsion invariant: nu tables
four = primary_decompose(FiniteAbelianType.of(4))
klein = primary_decompose(FiniteAbelianType.of(2, 2))
print("Z/4:  ", four.to_json()["nu"])
print("Klein:", klein.to_json()["nu"], " distinct:", four != klein)
print("Z/6 == Z/2 x Z/3:", primary_decompose(FiniteAbelianType.of(6)) == primary_decompose(FiniteAbelianType.of(2, 3)))

# composition length and the scale of the inverse shift
data = composition_data(2, 3)
print("Z/8((t)): length", data.length, " delta", data.delta, " chain", data.chain_exponents)
table = NuTable.from_dict({(2, 2): 1, (2, 1): 3})
print("direct sum: delta =", table.delta(), "= 2^length:", table.delta() == 2 ** table.length())

# element orders and the embedded stable subgroup
Z4 = Modulus(2, 2)
x = parse(Z4, "2*t^0 + 2*t^3")
print("order of", x, "is", element_order(x))
z = parse(Modulus(2), "1*t^0 + 1*t^1")
print("theta_x embeds Z/2((t)):", theta_x(x, z))

# contractivity of the linear blocks, both places, exact arithmetic only
print("x - 1/2 inside the unit circle:", schur_cohn(parse_poly("x - 1/2")))
print("x^2 - 3/2 x + 1/2 (root at 1):", schur_cohn(parse_poly("x^2 - 3/2*x + 1/2")))
print("x^2 - 2 contractive 2-adically:", omega_p_contractive(parse_poly("x^2 - 2"), 2))
print("x - 1 contractive 2-adically:", omega_p_contractive(parse_poly("x - 1"), 2))

# classification tuples canonicalize to a unique form
f = parse_poly("x - 1/2")
s1 = ContractionSpec((Block(INF_PLACE, f, 1, 1), Block(2, parse_poly("x^2 - 2"), 1, 2)), table)
s2 = ContractionSpec((Block(2, parse_poly("x^2 - 2"), 1, 2), Block(INF_PLACE, f, 1, 1)), table)
print("permuted tuples agree:", spec_iso_test(s1, s2))
print("canonical form:", canonicalize_spec(s1).to_json())
