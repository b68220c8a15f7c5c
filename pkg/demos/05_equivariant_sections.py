"""Equivariant sections, digit by digit.

For a surjection q that intertwines the shifts, a section is assembled from
coset representatives: expand h into digits against the filtration
beta^k(U), lift each digit, and multiply the shifted lifts.  The partial
products converge, commute with the shift on the nose at every finite
stage, and project back onto h."""

from congroup import BitSeq, Eta, Modulus, build_section, digit_expand, verify_section
from congroup.sections import make_ext_projection_ctx, make_mod_reduction_ctx
from congroup.series import make_series, parse

# context 1: reduce Z/4 coefficients mod 2; lifts pick the digits {0, 1}
ctx = make_mod_reduction_ctx(2, 2, 1)
h = parse(ctx.ring_h, "1*t^0 + 1*t^3 + O(t^8)")
print("digits of h:", digit_expand(ctx, h, 5).digits)
sig = build_section(ctx, h, 5)
print("sigma(h) =", sig.element, f" (agrees through t^{sig.agrees_through})")

# the section is a right inverse and shift-equivariant at each stage
print("q(sigma(h)) =", ctx.q(sig.element))
print("sigma(t h) == alpha(sigma h):", build_section(ctx, h.shift(1), 6).element == sig.element.shift(1))

# context 2: project a central extension onto its quotient; the lifted
# digits now accumulate cocycle terms in the kernel coordinate
ctx2 = make_ext_projection_ctx(Eta(Modulus(2), BitSeq((1,))))
h2 = parse(ctx2.ring_h, "1*t^0 + 1*t^2")
sig2 = build_section(ctx2, h2, 4)
print("extension section:", sig2.element)
print("projects back:", ctx2.q(sig2.element))

# batch verification of all three section laws on random samples
import random

rng = random.Random(0)
samples = []
for _ in range(50):
    start = rng.randrange(-3, 3)
    cs = [rng.randrange(2) for _ in range(rng.randrange(0, 10))]
    samples.append(make_series(ctx2.ring_h, start, cs, max(start + len(cs), 14)))
print("verify:", verify_section(ctx2, samples, 12).to_json())
