"""Exact series arithmetic with precision tracking.

A value records a window of known coefficients; everything outside is
either exactly zero (below) or unknown (above).  Operations propagate the
sharpest sound window, so a result is never more precise than the inputs
justify."""

from congroup import Modulus, make_series, parse, format_series

F2 = Modulus(2)
Z9 = Modulus(3, 2)

# finitely supported values are EXACT and print without an O-term
x = parse(F2, "1*t^0 + 1*t^1")
print("x          =", x)
print("x * x      =", x * x)  # char 2: (1 + t)^2 = 1 + t^2

# truncated values carry their precision through every operation
y = make_series(F2, 0, [1, 0, 1], prec=6)
print("y          =", y)
print("x + y      =", x + y)
print("t^2 * y    =", y.shift(2))

# the absolute value is p^(-first nonzero index); unknown windows only bound it
z = parse(Z9, "3*t^-2 + 1*t^0 + O(t^4)")
print("z          =", z, " over", Z9)
print("|z|        =", z.abs_val())
print("|0 + O(t^4)| =", parse(Z9, "O(t^4)").abs_val())

# the ultrametric equality: adding something strictly smaller changes nothing
big = parse(F2, "1*t^-3")
small = parse(F2, "1*t^5 + 1*t^7")
print("|big + small| == |big|:", (big + small).abs_val() == big.abs_val())

# the grammar round-trips bit for bit
text = format_series(z)
print("parse(format(z)) == z:", parse(Z9, text) == z)
