"""Exact, precision-tracked arithmetic in F((t)) for F = Z/p^m Z.

A :class:`TruncSeries` records what is *known* about a formal Laurent series
x = sum_n x_n t^n over Z/p^m Z:

* indices below ``start`` are exactly zero,
* indices in the half-open window ``[start, prec)`` equal the stored residues,
* indices at or above ``prec`` are unknown,

unless ``prec`` is the marker :data:`EXACT`, in which case the series is
finitely supported and fully known.  Values are immutable and canonical: the
first stored residue is nonzero (or the window is empty), so equal knowledge
compares equal bit for bit.  The contractive shift automorphism is
``x -> t x``, and the absolute value is p^(-N) with N the least nonzero index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator, Sequence

from .errors import InsufficientPrecision, MalformedInput, RingMismatch, SeriesSyntaxError

#: Precision marker for finitely supported (fully known) series.
EXACT = None


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Modulus:
    """Coefficient ring Z/p^m Z, p prime (checked by trial division), m >= 1."""

    p: int
    m: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise MalformedInput(f"p = {self.p!r} is not a prime integer")
        if not isinstance(self.m, int) or self.m < 1:
            raise MalformedInput(f"m = {self.m!r} must be a positive integer")

    @property
    def q(self) -> int:
        return self.p**self.m

    def reduce(self, c: int) -> int:
        return c % self.q

    def __repr__(self):
        return f"Modulus({self.p}, {self.m})"

    def __str__(self):
        return f"Z/{self.q}" if self.m > 1 else f"F_{self.p}"


@total_ordering
class AbsValue:
    """The absolute value |x|, either known exactly or only bounded above.

    ``exact`` is True iff some stored coefficient is nonzero (then the value
    is p^(-valuation)) or the series is the exact zero (value 0).  Otherwise
    the value is the upper bound p^(-prec).  Comparisons use the rational
    ``value``; bounds compare by their bound.
    """

    __slots__ = ("p", "exact", "valuation")

    def __init__(self, p: int, exact: bool, valuation: int | None):
        self.p = p
        self.exact = exact
        self.valuation = valuation  # None encodes the exact zero

    @property
    def value(self) -> Fraction:
        if self.valuation is None:
            return Fraction(0)
        if self.valuation >= 0:
            return Fraction(1, self.p**self.valuation)
        return Fraction(self.p ** (-self.valuation))

    def __eq__(self, other):
        if not isinstance(other, AbsValue):
            return NotImplemented
        return (self.exact, self.value) == (other.exact, other.value)

    def __lt__(self, other):
        if isinstance(other, AbsValue):
            return self.value < other.value
        return self.value < other

    def __hash__(self):
        return hash((self.p, self.exact, self.valuation))

    def __repr__(self):
        if self.valuation is None:
            return "AbsValue(0, exact)"
        kind = "exact" if self.exact else "upper bound"
        return f"AbsValue({self.p}^{-self.valuation}, {kind})"


class TruncSeries:
    """Canonical truncated Laurent series over a :class:`Modulus`.

    Construction canonicalizes: residues are reduced mod p^m, the window is
    zero-filled up to ``prec``, leading zeros raise ``start``, and an EXACT
    series drops trailing zeros (the exact zero keeps start = 0).
    """

    __slots__ = ("ring", "start", "coeffs", "prec")

    def __init__(self, ring: Modulus, start: int, coeffs: Sequence[int], prec: int | None = EXACT):
        cs = [c % ring.q for c in coeffs]
        if prec is EXACT:
            while cs and cs[-1] == 0:
                cs.pop()
            while cs and cs[0] == 0:
                cs.pop(0)
                start += 1
            if not cs:
                start = 0
        else:
            if prec < start + len(cs):
                raise MalformedInput(
                    f"prec {prec} below declared window end {start + len(cs)}"
                )
            cs.extend([0] * (prec - start - len(cs)))
            while cs and cs[0] == 0:
                cs.pop(0)
                start += 1
            if not cs:
                start = prec
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is EXACT

    def known(self, i: int) -> bool:
        """Is the coefficient at index ``i`` determined by this value?"""
        return self.is_exact or i < self.prec

    def coeff(self, i: int) -> int:
        """Coefficient at index ``i``; raises when ``i`` is beyond prec."""
        if i < self.start:
            return 0
        if self.is_exact:
            return self.coeffs[i - self.start] if i - self.start < len(self.coeffs) else 0
        if i >= self.prec:
            raise InsufficientPrecision(f"coefficient at t^{i} unknown (prec {self.prec})")
        return self.coeffs[i - self.start]

    def valuation(self) -> int | None:
        """Least index with a nonzero stored coefficient, None if there is none."""
        # canonical form: the first stored coefficient is nonzero
        return self.start if self.coeffs else None

    def is_zero(self) -> bool:
        """Zero at the available precision (every known coefficient vanishes)."""
        return self.valuation() is None

    def is_exact_zero(self) -> bool:
        return self.is_exact and not self.coeffs

    def support(self) -> Iterator[tuple[int, int]]:
        """Pairs (index, residue) with nonzero residue, ascending."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.start + i, c

    def abs_val(self) -> AbsValue:
        v = self.valuation()
        if v is not None:
            return AbsValue(self.ring.p, True, v)
        if self.is_exact:
            return AbsValue(self.ring.p, True, None)
        return AbsValue(self.ring.p, False, self.prec)

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "TruncSeries"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_ring(other)
        if self.is_exact and other.is_exact:
            lo = min(self.start, other.start)
            hi = max(self.start + len(self.coeffs), other.start + len(other.coeffs), lo)
            cs = [self.coeff(i) + other.coeff(i) for i in range(lo, hi)]
            return TruncSeries(self.ring, lo, cs, EXACT)
        prec = min(p for p in (self.prec, other.prec) if p is not EXACT)
        lo = min(self.start, other.start, prec)
        cs = [self.coeff(i) + other.coeff(i) for i in range(lo, prec)]
        return TruncSeries(self.ring, lo, cs, prec)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ring, self.start, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def int_mul(self, k: int) -> "TruncSeries":
        return TruncSeries(self.ring, self.start, [k * c for c in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.int_mul(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return ring_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.int_mul(other)
        return NotImplemented

    def shift(self, k: int) -> "TruncSeries":
        """The automorphism x -> t^k x: indices move up by k."""
        prec = EXACT if self.is_exact else self.prec + k
        return TruncSeries(self.ring, self.start + k, self.coeffs, prec)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.start == other.start
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.ring, self.start, self.coeffs, self.prec))

    def agree(self, other: "TruncSeries") -> bool:
        """Equality at shared precision: all commonly known coefficients match."""
        self._check_ring(other)
        if self.is_exact and other.is_exact:
            return self.coeffs == other.coeffs and (
                self.start == other.start or not self.coeffs
            )
        bound = min(p for p in (self.prec, other.prec) if p is not EXACT)
        lo = min(self.start, other.start, bound)
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, bound))

    def agree_through(self, other: "TruncSeries", idx: int) -> bool:
        """Do both values determine and match every coefficient at index <= idx?"""
        self._check_ring(other)
        if not (self.known(idx) and other.known(idx)):
            raise InsufficientPrecision(f"cannot compare through t^{idx}")
        lo = min(self.start, other.start, idx)
        return all(self.coeff(i) == other.coeff(i) for i in range(lo, idx + 1))

    def __repr__(self):
        return f"TruncSeries({self.ring!r}, {format_series(self)!r})"

    def __str__(self):
        return format_series(self)


# -- module-level operation surface ----------------------------------------


def make_series(ring: Modulus, start: int, coeffs: Sequence[int], prec: int | None = EXACT) -> TruncSeries:
    """Construct a canonical series; declared window is zero-filled to prec."""
    return TruncSeries(ring, start, coeffs, prec)


def zero(ring: Modulus, prec: int | None = EXACT) -> TruncSeries:
    return TruncSeries(ring, 0 if prec is EXACT else prec, [], prec)


def one_term(ring: Modulus, idx: int, c: int = 1) -> TruncSeries:
    """The exact monomial c*t^idx."""
    return TruncSeries(ring, idx, [c], EXACT)


def add(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    return x + y


def negate(x: TruncSeries) -> TruncSeries:
    return -x


def int_mul(k: int, x: TruncSeries) -> TruncSeries:
    return x.int_mul(k)


def shift(x: TruncSeries, k: int) -> TruncSeries:
    return x.shift(k)


def ring_mul(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    """Cauchy product.  Result prec is min(prec_x + start_y, prec_y + start_x),
    the sharpest bound sound against unknown tails; a product with an exact
    zero is the exact zero."""
    x._check_ring(y)
    if x.is_exact_zero() or y.is_exact_zero():
        return zero(x.ring)
    lo = x.start + y.start
    bounds = []
    if not x.is_exact:
        bounds.append(x.prec + y.start)
    if not y.is_exact:
        bounds.append(y.prec + x.start)
    if not bounds:
        hi = x.start + len(x.coeffs) + y.start + len(y.coeffs) - 1
        prec = EXACT
    else:
        hi = min(bounds)
        prec = hi
        if hi <= lo:
            return zero(x.ring, hi)
    cs = []
    for d in range(lo, hi):
        acc = 0
        i_lo = max(x.start, d - (y.start + len(y.coeffs) - 1))
        i_hi = min(x.start + len(x.coeffs) - 1, d - y.start)
        for i in range(i_lo, i_hi + 1):
            acc += x.coeffs[i - x.start] * y.coeffs[d - i - y.start]
        cs.append(acc)
    return TruncSeries(x.ring, lo, cs, prec)


def abs_val(x: TruncSeries) -> AbsValue:
    return x.abs_val()


# -- text grammar -----------------------------------------------------------
#
# series := "0" | term (" + " term)* [" + " "O(t^" INT ")"]
# term   := COEFF "*t^" INT | "t^" INT
#
# with COEFF a decimal residue in [0, p^m), powers strictly ascending, and
# the O-term present iff the series is truncated.  A truncated zero is the
# bare "O(t^" INT ")".  format always emits the COEFF*t^N form.


def format_series(x: TruncSeries) -> str:
    terms = [f"{c}*t^{i}" for i, c in x.support()]
    if x.is_exact:
        return " + ".join(terms) if terms else "0"
    o = f"O(t^{x.prec})"
    return " + ".join(terms + [o]) if terms else o


def parse(ring: Modulus, text: str) -> TruncSeries:
    """Parse the series grammar; inverse of :func:`format_series` on canonical
    values.  Raises :class:`SeriesSyntaxError` with the failing offset."""
    if text == "0":
        return zero(ring)
    pos = 0
    entries: list[tuple[int, int]] = []
    prec: int | None = EXACT
    while True:
        sep = text.find(" + ", pos)
        token = text[pos:sep] if sep >= 0 else text[pos:]
        if prec is not EXACT:
            raise SeriesSyntaxError("term after O(...)", pos)
        if token.startswith("O(t^") and token.endswith(")"):
            prec = _parse_int(token[4:-1], pos + 4)
        else:
            entries.append(_parse_term(ring, token, pos))
        if sep < 0:
            break
        pos = sep + 3
    powers = [i for i, _ in entries]
    if sorted(set(powers)) != powers:
        raise SeriesSyntaxError("powers must be strictly ascending", 0)
    if not entries:
        if prec is EXACT:
            raise SeriesSyntaxError("empty series", 0)
        return zero(ring, prec)
    start = entries[0][0]
    end = entries[-1][0]
    if prec is not EXACT and prec <= end:
        raise SeriesSyntaxError(f"O(t^{prec}) does not cover stated term t^{end}", 0)
    cs = [0] * (end - start + 1)
    for i, c in entries:
        cs[i - start] = c
    return TruncSeries(ring, start, cs, prec)


def _parse_int(text: str, pos: int) -> int:
    tidy = text[1:] if text[:1] == "-" else text
    if not tidy.isdigit():
        raise SeriesSyntaxError(f"expected integer, got {text!r}", pos)
    return int(text)


def _parse_term(ring: Modulus, token: str, pos: int) -> tuple[int, int]:
    if token.startswith("t^"):
        return _parse_int(token[2:], pos + 2), 1
    star = token.find("*t^")
    if star < 0:
        raise SeriesSyntaxError(f"malformed term {token!r}", pos)
    coeff_text = token[:star]
    if not coeff_text.isdigit():
        raise SeriesSyntaxError(f"coefficient must be a decimal residue, got {coeff_text!r}", pos)
    c = int(coeff_text)
    if c >= ring.q:
        raise SeriesSyntaxError(f"coefficient {c} outside [0, {ring.q})", pos)
    return _parse_int(token[star + 3 :], pos + star + 3), c
