"""Finite colourings of the positive integers, built for separation arguments.

A Colouring is a total deterministic map on x >= 1 with a finite palette.
Colour values are structured tuples rather than dense integers: the gap
colouring's palette is astronomically large, but any one experiment only
ever observes finitely many colours, so nothing is gained by numbering them.
"""

from fractions import Fraction

from .digits import base_digits, gap_counts, least_significant_digit, top_digits


class Colouring:
    """kind tags the construction; reserved lists colours that separation
    searches must not accept as a common colour (see check_separation)."""

    def __init__(self, kind, fn, palette=None, reserved=frozenset(), params=None, memoize=False):
        self.kind = kind
        self._fn = fn
        self.palette = palette
        self.reserved = frozenset(reserved)
        self.params = dict(params or {})
        self._memo = {} if memoize else None

    def colour(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError("colourings are defined on positive integers")
        if x < 1:
            raise ValueError("colourings are defined on positive integers")
        memo = self._memo
        if memo is None:
            return self._fn(x)
        c = memo.get(x)
        if c is None:
            c = memo[x] = self._fn(x)
        return c

    def is_reserved(self, colour):
        return colour in self.reserved

    def __repr__(self):
        return "Colouring(%s)" % self.kind


def mod_colouring(m):
    """x mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return Colouring("mod", lambda x: x % m, palette=frozenset(range(m)), params={"m": m})


def table_colouring(table, default=None):
    """Explicit finite table; values outside it get default, or raise."""
    table = dict(table)

    def fn(x):
        if x in table:
            return table[x]
        if default is None:
            raise ValueError("value %d not covered by the table" % x)
        return default

    palette = frozenset(table.values()) | (frozenset() if default is None else {default})
    return Colouring("table", fn, palette=palette)


def _small_primes():
    yield 2
    yield 3
    p = 5
    while True:
        yield p
        yield p + 2
        p += 6


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def rational_valuation(q, p):
    """Exponent of the prime p in the nonzero rational q (negative allowed)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no valuation")
    e = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e


def prime_exponent_colouring(b, c):
    """Colours x by (exponent of p in x) mod q, with p a prime where b and c
    carry different exponents i and j, and q the least prime exceeding
    max(|i|, |j|) that does not divide i - j.  Guarantees
    colour(b*s) != colour(c*s) whenever both are positive integers.
    """
    b, c = Fraction(b), Fraction(c)
    if b <= 0 or c <= 0 or b == c:
        raise ValueError("need distinct positive rationals")
    ratio = b / c
    p = min(set(_prime_factors(ratio.numerator)) | set(_prime_factors(ratio.denominator)))
    i = rational_valuation(b, p)
    j = rational_valuation(c, p)
    q = None
    for cand in _small_primes():
        if cand > max(abs(i), abs(j)) and (i - j) % cand != 0:
            q = cand
            break

    def fn(x):
        return rational_valuation(x, p) % q

    return Colouring(
        "prime-exponent",
        fn,
        palette=frozenset(range(q)),
        params={"b": b, "c": c, "p": p, "q": q, "i": i, "j": j},
        memoize=True,
    )


def _prime_factors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def ratio_colouring(ratio):
    """Two-colouring separating x from ratio*x whenever both are positive
    integers: with ratio = u/v in lowest terms, colour by the parity of the
    u-adic valuation (v-adic when u is 1)."""
    ratio = Fraction(ratio)
    if ratio <= 0 or ratio == 1:
        raise ValueError("ratio must be positive and different from 1")
    u, v = ratio.numerator, ratio.denominator
    base = u if u > 1 else v

    def fn(x):
        e = 0
        while x % base == 0:
            x //= base
            e += 1
        return e % 2

    return Colouring(
        "ratio", fn, palette=frozenset((0, 1)), params={"u": u, "v": v, "base": base}
    )


def digit_profile_colouring(p):
    """Colours x by (first digit, top digit, digit below the top, top position
    mod 3) of its ordinary base-p expansion.  Palette has at most 3p^3
    colours."""
    if p < 2:
        raise ValueError("base must be >= 2")

    def fn(x):
        e = base_digits(x, p)
        m, big = e.min_support(), e.max_support()
        below = e.digit(big - 1) if big >= 1 else 0
        return (e.digit(m), e.digit(big), below, big % 3)

    palette = frozenset(
        (em, eb, bl, r)
        for em in range(1, p)
        for eb in range(1, p)
        for bl in range(p)
        for r in range(3)
    )
    return Colouring("digit-profile", fn, palette=palette, params={"p": p}, memoize=True)


def negabase_gap_colouring(p, coeffs):
    """The gap-statistics colouring driving the rapid-growth separation.

    Values up to p^4 share one reserved colour.  Above that, x is coloured by
    its four top negabase digits, its least significant digit, and the mod-p
    gap counts of a*x for every coefficient a and every gap pattern (recorded
    sparsely: patterns with residue 0 are omitted).
    """
    if not _is_prime(p):
        raise ValueError("base must be prime")
    coeffs = tuple(coeffs)
    if not coeffs:
        raise ValueError("need at least one coefficient")
    if len(coeffs) >= p:
        raise ValueError("base must exceed the coefficient count")
    seen = []
    for a in coeffs:
        if a == 0:
            raise ValueError("coefficients must be nonzero")
        if 2 * abs(a) >= p:
            raise ValueError("base must exceed twice each |coefficient|")
        if a not in seen:
            seen.append(a)
    cutoff = p**4

    def fn(x):
        if x <= cutoff:
            return ("small",)
        lead = top_digits(x, p)
        low = least_significant_digit(x, p)
        finger = []
        for a in seen:
            for pat, count in gap_counts(a * x, p).items():
                r = count % p
                if r:
                    finger.append(((a, (pat.upper,) + pat.lower), r))
        return ("big", lead, low, tuple(sorted(finger)))

    return Colouring(
        "notrapid",
        fn,
        palette=None,
        reserved=frozenset({("small",)}),
        params={"p": p, "coeffs": coeffs},
        memoize=True,
    )


def colour_image(col, values):
    """Common colour of all the values, or None if they disagree.

    values may be an ImageSet or any iterable; every value must be a positive
    integer (integral Fraction accepted).
    """
    vals = values.sorted_values() if hasattr(values, "sorted_values") else sorted(values)
    if not vals:
        raise ValueError("empty value set has no common colour")
    common = None
    for v in vals:
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError("image value %s is not an integer" % v)
            v = int(v)
        c = col.colour(v)
        if common is None:
            common = c
        elif c != common:
            return None
    return common
