"""Digit expansions in positive and negative bases, and gap statistics.

For a prime (or any integer >= 2) p, every nonzero integer x has a unique
finite expansion x = sum d_i * (-p)^i with digits d_i in {0..p-1}.  The gap
statistics count occurrences of a fixed digit pattern around a run of zeros
in that expansion; they are the raw material for the separating colourings.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class DigitExpansion:
    """Finite digit string, least significant first; base is p or -p."""

    base: int
    digits: tuple

    def digit(self, i):
        """Digit at position i, zero beyond the stored string."""
        if i < 0:
            raise ValueError("digit positions start at 0")
        return self.digits[i] if i < len(self.digits) else 0

    def support(self):
        return tuple(i for i, d in enumerate(self.digits) if d != 0)

    def min_support(self):
        s = self.support()
        if not s:
            raise ValueError("zero has empty support")
        return s[0]

    def max_support(self):
        s = self.support()
        if not s:
            raise ValueError("zero has empty support")
        return s[-1]

    def value(self):
        return sum(d * self.base**i for i, d in enumerate(self.digits))


def _check_base(p):
    if not isinstance(p, int) or p < 2:
        raise ValueError("base parameter must be an integer >= 2")


def base_digits(x, p):
    """Ordinary base-p expansion of a positive integer."""
    _check_base(p)
    if not isinstance(x, int) or x < 1:
        raise ValueError("base_digits wants a positive integer")
    out = []
    while x:
        x, d = divmod(x, p)
        out.append(d)
    return DigitExpansion(p, tuple(out))


def negabase_digits(x, p):
    """Base -p expansion of a nonzero integer, digits in {0..p-1}.

    Repeatedly divide keeping the remainder non-negative:
    x = q*(-p) + d with d in {0..p-1}, then continue on q.
    """
    _check_base(p)
    if not isinstance(x, int) or x == 0:
        raise ValueError("negabase_digits wants a nonzero integer")
    out = []
    while x:
        d = x % p
        out.append(d)
        x = -((x - d) // p)
    return DigitExpansion(-p, tuple(out))


def negabase_range_check(x, p, s):
    """Whether max support of the base -p expansion of x equals s,
    decided by the closed-form range for each parity of s.

    Even s admits x in [(p^s + p)/(p + 1), (p^(s+2) - 1)/(p + 1)];
    odd s admits x in [(-p^(s+2) + p)/(p + 1), (-p^s - 1)/(p + 1)].
    Comparisons are exact (cross-multiplied), no division.
    """
    _check_base(p)
    if s < 0:
        raise ValueError("support position must be >= 0")
    lhs = x * (p + 1)
    if s % 2 == 0:
        return p**s + p <= lhs <= p ** (s + 2) - 1
    return -(p ** (s + 2)) + p <= lhs <= -(p**s) - 1


def least_significant_digit(x, p):
    """Lowest nonzero digit of the base -p expansion (digit at min support).

    Equals x mod p unless p divides x, in which case trailing zero digits
    are skipped first.
    """
    _check_base(p)
    if not isinstance(x, int) or x == 0:
        raise ValueError("least_significant_digit wants a nonzero integer")
    while x % p == 0:
        x = -(x // p)
    return x % p


def top_digits(x, p):
    """Four most significant digits of the base -p expansion, top first.

    Defined when max support is at least 3; below that there is no
    four-digit block to read.
    """
    e = negabase_digits(x, p)
    s = e.max_support()
    if s < 3:
        raise ValueError("top_digits needs max support >= 3, got %d" % s)
    return (e.digit(s), e.digit(s - 1), e.digit(s - 2), e.digit(s - 3))


@dataclass(frozen=True)
class GapPattern:
    """Digit pattern bracketing a zero run: a single nonzero digit above the
    run, four digits just below it (most significant first, the first one
    nonzero)."""

    upper: int
    lower: tuple

    def __post_init__(self):
        if self.upper < 1:
            raise ValueError("upper digit must be nonzero")
        low = tuple(self.lower)
        object.__setattr__(self, "lower", low)
        if len(low) != 4:
            raise ValueError("lower block must hold exactly four digits")
        if low[0] < 1:
            raise ValueError("leading lower digit must be nonzero")
        if any(d < 0 for d in low):
            raise ValueError("digits are non-negative")

    def check_base(self, p):
        if self.upper >= p or any(d >= p for d in self.lower):
            raise ValueError("pattern digits must be below the base %d" % p)


def _gap_sites(e):
    """(s, t) pairs of consecutive support positions with s even, s >= 4 and
    at least three zeros strictly between."""
    supp = e.support()
    out = []
    for s, t in zip(supp, supp[1:]):
        if s % 2 == 0 and s >= 4 and t > s + 3:
            out.append((s, t))
    return out


def find_gaps(x, p, pattern):
    """All (s, t) sites in the base -p expansion of x matching the pattern:
    digit t is pattern.upper, digits s..s-3 are pattern.lower, only zeros
    strictly between s and t."""
    _check_base(p)
    pattern.check_base(p)
    e = negabase_digits(x, p)
    hits = set()
    for s, t in _gap_sites(e):
        if e.digit(t) == pattern.upper and (
            e.digit(s),
            e.digit(s - 1),
            e.digit(s - 2),
            e.digit(s - 3),
        ) == pattern.lower:
            hits.add((s, t))
    return hits


def gap_residue(x, p, pattern):
    """Number of matching gap sites, reduced mod p (canonical 0..p-1)."""
    return len(find_gaps(x, p, pattern)) % p


def gap_counts(x, p):
    """Every pattern occurring in x with its site count, as a dict.

    One pass over the support; equivalent to find_gaps over all patterns.
    """
    _check_base(p)
    e = negabase_digits(x, p)
    counts = {}
    for s, t in _gap_sites(e):
        pat = GapPattern(e.digit(t), (e.digit(s), e.digit(s - 1), e.digit(s - 2), e.digit(s - 3)))
        counts[pat] = counts.get(pat, 0) + 1
    return counts
