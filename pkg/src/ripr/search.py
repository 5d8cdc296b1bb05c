"""Exhaustive bounded searches: monochromatic images, forcing bounds,
separation sweeps, image domination, certificates.

All searches are deterministic.  Parallel variants partition the outermost
variable into stripes by worker index and share no mutable state; each
stripe runs with the full node budget, so any run that exhausts returns the
same answer for every worker count.  A budget hit is reported via
exhausted=False and withdraws the leastness guarantee on any witness found.
"""

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .matgen import is_first_entries
from .ratcore import DimensionMismatch, ImageSet, SparseRow, apply, image
from .seqs import block_tuples, coeff_seq, rationally_proportional

DEFAULT_NODE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def node_budget_default():
    """Default node budget; the RIPR_BUDGET environment variable overrides."""
    raw = os.environ.get("RIPR_BUDGET", "").strip()
    return int(raw) if raw else DEFAULT_NODE_BUDGET


class _Counter:
    """Node counter with a hard limit."""

    __slots__ = ("n", "limit")

    def __init__(self, limit):
        self.n = 0
        self.limit = limit

    def step(self):
        self.n += 1
        if self.n > self.limit:
            raise _BudgetHit


class _BudgetHit(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    variable_bound: int
    min_entry: int = 1
    distinct_entries: bool = False
    distinct_image: bool = False
    node_budget: int = None

    def __post_init__(self):
        if self.min_entry < 1:
            raise ValueError("entries start at 1")
        if self.variable_bound < self.min_entry:
            raise ValueError("variable bound below the minimum entry")
        if self.node_budget is None:
            object.__setattr__(self, "node_budget", node_budget_default())


@dataclass(frozen=True)
class SearchWitness:
    assignment: tuple
    image: ImageSet
    colour: object


@dataclass(frozen=True)
class SearchResult:
    witness: object
    nodes: int
    exhausted: bool


def _as_int_value(v):
    """Positive integer value of a row, or None."""
    if isinstance(v, Fraction):
        if v.denominator != 1:
            return None
        v = int(v)
    return v if v >= 1 else None


def _rows_by_depth(A):
    """rows_at[d] lists (row, key) pairs fully determined once d entries are
    assigned, i.e. rows whose support lies in the first d columns."""
    rows_at = [[] for _ in range(A.width + 1)]
    for r in A.rows:
        rows_at[(r.max_column() + 1) if r else 0].append((r, r.key()))
    return rows_at


def _stripe_mono(A, col, cfg, x0_values):
    """Least monochromatic witness with x_0 drawn from x0_values, or None.

    Returns (witness, nodes, exhausted).
    """
    width = A.width
    rows_at = _rows_by_depth(A)
    if rows_at[0]:
        return None, 0, True  # a zero row can never take a positive value
    counter = _Counter(cfg.node_budget)
    assignment = [0] * width
    value_owner = {}  # value -> row key, for the distinct-image check

    def candidates(d):
        if d == 0:
            return x0_values
        return range(cfg.min_entry, cfg.variable_bound + 1)

    def rec(d, common):
        if d == width:
            vals = apply(A, assignment)
            img = image(A, assignment)
            return SearchWitness(tuple(assignment), img, common)
        for v in candidates(d):
            counter.step()
            if cfg.distinct_entries and v in assignment[:d]:
                continue
            assignment[d] = v
            added = []
            ok = True
            cur = common
            for row, key in rows_at[d + 1]:
                val = _as_int_value(row.dot(assignment))
                if val is None:
                    ok = False
                    break
                c = col.colour(val)
                if cur is None:
                    cur = c
                elif c != cur:
                    ok = False
                    break
                if cfg.distinct_image:
                    owner = value_owner.get(val)
                    if owner is None:
                        value_owner[val] = key
                        added.append(val)
                    elif owner != key:
                        ok = False
                        break
            if ok:
                found = rec(d + 1, cur)
                if found is not None:
                    return found
            for val in added:
                del value_owner[val]
        return None

    try:
        w = rec(0, None)
        return w, counter.n, True
    except _BudgetHit:
        return None, counter.n, False


def find_monochromatic(A, col, cfg, workers=1):
    """Lexicographically least assignment within bounds whose image is a set
    of positive integers of one colour, or absence.

    With workers > 1 the first variable is striped by residue; outcomes agree
    with the single-worker run whenever the search exhausts its bounds.
    """
    if not A.rows:
        raise ValueError("matrix has no rows")
    if workers < 1:
        raise ValueError("need at least one worker")
    lo, hi = cfg.min_entry, cfg.variable_bound
    stripes = [range(lo + w, hi + 1, workers) for w in range(workers)]
    stripes = [s for s in stripes if len(s)]
    if workers == 1 or len(stripes) <= 1:
        w, nodes, ex = _stripe_mono(A, col, cfg, range(lo, hi + 1))
        return SearchResult(w, nodes, ex)
    results = [None] * len(stripes)

    def run(i):
        results[i] = _stripe_mono(A, col, cfg, stripes[i])

    threads = [threading.Thread(target=run, args=(i,)) for i in range(len(stripes))]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    witnesses = [r[0] for r in results if r[0] is not None]
    nodes = sum(r[1] for r in results)
    exhausted = all(r[2] for r in results)
    best = min(witnesses, key=lambda w: w.assignment) if witnesses else None
    return SearchResult(best, nodes, exhausted)


@dataclass(frozen=True)
class ForcingResult:
    bound: object
    certificate: tuple
    nodes: int


def _realizable_images(A, n):
    """Distinct value sets of A at assignments whose image lies in [1, n].

    Requires non-negative entries with every column positively used, so the
    assignment space is finite and the enumeration is complete.
    """
    col_max = {}
    for r in A.rows:
        if not r:
            raise ValueError("zero rows never have positive images")
        for c, v in r.items():
            if v < 0:
                raise ValueError("forcing search needs non-negative entries")
            if v > 0:
                col_max[c] = max(col_max.get(c, 0), v)
    for c in range(A.width):
        if c not in col_max:
            raise ValueError("column %d carries no positive entry" % c)
    ranges = []
    for c in range(A.width):
        top = int(Fraction(n, 1) / col_max[c])
        if top < 1:
            return []
        ranges.append(range(1, top + 1))
    out = set()
    for x in product(*ranges):
        vals = []
        for r in A.rows:
            v = _as_int_value(r.dot(x))
            if v is None or v > n:
                vals = None
                break
            vals.append(v)
        if vals is not None:
            out.add(frozenset(vals))
    return sorted(out, key=lambda s: sorted(s))


def forcing_bound(A, colours, n_max, node_budget=None):
    """Least n such that every colours-colouring of [1, n] leaves some image
    of A monochromatic, together with an avoiding certificate for n - 1.

    certificate[i] is the colour of i + 1.  If no n <= n_max forces, bound is
    None and the certificate avoids monochromatic images on [1, n_max].
    Raises BudgetExceeded when the colouring sweep outgrows the node budget.
    """
    if colours < 1:
        raise ValueError("need at least one colour")
    budget = node_budget if node_budget is not None else node_budget_default()
    nodes = 0
    cert = ()
    for n in range(1, n_max + 1):
        images = _realizable_images(A, n)
        avoiding = None
        for tail in product(range(colours), repeat=n - 1):
            colour_of = (0,) + tail  # colour of value i is colour_of[i-1]
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("forcing sweep at n=%d exceeds the node budget" % n)
            mono = False
            for s in images:
                nodes += 1
                it = iter(s)
                c0 = colour_of[next(it) - 1]
                if all(colour_of[v - 1] == c0 for v in it):
                    mono = True
                    break
            if not mono:
                avoiding = colour_of
                break
        if avoiding is None:
            return ForcingResult(n, cert, nodes)
        cert = avoiding
    return ForcingResult(None, cert, nodes)


def find_dominated_assignment(A, B, x, y_bound, node_budget=None):
    """Least y with entries in [1, y_bound] whose B-image lands inside the
    A-image at x; the A-image must consist of positive integers."""
    target_vals = []
    for v in apply(A, x):
        iv = _as_int_value(v)
        if iv is None:
            raise ValueError("the target image must consist of positive integers")
        target_vals.append(iv)
    target = frozenset(target_vals)
    if not B.rows:
        raise ValueError("probe matrix has no rows")
    rows_at = _rows_by_depth(B)
    if rows_at[0]:
        return SearchResult(None, 0, True)
    budget = node_budget if node_budget is not None else node_budget_default()
    counter = _Counter(budget)
    assignment = [0] * B.width

    def rec(d):
        if d == B.width:
            return SearchWitness(tuple(assignment), image(B, assignment), None)
        for v in range(1, y_bound + 1):
            counter.step()
            assignment[d] = v
            ok = True
            for row, _ in rows_at[d + 1]:
                val = _as_int_value(row.dot(assignment))
                if val is None or val not in target:
                    ok = False
                    break
            if ok:
                found = rec(d + 1)
                if found is not None:
                    return found
        return None

    try:
        w = rec(0)
        return SearchResult(w, counter.n, True)
    except _BudgetHit:
        return SearchResult(None, counter.n, False)


@dataclass(frozen=True)
class CertifyReport:
    certified: bool
    reason: object


def certify_ipr(A, B, C):
    """Linear-witness certificate: B first-entries, A*C = B, C non-negative
    integral with no zero row.  Passing makes A image partition regular by
    composition; failing reports why the witness is invalid."""
    u, v = len(A.rows), A.width
    if len(B.rows) != u or len(C.rows) != v or C.width != B.width:
        raise DimensionMismatch(
            "need A %dx%d, B %dx%d, C %dx%d"
            % (u, v, u, B.width, v, B.width)
        )
    if not is_first_entries(B):
        return CertifyReport(False, "b-not-first-entries")
    for r in C.rows:
        if not r:
            return CertifyReport(False, "c-zero-row")
        for _, val in r.items():
            num_den = val.as_integer_ratio() if isinstance(val, Fraction) else (val, 1)
            if num_den[1] != 1 or num_den[0] < 0:
                return CertifyReport(False, "c-not-nonnegative-integral")
    for i, arow in enumerate(A.rows):
        prod = SparseRow()
        for t, av in arow.items():
            for j, cv in C.rows[t].items():
                prod[j] = prod[j] + av * cv
        if prod.key() != B.rows[i].key():
            return CertifyReport(False, "product-mismatch")
    return CertifyReport(True, None)


def is_rapid(x, p):
    """Growth check: whenever p^s <= x_i, the next term is divisible by
    p^(s+8)."""
    x = tuple(x)
    if any(not isinstance(v, int) or v < 1 for v in x):
        raise ValueError("need positive integers")
    for i in range(len(x) - 1):
        s = 0
        while p ** (s + 1) <= x[i]:
            s += 1
        if x[i + 1] % p ** (s + 8):
            return False
    return True


def make_rapid(p, seeds):
    """Scale each seed to the least multiple satisfying the growth check
    against the previous output term."""
    seeds = tuple(seeds)
    if any(not isinstance(v, int) or v < 1 for v in seeds):
        raise ValueError("need positive integer seeds")
    out = [seeds[0]]
    for seed in seeds[1:]:
        s = 0
        while p ** (s + 1) <= out[-1]:
            s += 1
        out.append(math.lcm(seed, p ** (s + 8)))
    return tuple(out)


def refute_nonconstant(c, x):
    """A single row with non-negative row sum c that takes a negative value
    at the given non-constant x: entry c + r at a minimal position, -r at a
    strictly larger position, r the least integer above c * x_min."""
    c = Fraction(c)
    if c < 0:
        raise ValueError("row sum must be non-negative")
    x = tuple(x)
    if any(not isinstance(v, int) or v < 1 for v in x):
        raise ValueError("need positive integer entries")
    lo = min(x)
    if max(x) == lo:
        raise ValueError("constant assignments cannot be refuted")
    m = x.index(lo)
    n = next(i for i, v in enumerate(x) if v > lo)
    r = math.floor(c * lo) + 1
    return SparseRow({m: c + r, n: -r})


def _mt_templates(length, k):
    """Block tuples over a prefix, bucketed by their top index."""
    by_top = [[] for _ in range(length)]
    for tup in block_tuples(length, k):
        by_top[tup[-1][-1]].append(tup)
    return by_top


def _seq_value(a, prefix, tup):
    return sum(a[i] * sum(prefix[t] for t in f) for i, f in enumerate(tup))


def _colour_classes(col, bound, cache):
    """colour -> sorted members of [1, bound]; built once per search."""
    if cache:
        return cache
    classes = {}
    for v in range(1, bound + 1):
        classes.setdefault(col.colour(v), []).append(v)
    cache.update(classes)
    return cache


def _mono_prefixes(col, a, length, bound, counter, classes_cache, pinned=None):
    """Yield (prefix, colour) for every distinct-entry prefix of the given
    length whose system image is nonempty, consists of positive integers and
    is monochromatic in a non-reserved colour (the pinned colour if given).
    Lexicographic order."""
    a = coeff_seq(a)
    if length < len(a):
        return  # image would be empty
    by_top = _mt_templates(length, len(a) - 1)
    singles = a.terms == (1,)
    prefix = [0] * length

    def candidates(d, common):
        want = common if common is not None else pinned
        if singles and want is not None:
            classes = _colour_classes(col, bound, classes_cache)
            return classes.get(want, ())
        return range(1, bound + 1)

    def rec(d, common):
        for v in candidates(d, common):
            counter.step()
            if v in prefix[:d]:
                continue
            prefix[d] = v
            cur = common
            ok = True
            for tup in by_top[d]:
                val = _seq_value(a, prefix, tup)
                if val < 1:
                    ok = False
                    break
                c = col.colour(val)
                if cur is None:
                    if col.is_reserved(c) or (pinned is not None and c != pinned):
                        ok = False
                        break
                    cur = c
                elif c != cur:
                    ok = False
                    break
            if not ok:
                continue
            if d + 1 == length:
                if cur is not None:
                    yield tuple(prefix), cur
            else:
                yield from rec(d + 1, cur)

    yield from rec(0, pinned)


@dataclass(frozen=True)
class SeparationReport:
    outcome: str
    ratio: object
    witness: object
    nodes: int


def check_separation(col, a, b, prefix_len, value_bound, node_budget=None):
    """Can the colouring keep the a-system and the b-system apart?

    If a and b are positively proportional no colouring can (outcome
    "proportional").  Otherwise search for entry prefixes x, y within the
    bounds whose two images are nonempty, positive and share one non-reserved
    colour; report the least witness, or none-within-bounds, or budget.
    """
    a = coeff_seq(a)
    b = coeff_seq(b)
    r = rationally_proportional(a, b)
    if r is not None:
        return SeparationReport("proportional", r, None, 0)
    budget = node_budget if node_budget is not None else node_budget_default()
    counter = _Counter(budget)
    if prefix_len < len(a) or prefix_len < len(b):
        # one side's image is empty at this prefix length, so no witness
        return SeparationReport("none-within-bounds", None, None, 0)
    classes_cache = {}
    try:
        for x, colour in _mono_prefixes(col, a, prefix_len, value_bound, counter, classes_cache):
            for y, _ in _mono_prefixes(
                col, b, prefix_len, value_bound, counter, classes_cache, pinned=colour
            ):
                return SeparationReport(
                    "witness", None, {"x": x, "y": y, "colour": colour}, counter.n
                )
    except _BudgetHit:
        return SeparationReport("budget", None, None, counter.n)
    return SeparationReport("none-within-bounds", None, None, counter.n)


@dataclass(frozen=True)
class TranslateResult:
    witness: object
    nodes: int
    exhausted: bool


def _stripe_translate(col, a, prefix_len, b_values, x_bound, budget):
    a = coeff_seq(a)
    by_top = _mt_templates(prefix_len, len(a) - 1)
    counter = _Counter(budget)
    prefix = [0] * prefix_len

    def rec(b, d, common):
        for v in range(1, x_bound + 1):
            counter.step()
            if v in prefix[:d]:
                continue
            prefix[d] = v
            cur = common
            ok = True
            # finite sums gaining v: v alone and v on top of earlier sums
            new_sums = [v] + [s + v for s in _fs_prefix(prefix, d)]
            for s in new_sums:
                c = col.colour(s)
                if cur is None:
                    cur = c
                elif c != cur:
                    ok = False
                    break
            if ok:
                for tup in by_top[d]:
                    val = b + _seq_value(a, prefix, tup)
                    if val < 1:
                        ok = False
                        break
                    if col.colour(val) != cur:
                        ok = False
                        break
            if not ok:
                continue
            if d + 1 == prefix_len:
                return (b, tuple(prefix), cur)
            found = rec(b, d + 1, cur)
            if found is not None:
                return found
        return None

    best = None
    try:
        for b in b_values:
            found = rec(b, 0, None)
            if found is not None:
                best = found
                break
        return best, counter.n, True
    except _BudgetHit:
        return best, counter.n, False


def _fs_prefix(prefix, d):
    """All finite sums of prefix[:d]; d is small here."""
    sums = []
    for v in prefix[:d]:
        sums += [s + v for s in sums] + [v]
    return sums


def translate_witness(col, a, prefix_len, b_bound, x_bound, node_budget=None, workers=1):
    """Least (b, x) such that the finite sums of x together with b plus every
    a-system value of x are all positive and one colour.

    x has prefix_len distinct entries in [1, x_bound]; b ranges in
    [1, b_bound] and is striped across workers.
    """
    a = coeff_seq(a)
    if prefix_len < len(a):
        raise ValueError("prefix must be at least as long as the coefficients")
    if workers < 1:
        raise ValueError("need at least one worker")
    budget = node_budget if node_budget is not None else node_budget_default()
    stripes = [range(1 + w, b_bound + 1, workers) for w in range(workers)]
    stripes = [s for s in stripes if len(s)]
    results = []
    if len(stripes) <= 1:
        results = [_stripe_translate(col, a, prefix_len, range(1, b_bound + 1), x_bound, budget)]
    else:
        results = [None] * len(stripes)

        def run(i):
            results[i] = _stripe_translate(col, a, prefix_len, stripes[i], x_bound, budget)

        threads = [threading.Thread(target=run, args=(i,)) for i in range(len(stripes))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
    witnesses = [r[0] for r in results if r[0] is not None]
    nodes = sum(r[1] for r in results)
    exhausted = all(r[2] for r in results)
    best = min(witnesses) if witnesses else None
    return TranslateResult(best, nodes, exhausted)
