"""Generators for the matrix families used throughout the package.

All generators are deterministic: calling one twice with the same arguments
yields equal matrices with rows in the same order, so serialized output is
byte-stable.  Row budgets truncate the enumeration, never reorder it.
"""

from itertools import combinations, product

from .ratcore import FiniteMatrix, SparseRow
from .seqs import coeff_seq, compress

_ENUM_GUARD = 10**7


def _check_budget(count, what):
    if count > _ENUM_GUARD:
        raise ValueError("%s would enumerate %d candidates; too large" % (what, count))


def finite_sums_row(i):
    """Row i of the finite-sums system: 1 exactly at the binary support of i+1.

    Applying row i to x yields the subset sum of x over that support, so the
    full system's image at x is the set of all finite sums of the entries.
    """
    if i < 0:
        raise ValueError("row index must be >= 0")
    n = i + 1
    return SparseRow((b, 1) for b in range(n.bit_length()) if (n >> b) & 1)


def finite_sums_matrix(v):
    """All 2^v - 1 finite-sums rows over v columns."""
    if v < 1:
        raise ValueError("need at least one column")
    _check_budget(2**v, "finite_sums_matrix")
    return FiniteMatrix([finite_sums_row(i) for i in range(2**v - 1)], v)


def schur_matrix():
    """x, y, x+y as a 3x2 system."""
    return finite_sums_matrix(2)


def pairwise_sum_rows(column_bound, row_budget=None):
    """Finite-sums rows with at most two ones: single entries and pairwise sums."""
    if column_bound < 1:
        raise ValueError("need at least one column")
    rows = [SparseRow({c: 1}) for c in range(column_bound)]
    rows += [SparseRow({c: 1, d: 1}) for c, d in combinations(range(column_bound), 2)]
    if row_budget is not None:
        rows = rows[:row_budget]
    return FiniteMatrix(rows, column_bound)


def milliken_taylor_rows(a, column_bound, row_budget=None):
    """All rows over column_bound columns that compress to the coefficient
    sequence a.  Entries necessarily come from {0} union the terms of a."""
    a = coeff_seq(a)
    alphabet = sorted({0, *a.terms})
    _check_budget(len(alphabet) ** column_bound, "milliken_taylor_rows")
    rows = []
    for dense in product(alphabet, repeat=column_bound):
        if not any(dense):
            continue
        if compress(dense) == a:
            rows.append(SparseRow((c, v) for c, v in enumerate(dense) if v))
            if row_budget is not None and len(rows) >= row_budget:
                break
    return FiniteMatrix(rows, column_bound)


def band_matrix(coeffs, nrows, width=None):
    """Row i carries the coefficient block starting at column i."""
    coeffs = tuple(coeffs)
    if not coeffs or coeffs[0] == 0 or coeffs[-1] == 0:
        raise ValueError("band needs a nonzero leading and trailing coefficient")
    if nrows < 1:
        raise ValueError("need at least one row")
    need = nrows + len(coeffs) - 1
    if width is None:
        width = need
    elif width < need:
        raise ValueError("width %d too small for %d shifted rows" % (width, nrows))
    rows = [
        SparseRow((i + j, v) for j, v in enumerate(coeffs) if v) for i in range(nrows)
    ]
    return FiniteMatrix(rows, width)


def _first_entry_rows(m, c, later_digits):
    """Rows over m columns: zeros, then c, then arbitrary digits from
    later_digits.  Ordered by first-entry column, then lexicographically."""
    rows = []
    for j in range(m):
        for tail in product(later_digits, repeat=m - 1 - j):
            row = SparseRow({j: c})
            for off, d in enumerate(tail):
                row[j + 1 + off] = d
            rows.append(row)
    return FiniteMatrix(rows, m)


def mpc_matrix(m, p, c):
    """All rows (0..0, c, d..d) with later digits drawn from {0..p}.

    Row count is ((p+1)^m - 1) / p.
    """
    if m < 1 or p < 1 or c < 1:
        raise ValueError("m, p, c must be positive")
    _check_budget((p + 1) ** m, "mpc_matrix")
    return _first_entry_rows(m, c, range(p + 1))


def deuber_matrix(m, p, c):
    """Like mpc_matrix but with later digits from {-p..p}.

    Row count is ((2p+1)^m - 1) / (2p).
    """
    if m < 1 or p < 1 or c < 1:
        raise ValueError("m, p, c must be positive")
    _check_budget((2 * p + 1) ** m, "deuber_matrix")
    return _first_entry_rows(m, c, range(-p, p + 1))


def doubling_block_row(i, width=None):
    """2 at column i and 1 across columns 2^i .. 2^(i+1)-1."""
    if i < 0:
        raise ValueError("row index must be >= 0")
    need = 2 ** (i + 1)
    if width is None:
        width = need
    elif width < need:
        raise ValueError("width %d too small, row reaches column %d" % (width, need - 1))
    row = SparseRow({i: 2})
    for j in range(2**i, 2 ** (i + 1)):
        row[j] = row[j] + 1
    return row


def doubling_block_matrix(n, width=None):
    """Rows doubling_block_row(0..n-1) over 2^n columns."""
    if n < 1:
        raise ValueError("need at least one row")
    if width is None:
        width = 2**n
    return FiniteMatrix([doubling_block_row(i, width) for i in range(n)], width)


def doubling_system(n):
    """Identity stacked on the doubling rows; width 2^n."""
    return stack(identity_matrix(2**n), doubling_block_matrix(n))


def grouped_sum_matrix(coeffs, width=None):
    """First variable alone, then per block n: the block's variables alone
    followed by coeffs[n-1] times the first variable plus the block's sum.

    Block n covers columns T(n-1)+1 .. T(n) with T the triangular numbers,
    so block n has n variables and the matrix grows without repeating shapes.
    """
    coeffs = tuple(coeffs)
    if not coeffs or any(c == 0 for c in coeffs):
        raise ValueError("block coefficients must be nonzero")
    k = len(coeffs)
    need = k * (k + 1) // 2 + 1
    if width is None:
        width = need
    elif width < need:
        raise ValueError("width %d too small for %d blocks" % (width, k))
    rows = [SparseRow({0: 1})]
    col = 1
    for n, c in enumerate(coeffs, start=1):
        group = range(col, col + n)
        rows.extend(SparseRow({j: 1}) for j in group)
        combined = SparseRow({0: c})
        for j in group:
            combined[j] = 1
        rows.append(combined)
        col += n
    return FiniteMatrix(rows, width)


def constant_rowsum_rows(total, width, entry_bound=None, row_budget=None):
    """All nonzero rows with entries in {0..entry_bound} summing to total."""
    if total < 1 or width < 1:
        raise ValueError("total and width must be positive")
    if entry_bound is None:
        entry_bound = total
    _check_budget((entry_bound + 1) ** width, "constant_rowsum_rows")
    rows = []
    for dense in product(range(entry_bound + 1), repeat=width):
        if sum(dense) == total:
            rows.append(SparseRow((c, v) for c, v in enumerate(dense) if v))
            if row_budget is not None and len(rows) >= row_budget:
                break
    if not rows:
        raise ValueError("no rows: total %d unreachable" % total)
    return FiniteMatrix(rows, width)


def block_sums_matrix(blocks, row_budget=None):
    """One matrix per block, side by side; each row picks a row from some
    nonempty subset of the blocks.  The image at a concatenated assignment is
    the finite-sums-over-sets of the per-block images.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    offsets = []
    width = 0
    for b in blocks:
        offsets.append(width)
        width += b.width
    count = 1
    for b in blocks:
        count *= len(b.rows) + 1
    _check_budget(count, "block_sums_matrix")
    rows = []
    for choice in product(*[range(len(b.rows) + 1) for b in blocks]):
        if not any(choice):
            continue
        row = SparseRow()
        for bi, ci in enumerate(choice):
            if ci:
                for c, v in blocks[bi].rows[ci - 1].items():
                    row[offsets[bi] + c] = v
        rows.append(row)
        if row_budget is not None and len(rows) >= row_budget:
            break
    return FiniteMatrix(rows, width)


def identity_matrix(n):
    if n < 1:
        raise ValueError("need at least one column")
    return FiniteMatrix([SparseRow({i: 1}) for i in range(n)], n)


def arithmetic_progression_matrix(k):
    """Rows a, a+d, ..., a+(k-1)d over variables (a, d)."""
    if k < 1:
        raise ValueError("need at least one term")
    if k == 1:
        return FiniteMatrix([SparseRow({0: 1})], 1)
    return FiniteMatrix([SparseRow({0: 1, 1: i}) for i in range(k)], 2)


def stack(A, B):
    """Rows of A then rows of B over the larger width."""
    width = max(A.width, B.width)
    rows = [SparseRow(r) for r in A.rows] + [SparseRow(r) for r in B.rows]
    keys = [r.key() for r in rows]
    return FiniteMatrix(rows, width, allow_duplicate_rows=len(set(keys)) != len(keys))


def add_translation_column(M):
    """Prepend a constant-1 column: row r becomes (1, r)."""
    rows = []
    for r in M.rows:
        row = r.shifted(1)
        row[0] = 1
        rows.append(row)
    return FiniteMatrix(rows, M.width + 1)


def first_entry_constants(A):
    """Map column -> the common first entry of rows starting there, or None
    if A is not a first-entries matrix (zero row, negative first entry, or
    clashing first entries in a column)."""
    consts = {}
    for r in A.rows:
        if not r:
            return None
        j = min(r)
        v = r[j]
        if v <= 0:
            return None
        if consts.setdefault(j, v) != v:
            return None
    return consts


def is_first_entries(A):
    """First-entries shape: every row's first nonzero entry is positive and
    rows starting in the same column share that entry."""
    return first_entry_constants(A) is not None
