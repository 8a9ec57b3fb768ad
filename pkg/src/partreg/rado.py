"""Columns-condition decision procedure for homogeneous linear systems.

A finite homogeneous linear system A x = 0 is partition regular over the
nonzero elements of the domain exactly when A satisfies the columns
condition: an ordered partition of the columns whose first cell sums to
zero, every later cell-sum lying in the K-span of the columns of earlier
cells.  The search is complete, so this module decides partition regularity
for linear systems outright.

Column indices are 0-based throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .rings import (
    DomainTag,
    field_from_ring,
    field_zero,
    one,
    zero,
)

DEFAULT_MAX_COLS = 9  # ordered set partitions grow like the ordered Bell numbers


@dataclass
class LinearSystem:
    domain: DomainTag
    entries: list  # m rows, each a list of n DomainElements

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("empty matrix")
        n = len(self.entries[0])
        for row in self.entries:
            if len(row) != n:
                raise ValueError("ragged matrix")
            for x in row:
                if x.domain != self.domain:
                    raise ValueError("entry domain mismatch")

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0])

    def column(self, j):
        return [row[j] for row in self.entries]


@dataclass
class ColumnsWitness:
    """Ordered partition of columns plus the certifying span coefficients.

    combos[j-1] maps earlier column indices to K-coefficients expressing the
    sum of the j-th cell (j >= 1, i.e. cells[1:]).
    """

    cells: list  # list of sorted lists of column indices
    combos: list  # list of dicts {column index: FieldElement}


def _vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _cell_sum(system, cell):
    acc = [zero(system.domain)] * system.nrows
    for j in cell:
        acc = _vec_add(acc, system.column(j))
    return acc


def solve_in_span(domain, columns, target):
    """Solve sum_j x_j * columns[j] = target over K, or return None.

    Fraction-free (Bareiss) forward elimination over the ring keeps entries
    exactly divisible; back substitution produces normalized fractions.
    Free variables are set to zero.
    """
    m = len(target)
    k = len(columns)
    a = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    prev = one(domain)
    pivot_cols = []
    r = 0
    for c in range(k):
        pivot_row = None
        for i in range(r, m):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, k + 1):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]).exact_div(prev)
            a[i][c] = zero(domain)
        prev = a[r][c]
        pivot_cols.append(c)
        r += 1
    for i in range(r, m):
        if not a[i][k].is_zero():
            return None
    x = [field_zero(domain)] * k
    for idx in range(r - 1, -1, -1):
        c = pivot_cols[idx]
        s = field_from_ring(a[idx][k])
        for j in range(c + 1, k):
            if not a[idx][j].is_zero() and not x[j].is_zero():
                s = s - field_from_ring(a[idx][j]) * x[j]
        x[c] = s / field_from_ring(a[idx][c])
    return x


def _lex_subsets(items):
    """Nonempty subsets of a sorted list in lexicographic index order."""

    def rec(start, current):
        for i in range(start, len(items)):
            chosen = current + [items[i]]
            yield chosen
            yield from rec(i + 1, chosen)

    yield from rec(0, [])


def columns_condition(system, max_cols=DEFAULT_MAX_COLS, force=False):
    """Search for a columns-condition witness; None means no witness exists.

    The returned witness is the first one in the canonical order (cells
    compared lexicographically as sorted index tuples, cell by cell), which
    is the lexicographically least witness.
    """
    n = system.ncols
    if n > max_cols and not force:
        raise ValueError(
            f"{n} columns exceeds the default cap of {max_cols}; pass force=True to override"
        )
    if n > max_cols:
        warnings.warn(f"ordered-partition search over {n} columns may be very slow")

    zero_vec = [zero(system.domain)] * system.nrows

    def search(remaining, used_cols, cells, combos):
        if not remaining:
            return ColumnsWitness([list(c) for c in cells], [dict(c) for c in combos])
        for cell in _lex_subsets(remaining):
            total = _cell_sum(system, cell)
            if not cells:
                if total != zero_vec:
                    continue
                combo = None
            else:
                coeffs = solve_in_span(
                    system.domain, [system.column(j) for j in used_cols], total
                )
                if coeffs is None:
                    continue
                combo = {j: coeffs[idx] for idx, j in enumerate(used_cols)}
            rest = [j for j in remaining if j not in cell]
            result = search(
                rest,
                used_cols + list(cell),
                cells + [cell],
                combos + ([combo] if combo is not None else []),
            )
            if result is not None:
                return result
        return None

    return search(list(range(n)), [], [], [])


def verify_witness(system, witness):
    """Re-check a witness with exact arithmetic, independent of the search."""
    n = system.ncols
    seen = set()
    for cell in witness.cells:
        if not cell:
            raise ValueError("empty cell in witness")
        for j in cell:
            if not 0 <= j < n or j in seen:
                raise ValueError("witness cells do not partition the columns")
            seen.add(j)
    if len(seen) != n:
        raise ValueError("witness cells do not partition the columns")
    if len(witness.combos) != len(witness.cells) - 1:
        raise ValueError("witness has the wrong number of combinations")

    zero_vec = [zero(system.domain)] * system.nrows
    if _cell_sum(system, witness.cells[0]) != zero_vec:
        return False
    earlier = list(witness.cells[0])
    for cell, combo in zip(witness.cells[1:], witness.combos):
        if any(j not in earlier for j in combo):
            return False
        total = [field_from_ring(x) for x in _cell_sum(system, cell)]
        for j, coeff in combo.items():
            col = system.column(j)
            total = [
                total_i - coeff * field_from_ring(col_i) for total_i, col_i in zip(total, col)
            ]
        if any(not x.is_zero() for x in total):
            return False
        earlier.extend(cell)
    return True


def linear_poly(system, row=None):
    """The linear polynomial sum_j a_j * x_j of one row (default: row 0)."""
    from .polys import MultiPoly

    coeffs = system.entries[row or 0]
    n = len(coeffs)
    terms = {}
    for j, c in enumerate(coeffs):
        if not c.is_zero():
            terms[tuple(1 if i == j else 0 for i in range(n))] = c
    return MultiPoly(system.domain, n, terms)
