"""Exact rational linear feasibility.

Phase-one simplex over Fraction arithmetic with Bland's anti-cycling rule.
Used to decide membership in finitely generated rational cones: find x >= 0
with A x = b, or certify that none exists. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalVerificationFailed


def solve_nonnegative(
    columns: list[list[Fraction]], target: list[Fraction]
) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] = target with all x_j >= 0.

    Returns the coefficient list on success, None if infeasible.
    """
    m = len(target)
    n = len(columns)
    for col in columns:
        if len(col) != m:
            raise ValueError("column length mismatch")
    # rows of [A | I | b] with b made non-negative
    tab = []
    for i in range(m):
        row = [Fraction(columns[j][i]) for j in range(n)]
        row += [Fraction(1) if t == i else Fraction(0) for t in range(m)]
        row.append(Fraction(target[i]))
        if row[-1] < 0:
            row = [-x for x in row]
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m + 1
    # phase-one objective: minimize the sum of artificial variables
    z = [Fraction(0)] * width
    for j in range(n, n + m):
        z[j] = Fraction(1)
    for row in tab:
        z = [a - b for a, b in zip(z, row)]

    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        pivot_row = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[pivot_row])
                ):
                    best = ratio
                    pivot_row = i
        if pivot_row is None:
            raise InternalVerificationFailed("phase-one objective unbounded")
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [x / piv for x in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[pivot_row])]
        if z[enter]:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, tab[pivot_row])]
        basis[pivot_row] = enter

    objective = -z[-1]
    if objective != 0:
        return None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tab[i][-1]
    for i, b in enumerate(basis):
        if b >= n and tab[i][-1] != 0:
            raise InternalVerificationFailed("artificial variable stuck nonzero")
    # exact re-verification of the combination
    for i in range(m):
        acc = sum((x[j] * columns[j][i] for j in range(n)), Fraction(0))
        if acc != target[i]:
            raise InternalVerificationFailed("simplex solution fails recheck")
    if any(v < 0 for v in x):
        raise InternalVerificationFailed("simplex produced a negative coefficient")
    return x
