"""
Exact rational simplex
Solves   min c.x  s.t.  A x >= b, x >= 0   (c >= 0)
through its dual   max b.y  s.t.  A^T y <= c, y >= 0,   whose slack
dictionary is feasible from the start. Rows of the primal are columns of the
dual, so constraints generated lazily are appended as new nonbasic dual
variables and the current dictionary stays feasible (warm start).

Entries are Fractions in a numpy object array; nothing is ever rounded.
"""

import logging
from enum import Enum
from fractions import Fraction

import numpy as np

from modules.errors import InternalError

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LPResult(Enum):
    OPTIMAL = 1
    INFEASIBLE = 2
    UNBOUNDED = 3


class DualDictionary:
    """
    Simplex dictionary (in Vanderbei's sense) of the dual LP.

    Row 0 is the objective z, rows 1..m the basic variables; column 0 holds
    constants, columns 1.. the nonbasic variables. Variables 0..m-1 are the
    dual slacks w_j (one per primal variable x_j), variables m, m+1, ... the
    dual variables y_i in the order their primal rows were added.
    """

    def __init__(self, costs):
        costs = [Fraction(c) for c in costs]
        if any(c < 0 for c in costs):
            raise InternalError("negative objective coefficient; the slack basis is not dual feasible")
        self.m = len(costs)
        self.C = np.empty((self.m + 1, 1), dtype=object)
        self.C[0, 0] = ZERO
        for j, c in enumerate(costs):
            self.C[j + 1, 0] = c
        self.B = list(range(self.m))
        self.N = []
        self.pivots = 0

    @property
    def row_count(self):
        """Number of primal rows (dual variables) added so far"""
        return len(self.N) + len(self.B) - self.m

    def add_row(self, coeffs, rhs):
        """
        Append the primal row  sum_j coeffs[j] x_j >= rhs  as a new nonbasic
        dual variable. Its dictionary column is -B^{-1} a, read off the
        columns of the original slacks.
        """
        col = np.empty(self.m + 1, dtype=object)
        col[:] = ZERO
        col[0] = Fraction(rhs)
        where = {var: k + 1 for k, var in enumerate(self.N)}
        basic_row = {var: r + 1 for r, var in enumerate(self.B)}
        for j, a in coeffs.items():
            a = Fraction(a)
            if a == 0:
                continue
            if not 0 <= j < self.m:
                raise InternalError(f"row references unknown variable {j}")
            if j in where:
                col += a * self.C[:, where[j]]
            else:
                col[basic_row[j]] -= a
        self.C = np.hstack([self.C, col.reshape(-1, 1)])
        self.N.append(self.m + self.row_count)
        return self.N[-1]

    def pivot(self, k, l):
        """Nonbasic column k enters, basic row l leaves (both 1-based)"""
        a = self.C[l, k]
        prow = -self.C[l, :] / a
        prow[k] = ONE / a
        f = self.C[:, k].copy()
        f[l] = ZERO
        self.C = self.C + np.outer(f, prow)
        self.C[:, k] = f * prow[k]
        self.C[l, :] = prow
        self.N[k - 1], self.B[l - 1] = self.B[l - 1], self.N[k - 1]
        self.pivots += 1

    def bland(self):
        """
        Entering: the positive reduced cost with the smallest variable index.
        Leaving: minimum ratio, ties to the smallest basic variable index.
        Returns (k, l); k is None at optimality, l is None if unbounded.
        """
        entering = None
        for k in range(1, self.C.shape[1]):
            if self.C[0, k] > 0 and (entering is None or self.N[k - 1] < self.N[entering - 1]):
                entering = k
        if entering is None:
            return None, None

        leaving, best = None, None
        for r in range(1, self.m + 1):
            coef = self.C[r, entering]
            if coef >= 0:
                continue
            ratio = self.C[r, 0] / -coef
            if (best is None or ratio < best
                    or (ratio == best and self.B[r - 1] < self.B[leaving - 1])):
                leaving, best = r, ratio
        return entering, leaving

    def solve(self, max_pivots=None):
        """
        Pivot to optimality. The result refers to the primal: an unbounded
        dual means the primal rows cannot all be met.
        """
        start = self.pivots
        while True:
            k, l = self.bland()
            if k is None:
                return LPResult.OPTIMAL
            if l is None:
                return LPResult.INFEASIBLE
            if max_pivots is not None and self.pivots - start >= max_pivots:
                raise InternalError(f"simplex exceeded {max_pivots} pivots")
            self.pivot(k, l)

    def value(self):
        return self.C[0, 0]

    def primal_solution(self):
        """x_j = minus the reduced cost of the dual slack w_j (0 if w_j is basic)"""
        x = [ZERO] * self.m
        for k, var in enumerate(self.N):
            if var < self.m:
                x[var] = -self.C[0, k + 1]
        return x

    def dual_solution(self):
        """Values of y, one per added row"""
        y = [ZERO] * self.row_count
        for r, var in enumerate(self.B):
            if var >= self.m:
                y[var - self.m] = self.C[r + 1, 0]
        return y


def matrix_rank(rows):
    """Rank of a list of equal-length rational vectors (Gaussian elimination)"""
    work = [[Fraction(v) for v in row] for row in rows]
    if not work:
        return 0
    rank = 0
    width = len(work[0])
    for col in range(width):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for r in range(rank + 1, len(work)):
            factor = work[r][col] / lead
            if factor:
                work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def is_basic_point(x, rows, upper=None):
    """
    True iff x is a vertex of {x >= 0, rows, x <= upper}: the constraints
    tight at x have full column rank. `rows` are (coeffs dict, rhs) pairs.
    """
    m = len(x)
    tight = []
    for j, v in enumerate(x):
        if v == 0 or (upper is not None and upper[j] is not None and v == upper[j]):
            tight.append([ONE if i == j else ZERO for i in range(m)])
    for coeffs, rhs in rows:
        if sum((Fraction(a) * x[j] for j, a in coeffs.items()), ZERO) == rhs:
            dense = [ZERO] * m
            for j, a in coeffs.items():
                dense[j] = Fraction(a)
            tight.append(dense)
    return matrix_rank(tight) == m


def solve_rows(costs, rows, upper=None):
    """
    One-shot solve of  min costs.x  s.t. rows, x >= 0, x <= upper.

    Returns:
        LPResult, x (list of Fraction or None), objective (Fraction or None)
    """
    dictionary = DualDictionary(costs)
    if upper is not None:
        for j, bound in enumerate(upper):
            if bound is not None:
                dictionary.add_row({j: -1}, -Fraction(bound))
    for coeffs, rhs in rows:
        dictionary.add_row(coeffs, rhs)
    result = dictionary.solve()
    if result is not LPResult.OPTIMAL:
        return result, None, None
    logger.debug("simplex: %d rows, %d pivots, value %s",
                 dictionary.row_count, dictionary.pivots, dictionary.value())
    return result, dictionary.primal_solution(), dictionary.value()
