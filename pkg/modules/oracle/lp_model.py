"""
LP models for the exact oracle
One variable per link (TAP partition LP) or per edge (2NCSS partition LP and
cut LP), a pool of >= rows generated lazily, and optional upper bounds.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from modules.model.instance import NcssInstance, TapInstance, graph_edges

MODEL_KINDS = ('tap-partition', 'ncss-partition', 'cut')


@dataclass(frozen=True)
class Row:
    """sum_j coeffs[j] * x_j >= rhs; `key` identifies the row within its family"""
    key: tuple
    coeffs: tuple
    rhs: Fraction
    label: str = ''

    def as_dict(self):
        return dict(self.coeffs)

    def value(self, x):
        return sum((Fraction(a) * x[j] for j, a in self.coeffs), Fraction(0))

    def violation(self, x):
        """rhs - lhs; positive exactly when x violates the row"""
        return self.rhs - self.value(x)


@dataclass
class LpModel:
    kind: str
    names: list
    edges: list
    costs: list
    upper: list
    rows: list = field(default_factory=list)
    keys: set = field(default_factory=set)

    @property
    def size(self):
        return len(self.names)

    def add_row(self, row):
        """Add to the pool; returns False for a row already pooled"""
        if row.rhs < 0:
            raise ValueError("generated rows have a nonnegative right-hand side")
        if any(not 0 <= j < self.size for j, _ in row.coeffs):
            raise ValueError(f"row {row.label or row.key} references an unknown variable")
        if row.key in self.keys:
            return False
        self.keys.add(row.key)
        self.rows.append(row)
        return True

    def objective(self, x):
        return sum((c * v for c, v in zip(self.costs, x)), Fraction(0))

    def satisfies_pool(self, x):
        if any(v < 0 for v in x):
            return False
        if any(u is not None and v > u for v, u in zip(x, self.upper)):
            return False
        return all(row.violation(x) <= 0 for row in self.rows)


@dataclass
class LpSolution:
    x: tuple
    objective: Fraction
    is_vertex: bool
    rounds: int
    model: LpModel

    @property
    def rows(self):
        return len(self.model.rows)

    def by_edge(self):
        """(edge, value) pairs in variable order"""
        return list(zip(self.model.edges, self.x))


def _var_name(edge):
    return f"x{edge.u}_{edge.v}"


def build_model(instance, kind):
    """
    Variables and bounds for one of the LP families; the pool starts empty
    and is seeded by the solver.

    tap-partition: one variable per link, x >= 0 only.
    ncss-partition: one variable per edge, 0 <= x <= 1.
    cut: one variable per edge (TAP tree edges enter with cost 0), 0 <= x <= 1.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown LP model '{kind}'")
    if kind == 'tap-partition':
        if not isinstance(instance, TapInstance):
            raise ValueError("the TAP partition LP needs a TAP instance")
        edges = list(instance.links)
        upper = [None] * len(edges)
    else:
        if kind == 'ncss-partition' and not isinstance(instance, NcssInstance):
            raise ValueError("the 2NCSS partition LP needs a 2NCSS instance")
        edges = graph_edges(instance)
        upper = [Fraction(1)] * len(edges)
    return LpModel(
        kind=kind,
        names=[_var_name(e) for e in edges],
        edges=edges,
        costs=[e.cost for e in edges],
        upper=upper,
    )


def default_kind(instance):
    if isinstance(instance, NcssInstance):
        return 'ncss-partition'
    return 'cut' if instance.target == '2ec' else 'tap-partition'
