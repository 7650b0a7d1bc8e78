"""
LP file writer
Writes a model in the textual LP format (Minimize / Subject To / Bounds /
End) for cross-checking with external solvers. Constraint rows have integer
coefficients already; the objective is multiplied by the common denominator
of the costs so every number in the file is an integer.
"""

import logging
import math
from io import StringIO

from modules.oracle.lp_model import build_model, default_kind
from modules.oracle.lp_solver import solve_lp
from modules.oracle.separation import full_rows

logger = logging.getLogger(__name__)

TERMS_PER_LINE = 8


def _terms(pairs):
    """' + 3 x0_1 - x2_4' style expression, wrapped every few terms"""
    out = []
    for i, (coef, name) in enumerate(pairs):
        sign = '-' if coef < 0 else '+'
        magnitude = abs(coef)
        term = f"{name}" if magnitude == 1 else f"{magnitude} {name}"
        if i and i % TERMS_PER_LINE == 0:
            out.append('\n   ')
        out.append(f" {sign} {term}" if i else (f"- {term}" if coef < 0 else term))
    return ''.join(out)


def write_lp(model, rows=None, title=None):
    """LP-format text of `model` with the given rows (default: its pool)"""
    rows = model.rows if rows is None else rows
    scale = math.lcm(*(c.denominator for c in model.costs)) if model.costs else 1
    buf = StringIO()
    buf.write(f"\\ {title or model.kind + ' LP'}\n")
    buf.write(f"\\ {model.size} variables, {len(rows)} rows\n")
    if scale != 1:
        buf.write(f"\\ objective multiplied by {scale}\n")

    buf.write("Minimize\n")
    objective = [(int(c * scale), name) for c, name in zip(model.costs, model.names) if c]
    if objective:
        buf.write(f" obj: {_terms(objective)}\n")
    else:
        buf.write(f" obj: 0 {model.names[0]}\n")

    buf.write("Subject To\n")
    for i, row in enumerate(rows):
        lhs = [(a, model.names[j]) for j, a in row.coeffs]
        buf.write(f"\\ {row.label}\n")
        if lhs:
            buf.write(f" r{i}: {_terms(lhs)} >= {row.rhs}\n")
        else:
            buf.write(f" r{i}: 0 {model.names[0]} >= {row.rhs}\n")

    buf.write("Bounds\n")
    for name, upper in zip(model.names, model.upper):
        if upper is None:
            buf.write(f" {name} >= 0\n")
        else:
            buf.write(f" 0 <= {name} <= {upper}\n")
    buf.write("End\n")
    return buf.getvalue()


def export_lp(instance, kind=None, full=False, limits=None):
    """
    LP text for an instance: the pool the lazy solver ends with, or under
    `full` every row of the family (within the enumeration caps).
    """
    kind = kind or default_kind(instance)
    if full:
        model = build_model(instance, kind)
        rows = [row for row in full_rows(instance, kind, limits) if row.rhs > 0]
        logger.info("materialised %d rows of the %s LP", len(rows), kind)
        return write_lp(model, rows, title=f"{kind} LP (complete)")
    solution = solve_lp(instance, kind, limits)
    return write_lp(solution.model, title=f"{kind} LP (pooled rows, optimum {solution.objective})")
