"""Independent reference computations used to freeze and cross-check values.

Nothing here calls the package's ideal, reduction or derivative code: the
membership oracle solves a bounded-degree linear system with flint matrices,
and the derivative oracles interpolate exact values along a line.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import flint


def _monomials_up_to(variables, degree):
    """All exponent tuples over ``variables`` of total degree <= ``degree``."""
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(len(variables)), d):
            exps = [0] * len(variables)
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def _as_dict(poly, variables):
    """Polynomial -> {exponent tuple: Fraction} keyed by position in ``variables``."""
    pos = {v: i for i, v in enumerate(variables)}
    out = {}
    for mono, coeff in poly.items():
        exps = [0] * len(variables)
        for v, e in mono:
            exps[pos[v]] += e
        out[tuple(exps)] = Fraction(coeff)
    return out


def _q(x):
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def membership_oracle(f, generators, degree_bound):
    """True when ``f = sum h_i g_i`` has a solution with every ``h_i g_i`` of
    degree <= ``degree_bound``; decided by comparing matrix ranks."""
    variables = sorted(set().union(f.variables(), *(g.variables() for g in generators)))
    gens = [_as_dict(g, variables) for g in generators if not g.is_zero()]
    target = _as_dict(f, variables)
    if not target:
        return True
    if not gens:
        return False
    rows = _monomials_up_to(variables, degree_bound)
    if any(m not in set(rows) for m in target):
        raise ValueError("candidate exceeds the degree bound")
    row_of = {m: i for i, m in enumerate(rows)}
    columns = []
    for g in gens:
        gdeg = max(sum(m) for m in g)
        for mult in _monomials_up_to(variables, degree_bound - gdeg):
            col = [Fraction(0)] * len(rows)
            for m, c in g.items():
                col[row_of[_add_exps(m, mult)]] += c
            columns.append(col)
    if not columns:
        return False
    A = flint.fmpq_mat(len(rows), len(columns),
                       [_q(columns[j][i]) for i in range(len(rows)) for j in range(len(columns))])
    aug = flint.fmpq_mat(len(rows), len(columns) + 1,
                         [_q(x) for i in range(len(rows))
                          for x in [columns[j][i] for j in range(len(columns))] + [target.get(rows[i], 0)]])
    return A.rank() == aug.rank()


def flint_value(poly, point):
    """Evaluate through flint's own multivariate polynomial type."""
    variables = sorted(poly.variables() | set(point))
    if not variables:
        return Fraction(poly.constant_term())
    ctx = flint.fmpq_mpoly_ctx.get(tuple(variables), "lex")
    data = {exps: _q(c) for exps, c in _as_dict(poly, variables).items()}
    fp = ctx.from_dict(data) if data else ctx.from_dict({})
    value = fp(*[_q(point[v]) for v in variables])
    return Fraction(int(value.p), int(value.q))


def line_derivative(poly, base, direction):
    """d/dh poly(base + h*direction) at h = 0, by exact interpolation of the
    restriction to the line (a univariate polynomial of bounded degree)."""
    degree = max((sum(e for _, e in m) for m, _ in poly.items()), default=0)
    hs = list(range(degree + 1))
    values = []
    for h in hs:
        pt = {v: Fraction(base.get(v, 0)) + h * Fraction(direction.get(v, 0))
              for v in set(base) | set(direction) | poly.variables()}
        values.append(flint_value(poly, pt))
    n = len(hs)
    V = flint.fmpq_mat(n, n, [flint.fmpq(h) ** k for h in hs for k in range(n)])
    rhs = flint.fmpq_mat(n, 1, [_q(v) for v in values])
    coeffs = V.solve(rhs)
    if n < 2:
        return Fraction(0)
    c = coeffs[1, 0]
    return Fraction(int(c.p), int(c.q))


def partial_oracle(poly, variable, point):
    """Exact partial derivative at ``point`` via the line in coordinate direction."""
    return line_derivative(poly, point, {variable: 1})
