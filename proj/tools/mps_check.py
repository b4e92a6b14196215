#!/usr/bin/env python3
"""Solve an exported MPS model with scipy's MILP interface (HiGHS) and print
the optimal objective, rounded to the nearest integer money unit."""
import sys

import numpy as np
from scipy.optimize import LinearConstraint, Bounds, milp


def parse_mps(path):
    rows = {}          # name -> sense ('N', 'L', 'G')
    row_order = []
    cols = {}          # name -> {row: coef}
    col_order = []
    integrality = {}
    rhs = {}
    lb = {}
    ub = {}
    section = None
    integer_mode = False
    with open(path) as fh:
        for raw in fh:
            if not raw.strip() or raw.startswith('*'):
                continue
            if not raw[0].isspace():
                section = raw.split()[0]
                continue
            tok = raw.split()
            if section == 'ROWS':
                rows[tok[1]] = tok[0]
                row_order.append(tok[1])
            elif section == 'COLUMNS':
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    integer_mode = tok[2] == "'INTORG'"
                    continue
                name = tok[0]
                if name not in cols:
                    cols[name] = {}
                    col_order.append(name)
                    integrality[name] = 1 if integer_mode else 0
                for i in range(1, len(tok) - 1, 2):
                    cols[name][tok[i]] = float(tok[i + 1])
            elif section == 'RHS':
                for i in range(1, len(tok) - 1, 2):
                    rhs[tok[i]] = float(tok[i + 1])
            elif section == 'BOUNDS':
                kind, name = tok[0], tok[2]
                if kind == 'BV':
                    lb[name], ub[name] = 0.0, 1.0
                elif kind == 'UP':
                    ub[name] = float(tok[3])
                elif kind == 'LO':
                    lb[name] = float(tok[3])
                elif kind == 'FX':
                    lb[name] = ub[name] = float(tok[3])
    return rows, row_order, cols, col_order, integrality, rhs, lb, ub


def main():
    rows, row_order, cols, col_order, integrality, rhs, lb, ub = parse_mps(sys.argv[1])
    obj_row = next(name for name in row_order if rows[name] == 'N')
    con_rows = [name for name in row_order if rows[name] != 'N']
    ridx = {name: i for i, name in enumerate(con_rows)}
    n, m = len(col_order), len(con_rows)

    c = np.zeros(n)
    a = np.zeros((m, n))
    for j, name in enumerate(col_order):
        for row, coef in cols[name].items():
            if row == obj_row:
                c[j] = coef
            else:
                a[ridx[row], j] = coef
    con_lb = np.full(m, -np.inf)
    con_ub = np.full(m, np.inf)
    for name in con_rows:
        b = rhs.get(name, 0.0)
        if rows[name] == 'L':
            con_ub[ridx[name]] = b
        else:
            con_lb[ridx[name]] = b

    var_lb = np.array([lb.get(name, 0.0) for name in col_order])
    var_ub = np.array([ub.get(name, np.inf) for name in col_order])
    integ = np.array([integrality[name] for name in col_order])

    res = milp(c=c, constraints=LinearConstraint(a, con_lb, con_ub),
               bounds=Bounds(var_lb, var_ub), integrality=integ)
    if not res.success:
        print('FAILED', res.message)
        sys.exit(1)
    print(round(res.fun))


if __name__ == '__main__':
    main()
