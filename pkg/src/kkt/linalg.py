"""Exact fraction-free row reduction over the integers."""

from fractions import Fraction
from math import gcd, lcm


def _primitive(row):
    g = 0
    for x in row:
        g = gcd(g, x)
    if g > 1:
        row = [x // g for x in row]
    first = next((x for x in row if x), 0)
    if first < 0:
        row = [-x for x in row]
    return row


def integer_rows(rows):
    """Clear denominators row by row."""
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        m = 1
        for x in r:
            m = lcm(m, x.denominator)
        out.append([int(x * m) for x in r])
    return out


def reduced_echelon(rows, ncols):
    """Integer reduced row-echelon form of the span of ``rows``.

    Returns ``(echelon, pivots)``: every row is primitive with a positive pivot,
    and each pivot column is zero in all other rows. Pivots are taken left to
    right, so the result depends only on the row space and the column order.
    """
    work = [_primitive(list(r)) for r in integer_rows(rows) if any(r)]
    echelon = []
    pivots = []
    for col in range(ncols):
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            continue
        piv = work.pop(k)
        a = piv[col]
        new_work = []
        for r in work:
            b = r[col]
            if b:
                r = [a * x - b * y for x, y in zip(r, piv)]
                if not any(r):
                    continue
                r = _primitive(r)
            new_work.append(r)
        work = new_work
        for i, r in enumerate(echelon):
            b = r[col]
            if b:
                echelon[i] = _primitive([a * x - b * y for x, y in zip(r, piv)])
        echelon.append(piv)
        pivots.append(col)
    # restore positive pivots after the back-substitution rescalings
    for i, (r, c) in enumerate(zip(echelon, pivots)):
        if r[c] < 0:
            echelon[i] = [-x for x in r]
    return echelon, pivots


def rank(rows, ncols):
    return len(reduced_echelon(rows, ncols)[1])
