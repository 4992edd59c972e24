"""Evaluation of the splitting formula for clovers of degree ``2n``.

``contract`` computes the full contraction of the pieces' trilinear forms
along the edges of one diagram for one vertex-to-piece bijection;
``linking_number_diagram`` sums it over all bijections and ``z_n`` assembles
the element of ``A_n``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm

from .algebra import reduce
from .diagrams import DiagramClass, JacobiDiagram, automorphism_count, canonicalize, enumerate_diagrams
from .errors import NotApplicableError, ValidationError


def _bfs_order(d):
    order, seen = [], set()
    for v0 in range(d.n_vertices):
        if v0 in seen:
            continue
        seen.add(v0)
        queue = [v0]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for s in range(3):
                w = d.partner[(v, s)][0]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _check_assignment(c, d, sigma):
    if c.k != d.n_vertices:
        raise ValidationError(
            f"clover has {c.k} pieces but the diagram has {d.n_vertices} vertices"
        )
    if sorted(sigma) != list(range(1, c.k + 1)):
        raise ValidationError(f"vertex assignment {tuple(sigma)} is not a bijection onto 1..{c.k}")


def _integer_form(form):
    entries = form.nonzero_entries()
    den = lcm(1, *(v.denominator for _, v in entries))
    return [(t, int(v * den)) for t, v in entries], den


def _integer_matrix(m):
    den = lcm(1, *(x.denominator for row in m for x in row))
    return [[int(x * den) for x in row] for row in m], den


def contract(c, d, sigma):
    """Contraction for the bijection ``sigma`` (``sigma[v]`` is the 1-based piece of vertex ``v``).

    Sums, over all labellings of half-edges by basis indices, the product of
    cross-linking numbers along edges times the forms evaluated on each vertex's
    labels in slot order. Vertices are visited depth first in breadth-first
    order so that zero factors prune early.
    """
    sigma = tuple(sigma)
    _check_assignment(c, d, sigma)
    order = _bfs_order(d)
    pos = {v: i for i, v in enumerate(order)}
    forms = {}
    links = {}
    den = 1
    entries = []
    back = []
    for v in order:
        piece = sigma[v]
        if piece not in forms:
            forms[piece] = _integer_form(c.forms[piece - 1])
        ent, fden = forms[piece]
        if not ent:
            return Fraction(0)
        entries.append(ent)
        den *= fden
        bv = []
        for s in range(3):
            w, t = d.partner[(v, s)]
            if pos[w] < pos[v]:
                key = (sigma[v], sigma[w])
                if key not in links:
                    links[key] = _integer_matrix(c.link(*key))
                mat, lden = links[key]
                den *= lden
                bv.append((s, pos[w], t, mat))
        back.append(bv)

    m = len(order)
    labels = [None] * m

    def rec(i, acc):
        if i == m:
            return acc
        total = 0
        for triple, val in entries[i]:
            f = acc * val
            for s, j, t, mat in back[i]:
                f *= mat[triple[s] - 1][labels[j][t] - 1]
                if not f:
                    break
            if f:
                labels[i] = triple
                total += rec(i + 1, f)
        return total

    return Fraction(rec(0, 1), den)


def _representative(dclass):
    if isinstance(dclass, DiagramClass):
        return dclass.canonical
    if isinstance(dclass, JacobiDiagram):
        return dclass
    raise ValidationError(f"expected a diagram or diagram class, got {type(dclass).__name__}")


def linking_number_diagram(c, dclass):
    """Sum of :func:`contract` over all vertex-to-piece bijections."""
    d = _representative(dclass)
    if c.k != d.n_vertices:
        raise ValidationError(
            f"clover has {c.k} pieces but the diagram has {d.n_vertices} vertices"
        )
    if any(f.is_zero() for f in c.forms):
        return Fraction(0)
    return sum(
        (contract(c, d, sigma) for sigma in permutations(range(1, c.k + 1))),
        Fraction(0),
    )


def contribution(c, d, b):
    """Coordinates of ``lk(D; d) / #Aut(d) * [d]`` for an oriented diagram ``d``."""
    cls, sign = canonicalize(d)
    if cls.zero_flag:
        return (Fraction(0),) * b.dimension
    coeff = sign * linking_number_diagram(c, d) / automorphism_count(cls)
    return tuple(coeff * x for x in reduce(cls, b))


def z_n(c, n, b):
    """Coordinates of ``Z_n(D)`` over the basis ``b`` of ``A_n``.

    Zero when the clover has more than ``2n`` pieces; fewer is outside the
    formula's range and raises :class:`NotApplicableError`.
    """
    if b.degree != n:
        raise ValidationError(f"basis has degree {b.degree}, expected {n}")
    if c.k > 2 * n:
        return (Fraction(0),) * b.dimension
    if c.k < 2 * n:
        raise NotApplicableError(
            f"splitting formula not applicable: clover has k = {c.k} < 2n = {2 * n} pieces"
        )
    total = [Fraction(0)] * b.dimension
    for cls in enumerate_diagrams(n, cap=n):
        if cls.zero_flag:
            continue
        for i, x in enumerate(contribution(c, cls.canonical, b)):
            total[i] += x
    return tuple(total)


def z_n_vector(c, n):
    """``Z_n(D)`` as the unreduced sum over diagram classes."""
    from .algebra import DiagramVector

    if c.k > 2 * n:
        return DiagramVector()
    if c.k < 2 * n:
        raise NotApplicableError(
            f"splitting formula not applicable: clover has k = {c.k} < 2n = {2 * n} pieces"
        )
    out = DiagramVector()
    for cls in enumerate_diagrams(n, cap=n):
        if not cls.zero_flag:
            lk = linking_number_diagram(c, cls)
            out = out + DiagramVector({cls: lk / automorphism_count(cls)})
    return out
