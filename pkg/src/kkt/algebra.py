"""The space A_n of Jacobi diagrams modulo AS and IHX, with exact coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagrams import (
    DiagramClass,
    JacobiDiagram,
    canonicalize,
    check_degree,
    enumerate_diagrams,
)
from .errors import ValidationError
from .linalg import reduced_echelon


class DiagramVector:
    """Finitely supported rational combination of diagram classes.

    Classes with ``zero_flag`` are dropped on insertion, so AS is built in.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        for cls, c in (terms or {}).items():
            self._add(cls, Fraction(c))

    def _add(self, cls, c):
        if cls.zero_flag or not c:
            return
        v = self._terms.get(cls, Fraction(0)) + c
        if v:
            self._terms[cls] = v
        else:
            self._terms.pop(cls, None)

    @classmethod
    def from_diagram(cls, d, coeff=1):
        """The class of an oriented diagram, with its AS sign."""
        c, sign = canonicalize(d)
        v = cls()
        v._add(c, sign * Fraction(coeff))
        return v

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def coefficient(self, cls):
        return self._terms.get(cls, Fraction(0))

    @property
    def degree(self):
        degs = {c.degree for c in self._terms}
        if len(degs) > 1:
            raise ValidationError(f"mixed degrees {sorted(degs)} in one vector")
        return degs.pop() if degs else None

    def __add__(self, other):
        out = DiagramVector(self._terms)
        for c, x in other._terms.items():
            out._add(c, x)
        return out

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return DiagramVector({c: scalar * x for c, x in self._terms.items()})

    def __neg__(self):
        return (-1) * self

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, DiagramVector) and self._terms == other._terms

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        inner = " + ".join(f"({x})*[{c.encode()}]" for c, x in self.items())
        return f"DiagramVector({inner or '0'})"


def ihx_terms(d, edge):
    """The three oriented diagrams of the IHX relation at ``edge`` of ``d``.

    With ``e`` the internal edge from ``u`` to ``w``, ``u`` carrying legs
    ``p, q`` and ``w`` carrying ``r, s`` after ``e`` in cyclic order, the terms
    are ``u(e,p,q) w(e,r,s)``, ``u(e,p,r) w(e,s,q)`` and ``u(e,p,s) w(e,q,r)``;
    their sum vanishes. This is the Jacobi identity read through
    ``f(x,y,z) = <[x,y],z>`` and agrees with the counterclockwise planar
    pictures. A term in which a simple loop appears is ``None`` (it is zero).
    """
    (u, su), (w, sw) = edge
    if d.partner[(u, su)] != (w, sw):
        raise ValidationError(f"{edge} is not an edge of the diagram")
    p, q = (u, (su + 1) % 3), (u, (su + 2) % 3)
    r, s = (w, (sw + 1) % 3), (w, (sw + 2) % 3)
    legs = (p, q, r, s)
    rest = [e for e in d.edges if not any(h in legs or h in edge for h in e)]
    terms = []
    for lu, lw in (((p, q), (r, s)), ((p, r), (s, q)), ((p, s), (q, r))):
        newpos = {lu[0]: (u, 1), lu[1]: (u, 2), lw[0]: (w, 1), lw[1]: (w, 2)}
        edges = list(rest) + [((u, 0), (w, 0))]
        done = set()
        loop = False
        for leg in legs:
            if leg in done:
                continue
            other = d.partner[leg]
            if other in newpos:
                a, b = newpos[leg], newpos[other]
                done.add(other)
            else:
                a, b = newpos[leg], other
            done.add(leg)
            if a[0] == b[0]:
                loop = True
            edges.append((a, b))
        terms.append(None if loop else JacobiDiagram(d.n_vertices, tuple(edges)))
    return terms


def ihx_relations(degree, cap=None):
    """One relation vector ``I + H + X`` per (class, edge) pair; duplicates kept."""
    check_degree(degree, cap)
    if degree < 1:
        return []
    return list(_ihx_relations(degree))


@lru_cache(maxsize=None)
def _ihx_relations(degree):
    rels = []
    for cls in enumerate_diagrams(degree, cap=degree):
        d = cls.canonical
        for edge in d.edges:
            v = DiagramVector()
            for t in ihx_terms(d, edge):
                if t is not None:
                    v = v + DiagramVector.from_diagram(t)
            rels.append(v)
    return tuple(rels)


@dataclass(frozen=True)
class BasisPresentation:
    """Basis of ``A_n`` and the coordinates of every generator class.

    ``table`` maps each nonzero class of the degree to its coordinate tuple
    over ``basis``.
    """

    degree: int
    basis: tuple
    table: dict

    @property
    def dimension(self):
        return len(self.basis)

    def coordinates(self, cls):
        try:
            return self.table[cls]
        except KeyError:
            raise ValidationError(f"class {cls.encode()} is not a generator of degree {self.degree}") from None


def relation_matrix(degree, generators):
    """Rows of IHX relations over the given generator order."""
    index = {c: i for i, c in enumerate(generators)}
    rows = []
    for rel in ihx_relations(degree, cap=degree):
        row = [0] * len(generators)
        for c, x in rel.items():
            row[index[c]] = x
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _compute_basis(degree):
    gens = [c for c in enumerate_diagrams(degree, cap=degree) if not c.zero_flag]
    echelon, pivots = reduced_echelon(relation_matrix(degree, gens), len(gens))
    free = [j for j in range(len(gens)) if j not in set(pivots)]
    table = {}
    for pos, j in enumerate(free):
        table[gens[j]] = tuple(Fraction(int(pos == k)) for k in range(len(free)))
    for row, c in zip(echelon, pivots):
        a = row[c]
        table[gens[c]] = tuple(Fraction(-row[j], a) for j in free)
    return BasisPresentation(degree, tuple(gens[j] for j in free), table)


def compute_basis(degree, cap=None):
    """Basis of the quotient by exact elimination, pivots in canonical class order."""
    check_degree(degree, cap)
    return _compute_basis(degree)


def reduce(v, b):
    """Coordinates of a :class:`DiagramVector` (or a single class) over ``b``."""
    if isinstance(v, DiagramClass):
        v = DiagramVector({v: 1})
    deg = v.degree
    if deg is not None and deg != b.degree:
        raise ValidationError(f"degree mismatch: vector has degree {deg}, basis has degree {b.degree}")
    out = [Fraction(0)] * b.dimension
    for cls, x in v.items():
        for k, y in enumerate(b.coordinates(cls)):
            if y:
                out[k] += x * y
    return tuple(out)


def from_coordinates(coords, b):
    return DiagramVector({c: x for c, x in zip(b.basis, coords) if x})
