"""Jacobi diagrams: trivalent multigraphs without simple loops.

A diagram on ``2n`` vertices is stored as a set of edges between half-edges
``(vertex, slot)`` with ``slot in {0, 1, 2}``. The vertex orientation is the
cyclic order of the slots, so ``(0, 1, 2)`` is positive at every vertex and
swapping two slots reverses it (one AS move).

Isomorphism classes are keyed by a canonical labelled representative. The
canonical labelling is found by a pruned search over breadth-first relabellings
of each connected component; every relabelling also carries a parity, which is
how AS signs are tracked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial
import os
import re

from .errors import ResourceLimitError, ValidationError

DEFAULT_DEGREE_CAP = 4

_EVEN_PERMS = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def degree_cap():
    """Enumeration cap, overridable through ``KKT_DEGREE_CAP``."""
    raw = os.environ.get("KKT_DEGREE_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"KKT_DEGREE_CAP: not an integer: {raw!r}") from None
    if cap < 0:
        raise ValidationError("KKT_DEGREE_CAP must be non-negative")
    return cap


def check_degree(degree, cap=None):
    if not isinstance(degree, int) or degree < 0:
        raise ValidationError(f"degree must be a non-negative integer, got {degree!r}")
    cap = degree_cap() if cap is None else cap
    if degree > cap:
        raise ResourceLimitError(f"degree {degree} exceeds the configured cap {cap}")


def _norm_edge(a, b):
    a, b = (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class JacobiDiagram:
    """Oriented Jacobi diagram; ``edges`` is normalised to a sorted tuple."""

    n_vertices: int
    edges: tuple

    def __post_init__(self):
        n = self.n_vertices
        if not isinstance(n, int) or n < 0 or n % 2:
            raise ValidationError(f"vertex count must be a non-negative even integer, got {n!r}")
        edges = tuple(sorted(_norm_edge(a, b) for a, b in self.edges))
        seen = set()
        for a, b in edges:
            for v, s in (a, b):
                if not (0 <= v < n) or s not in (0, 1, 2):
                    raise ValidationError(f"vertex {v}: half-edge ({v}, {s}) out of range")
                if (v, s) in seen:
                    raise ValidationError(f"vertex {v}: slot {s} used twice")
                seen.add((v, s))
            if a[0] == b[0]:
                raise ValidationError(f"vertex {a[0]}: simple loop between slots {a[1]} and {b[1]}")
        if len(seen) != 3 * n:
            missing = min(v for v in range(n) for s in range(3) if (v, s) not in seen)
            raise ValidationError(f"vertex {missing}: not trivalent")
        object.__setattr__(self, "edges", edges)

    @property
    def degree(self):
        return self.n_vertices // 2

    @cached_property
    def partner(self):
        p = {}
        for a, b in self.edges:
            p[a] = b
            p[b] = a
        return p

    def encode(self):
        body = ",".join(f"{a[0]}s{a[1]}-{b[0]}s{b[1]}" for a, b in self.edges)
        return f"{self.degree};{body}"

    @classmethod
    def parse(cls, text):
        """Inverse of :meth:`encode`."""
        text = text.strip()
        head, sep, body = text.partition(";")
        if not sep or not head.strip().isdigit():
            raise ValidationError(f"diagram encoding {text!r}: expected 'degree;edges'")
        degree = int(head)
        edges = []
        for k, item in enumerate(filter(None, (x.strip() for x in body.split(",")))):
            m = re.fullmatch(r"(\d+)s([0-2])-(\d+)s([0-2])", item)
            if not m:
                raise ValidationError(f"diagram encoding: malformed edge #{k} {item!r}")
            u, s, v, t = map(int, m.groups())
            edges.append(((u, s), (v, t)))
        return cls(2 * degree, tuple(edges))

    def __str__(self):
        return self.encode()


THETA = JacobiDiagram(2, (((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))))
EMPTY = JacobiDiagram(0, ())


def flip_orientation(d, vertex):
    """Reverse the cyclic order at ``vertex`` by swapping slots 1 and 2."""
    if not isinstance(vertex, int) or not (0 <= vertex < d.n_vertices):
        raise ValidationError(f"vertex index {vertex!r} out of range for {d.n_vertices} vertices")
    swap = {1: 2, 2: 1, 0: 0}

    def f(h):
        return (h[0], swap[h[1]]) if h[0] == vertex else h

    return JacobiDiagram(d.n_vertices, tuple((f(a), f(b)) for a, b in d.edges))


def relabel(d, vertex_perm, slot_perms):
    """Move vertex ``v`` to ``vertex_perm[v]`` and its slot ``s`` to ``slot_perms[v][s]``."""
    def f(h):
        return (vertex_perm[h[0]], slot_perms[h[0]][h[1]])

    return JacobiDiagram(d.n_vertices, tuple((f(a), f(b)) for a, b in d.edges))


def _perm_sign(p):
    return 1 if tuple(p) in _EVEN_PERMS else -1


def components(d):
    """Vertex sets of the connected components, in order of smallest vertex."""
    seen = set()
    out = []
    for v0 in range(d.n_vertices):
        if v0 in seen:
            continue
        comp, stack = [], [v0]
        seen.add(v0)
        while stack:
            v = stack.pop()
            comp.append(v)
            for s in range(3):
                w = d.partner[(v, s)][0]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _component_search(partner, comp):
    """Minimal breadth-first code of one component and all labellings reaching it.

    A labelling is ``(order, slots)``: ``order[i]`` is the old vertex given new
    label ``i`` and ``slots[v][s]`` the old slot of ``v`` that becomes slot ``s``.
    """
    best = [None]
    found = []

    def rec(i, s, label, order, slots, seq):
        while i < len(order):
            v = order[i]
            while s < 3:
                w, t = partner[(v, slots[v][s])]
                if w in label:
                    em = (label[w], slots[w].index(t))
                else:
                    em = (len(order), 0)
                seq.append(em)
                b = best[0]
                if b is not None and seq > b[: len(seq)]:
                    seq.pop()
                    return
                if w not in label:
                    rest = [x for x in range(3) if x != t]
                    for choice in (rest, rest[::-1]):
                        label2 = dict(label)
                        label2[w] = len(order)
                        slots2 = dict(slots)
                        slots2[w] = (t, choice[0], choice[1])
                        rec(i, s + 1, label2, order + [w], slots2, list(seq))
                    return
                s += 1
            i += 1
            s = 0
        b = best[0]
        if b is None or seq < b:
            best[0] = seq
            found.clear()
            found.append((order, slots))
        elif seq == b:
            found.append((order, slots))

    for v in comp:
        for p in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            rec(0, 0, {v: 0}, [v], {v: p}, [])
    return tuple(best[0]), found


@dataclass(frozen=True)
class _Canonical:
    unoriented: JacobiDiagram  # canonical labelling with slot-order orientation
    parity: int  # raw = parity * unoriented in A_n
    aut: int
    reversing: bool


def _canonical_data(d):
    partner = d.partner
    comps = []
    for comp in components(d):
        seq, labs = _component_search(partner, comp)
        signs = {
            _prod(_perm_sign(slots[v]) for v in order) for order, slots in labs
        }
        comps.append((len(comp), seq, labs, len(signs) > 1, len(labs)))
    comps.sort(key=lambda c: (c[0], c[1]))

    edges = set()
    parity = 1
    aut = 1
    reversing = False
    offset = 0
    for size, seq, labs, rev, count in comps:
        for pos, (j, t) in enumerate(seq):
            i, s = divmod(pos, 3)
            edges.add(_norm_edge((offset + i, s), (offset + j, t)))
        order, slots = labs[0]
        parity *= _prod(_perm_sign(slots[v]) for v in order)
        aut *= count
        reversing = reversing or rev
        offset += size
    # isomorphic components can be permuted among themselves
    run = 1
    for a, b in zip(comps, comps[1:]):
        if (a[0], a[1]) == (b[0], b[1]):
            run += 1
            aut *= run
        else:
            run = 1
    return _Canonical(JacobiDiagram(d.n_vertices, tuple(edges)), parity, aut, reversing)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


@dataclass(frozen=True)
class DiagramClass:
    """Isomorphism class of Jacobi diagrams with a fixed oriented representative.

    ``zero_flag`` is set when some automorphism reverses the orientation; such a
    class vanishes in ``A_n`` over the rationals.
    """

    canonical: JacobiDiagram
    zero_flag: bool
    aut: int = field(default=0, compare=False, repr=False)

    @property
    def degree(self):
        return self.canonical.degree

    @property
    def key(self):
        return (self.canonical.n_vertices, self.canonical.edges)

    def encode(self):
        return self.canonical.encode()

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return self.encode() + (" (zero)" if self.zero_flag else "")


@lru_cache(maxsize=None)
def canonicalize(raw):
    """Return ``(cls, sign)`` with ``raw = sign * cls.canonical`` modulo AS."""
    data = _canonical_data(raw)
    base = data.unoriented
    if data.reversing:
        return DiagramClass(base, True, data.aut), 1
    # Of the two AS-orientations of each component keep the one whose code is
    # larger when its first vertex is flipped; this makes theta come out with
    # both vertices counterclockwise.
    sign = data.parity
    rep = base
    for comp in components(base):
        local = [e for e in base.edges if e[0][0] in comp]
        flipped = flip_orientation(base, comp[0])
        if [e for e in flipped.edges if e[0][0] in comp] > local:
            rep = flip_orientation(rep, comp[0])
            sign = -sign
    return DiagramClass(rep, False, data.aut), sign


def automorphism_count(d):
    """Number of half-edge permutations preserving the vertex and edge partitions.

    Orientations are ignored. Accepts a :class:`DiagramClass` or a raw diagram.
    """
    if isinstance(d, DiagramClass):
        if d.aut:
            return d.aut
        d = d.canonical
    return _canonical_data(d).aut


def _labelled_multigraphs(n):
    """Loop-free trivalent labellings covering every isomorphism class on ``n`` vertices.

    Symmetry breaking: untouched vertices are interchangeable, and so are the
    free slots of one vertex, so only the first of each is ever tried.
    """
    used = [0] * n
    edges = []

    def rec(touched):
        v = next((u for u in range(touched) if used[u] < 3), None)
        if v is None:
            if touched == n:
                yield tuple(edges)
                return
            v = touched
            touched += 1
        s = used[v]
        used[v] += 1
        targets = [w for w in range(touched) if w != v and used[w] < 3]
        if touched < n:
            targets.append(touched)
        for w in targets:
            t = used[w]
            used[w] += 1
            edges.append(((v, s), (w, t)))
            yield from rec(max(touched, w + 1))
            edges.pop()
            used[w] -= 1
        used[v] -= 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _enumerate(degree):
    classes = {}
    for edges in _labelled_multigraphs(2 * degree):
        cls, _ = canonicalize(JacobiDiagram(2 * degree, edges))
        classes.setdefault(cls.key, cls)
    return tuple(sorted(classes.values(), key=lambda c: c.key))


def enumerate_diagrams(degree, cap=None):
    """All isomorphism classes of degree-``degree`` Jacobi diagrams, sorted by key.

    Disconnected diagrams are included, and so are classes with ``zero_flag``.
    """
    check_degree(degree, cap)
    return list(_enumerate(degree))


def orbit_size(cls):
    """Number of labelled (vertex- and slot-numbered) diagrams in the class."""
    n = cls.canonical.n_vertices
    return factorial(n) * 6**n // automorphism_count(cls)
