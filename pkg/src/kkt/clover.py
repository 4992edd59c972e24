"""Combinatorial data of a rational generalised clover.

Slot ``j`` of piece ``i`` stands for the basis vector ``a^i_j`` of the
piece's Lagrangian, and the curve ``z^i_j`` is dual to it. All indices in
this module are 1-based to match that convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .errors import ValidationError
from .rational import parse_rational


def _perm_parity(seq):
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class TrilinearForm:
    """Antisymmetric trilinear form on a ``genus``-dimensional space.

    ``values`` holds the entries on strictly increasing 1-based triples.
    """

    genus: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValidationError(f"genus must be a non-negative integer, got {self.genus!r}")
        clean = {}
        for triple, v in self.values.items():
            t = tuple(triple)
            if len(t) != 3 or not all(isinstance(x, int) for x in t):
                raise ValidationError(f"triple {triple!r}: expected three integers")
            if not (t[0] < t[1] < t[2]):
                raise ValidationError(f"triple {list(t)}: indices must be strictly increasing")
            if t[0] < 1 or t[2] > self.genus:
                raise ValidationError(f"triple {list(t)}: index out of range 1..{self.genus}")
            v = parse_rational(v, f"form value at {list(t)}")
            if v:
                clean[t] = v
        object.__setattr__(self, "values", clean)

    def __call__(self, a, b, c):
        if a == b or b == c or a == c:
            return Fraction(0)
        t = (a, b, c)
        v = self.values.get(tuple(sorted(t)))
        if v is None:
            return Fraction(0)
        return v * _perm_parity(t)

    def __hash__(self):
        return hash((self.genus, tuple(sorted(self.values.items()))))

    def is_zero(self):
        return not self.values

    def scaled(self, t):
        t = Fraction(t)
        return TrilinearForm(self.genus, {k: t * v for k, v in self.values.items()})

    def __add__(self, other):
        if other.genus != self.genus:
            raise ValidationError("cannot add forms of different genus")
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, Fraction(0)) + v
        return TrilinearForm(self.genus, vals)

    def reindexed(self, perm):
        """Form ``F'`` with ``F'(x_{perm(a)}, ...) = F(x_a, ...)``; ``perm`` maps 1..g to 1..g."""
        vals = {}
        for (a, b, c), v in self.values.items():
            t = (perm[a], perm[b], perm[c])
            vals[tuple(sorted(t))] = v * _perm_parity(t)
        return TrilinearForm(self.genus, vals)

    def nonzero_entries(self):
        """All ordered triples with nonzero value, as ``((a, b, c), value)``."""
        out = []
        for t, v in self.values.items():
            for p in permutations(t):
                out.append((p, v * _perm_parity(p)))
        out.sort()
        return out

    def to_json(self):
        return [{"triple": list(t), "value": str(v)} for t, v in sorted(self.values.items())]

    @classmethod
    def from_json(cls, genus, entries, where="form"):
        vals = {}
        for k, e in enumerate(entries or []):
            if not isinstance(e, dict) or "triple" not in e or "value" not in e:
                raise ValidationError(f"{where}[{k}]: expected {{triple, value}}")
            t = e["triple"]
            if not isinstance(t, (list, tuple)) or len(t) != 3:
                raise ValidationError(f"{where}[{k}]: triple must have three entries")
            t = tuple(t)
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
                raise ValidationError(f"{where}[{k}]: triple entries must be integers")
            if not (t[0] < t[1] < t[2]):
                raise ValidationError(f"{where}[{k}]: triple {list(t)} is not strictly increasing")
            if t in vals:
                raise ValidationError(f"{where}[{k}]: triple {list(t)} given twice")
            vals[t] = parse_rational(e["value"], f"{where}[{k}].value")
        try:
            return cls(genus, vals)
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}") from None


def _matrix(rows, nr, nc, where):
    if not isinstance(rows, (list, tuple)) or len(rows) != nr:
        raise ValidationError(f"{where}: expected {nr} rows")
    out = []
    for a, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != nc:
            raise ValidationError(f"{where}: row {a + 1} must have {nc} entries")
        out.append(tuple(parse_rational(x, f"{where}[{a + 1}][{b + 1}]") for b, x in enumerate(row)))
    return tuple(out)


def _transpose(m):
    return tuple(zip(*m)) if m else ()


@dataclass(frozen=True)
class CloverData:
    """``k`` pieces with their forms, plus cross-linking matrices.

    ``linking[(i, j)]`` for ``i < j`` is the ``g_i x g_j`` matrix of
    ``lk(z^i_a, z^j_b)``. Pairs that are not given link trivially.
    """

    forms: tuple
    linking: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        k = len(self.forms)
        clean = {}
        for key, m in self.linking.items():
            i, j = key
            if not (1 <= i <= k and 1 <= j <= k) or i == j:
                raise ValidationError(f"linking pair ({i}, {j}) out of range for {k} pieces")
            gi, gj = self.forms[i - 1].genus, self.forms[j - 1].genus
            m = _matrix(m, gi, gj, f"linking ({i}, {j})")
            if i > j:
                i, j, m = j, i, _transpose(m)
                if (i, j) in clean and clean[(i, j)] != m:
                    raise ValidationError(f"linking ({j}, {i}) is not the transpose of linking ({i}, {j})")
            elif (i, j) in clean and clean[(i, j)] != m:
                raise ValidationError(f"linking ({j}, {i}) is not the transpose of linking ({i}, {j})")
            clean[(i, j)] = m
        object.__setattr__(self, "linking", clean)

    @property
    def k(self):
        return len(self.forms)

    @property
    def genera(self):
        return tuple(f.genus for f in self.forms)

    def link(self, i, j):
        """Matrix ``lk(z^i_a, z^j_b)`` for ``i != j`` (1-based pieces)."""
        if i < j:
            m = self.linking.get((i, j))
            if m is None:
                return tuple((Fraction(0),) * self.forms[j - 1].genus for _ in range(self.forms[i - 1].genus))
            return m
        return _transpose(self.link(j, i)) if self.forms[i - 1].genus else ()

    def __hash__(self):
        return hash((self.forms, tuple(sorted(self.linking.items()))))

    def permuted(self, perm):
        """Clover whose piece ``perm[i]`` is the old piece ``i`` (1-based dict or list)."""
        k = self.k
        inv = {perm[i]: i for i in range(1, k + 1)}
        forms = tuple(self.forms[inv[new] - 1] for new in range(1, k + 1))
        linking = {(perm[i], perm[j]): m for (i, j), m in self.linking.items()}
        return CloverData(forms, linking)

    def to_json(self):
        return {
            "pieces": [{"genus": f.genus, "form": f.to_json()} for f in self.forms],
            "linking": [
                {"i": i, "j": j, "matrix": [[str(x) for x in row] for row in m]}
                for (i, j), m in sorted(self.linking.items())
            ],
        }

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "pieces" not in doc:
            raise ValidationError("clover: expected a mapping with a 'pieces' list")
        pieces = doc["pieces"]
        if not isinstance(pieces, list):
            raise ValidationError("clover: 'pieces' must be a list")
        forms = []
        for i, p in enumerate(pieces, 1):
            if not isinstance(p, dict) or "genus" not in p:
                raise ValidationError(f"pieces[{i}]: expected {{genus, form}}")
            g = p["genus"]
            if not isinstance(g, int) or isinstance(g, bool) or g < 0:
                raise ValidationError(f"pieces[{i}].genus: expected a non-negative integer")
            forms.append(TrilinearForm.from_json(g, p.get("form", []), f"pieces[{i}].form"))
        linking = {}
        for n, entry in enumerate(doc.get("linking", []) or []):
            if not isinstance(entry, dict) or not {"i", "j", "matrix"} <= set(entry):
                raise ValidationError(f"linking[{n}]: expected {{i, j, matrix}}")
            i, j = entry["i"], entry["j"]
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
                raise ValidationError(f"linking[{n}]: i and j must be integers")
            if (i, j) in linking:
                raise ValidationError(f"linking[{n}]: pair ({i}, {j}) given twice")
            linking[(i, j)] = entry["matrix"]
        return cls(tuple(forms), linking)


def validate(c):
    """Re-check every invariant of a clover; raises :class:`ValidationError`."""
    CloverData(tuple(TrilinearForm(f.genus, f.values) for f in c.forms), dict(c.linking))


@dataclass(frozen=True)
class FramingBook:
    """Pontryagin-class bookkeeping: ``p1`` of the base and per-piece increments."""

    p1_base: int
    increments: tuple

    def __post_init__(self):
        object.__setattr__(self, "increments", tuple(self.increments))
        for x in (self.p1_base, *self.increments):
            if not isinstance(x, int):
                raise ValidationError(f"framing data must be integers, got {x!r}")


def p1_of_subset(f, subset):
    """``p1`` after replacing the pieces in ``subset`` (1-based)."""
    total = f.p1_base
    for i in subset:
        if not (1 <= i <= len(f.increments)):
            raise ValidationError(f"piece index {i} out of range 1..{len(f.increments)}")
        total += f.increments[i - 1]
    return total


def alternating_sum(values, k):
    """``sum over J of (-1)^|J| values[J]`` over all subsets J of {1..k}.

    ``values`` is keyed by frozensets (any iterable key is accepted).
    """
    vals = {frozenset(key): Fraction(v) for key, v in values.items()}
    total = Fraction(0)
    for r in range(k + 1):
        for J in combinations(range(1, k + 1), r):
            J = frozenset(J)
            if J not in vals:
                raise ValidationError(f"missing value for subset {sorted(J)}")
            total += (-1) ** r * vals[J]
    return total
