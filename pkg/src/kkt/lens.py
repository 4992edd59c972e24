"""Realising a rational symmetric matrix as a linking matrix in lens spaces.

Diagonal entries ``q/p`` come from a summand ``L(p, -q)`` whose core class
``gamma`` self-links ``q/p``. An off-diagonal entry ``k/d`` with ``d > 1``
comes from a summand ``M(d) = L(d,-1) # L(d,1) # L(d,-1)`` holding classes
``delta(d, k)`` and ``epsilon(d)`` that link ``k/d`` with each other and
trivially with themselves. Integer discrepancies are absorbed by crossing
and framing changes, recorded as an integer ``correction`` matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ConsistencyError, ValidationError
from .rational import frac_mod1, parse_rational


def lens_block_form(p, q):
    """Self-linking of the core generator of ``L(p, -q)``, in ``[0, 1)``."""
    if not isinstance(p, int) or p < 1:
        raise ValidationError(f"lens space order must be a positive integer, got {p!r}")
    if gcd(p, q) != 1:
        raise ValidationError(f"gcd({p}, {q}) != 1")
    return frac_mod1(Fraction(q, p))


def m_block_pair(d, k):
    """``(lk(delta, delta), lk(epsilon, epsilon), lk(delta, epsilon))`` inside ``M(d)``."""
    if not isinstance(d, int) or d < 1:
        raise ValidationError(f"M(d) needs d >= 1, got {d!r}")
    return Fraction(0), Fraction(0), frac_mod1(Fraction(k, d))


@dataclass(frozen=True)
class MBlock:
    """Summand ``M(d)`` serving the pair of knots ``(i, j)``, ``i < j`` (0-based)."""

    i: int
    j: int
    d: int
    k: int


@dataclass(frozen=True)
class LinkingRealization:
    """Symbolic realisation.

    ``knot_classes[i]`` maps generator symbols to integer coefficients:
    ``("gamma", a)`` is the core of ``lens_factors[a]``; ``("delta", b)`` and
    ``("epsilon", b)`` live in ``m_blocks[b]``.
    """

    lens_factors: tuple
    m_blocks: tuple
    knot_classes: tuple
    correction: tuple

    @property
    def size(self):
        return len(self.knot_classes)

    def manifold(self):
        parts = [f"L({p},{-q})" for p, q in self.lens_factors if p != 1]
        parts += [f"M({b.d})" for b in self.m_blocks]
        return " # ".join(parts) if parts else "S^3"

    def to_json(self):
        def sym(s):
            return f"{s[0]}[{s[1] + 1}]"

        return {
            "manifold": self.manifold(),
            "lens_factors": [{"p": p, "q": q} for p, q in self.lens_factors],
            "m_blocks": [{"d": b.d, "k": b.k, "knots": [b.i + 1, b.j + 1]} for b in self.m_blocks],
            "knot_classes": [
                {sym(s): c for s, c in sorted(kc.items())} for kc in self.knot_classes
            ],
            "correction": [[str(x) for x in row] for row in self.correction],
        }


def _pair(r, s, t):
    if s[0] == "gamma" and t[0] == "gamma":
        if s[1] != t[1]:
            return Fraction(0)
        return lens_block_form(*r.lens_factors[s[1]])
    if {s[0], t[0]} <= {"delta", "epsilon"} and s[1] == t[1]:
        b = r.m_blocks[s[1]]
        self_d, self_e, cross = m_block_pair(b.d, b.k)
        if s[0] != t[0]:
            return cross
        return self_d if s[0] == "delta" else self_e
    return Fraction(0)


def _check_symbol(r, s):
    kind = s[0] if isinstance(s, tuple) and len(s) == 2 else None
    limit = {"gamma": len(r.lens_factors), "delta": len(r.m_blocks), "epsilon": len(r.m_blocks)}.get(kind)
    if limit is None or not isinstance(s[1], int) or not (0 <= s[1] < limit):
        raise ValidationError(f"knot class refers to unknown generator {s!r}")


def pre_correction_matrix(r):
    """Bilinear expansion of the knot classes, before the integer correction."""
    n = r.size
    for kc in r.knot_classes:
        for s in kc:
            _check_symbol(r, s)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            total = Fraction(0)
            for s, a in r.knot_classes[i].items():
                for t, b in r.knot_classes[j].items():
                    if a and b:
                        total += a * b * _pair(r, s, t)
            out[i][j] = total
    return out


def linking_matrix_of(r):
    """Linking matrix of the realised framed link."""
    pre = pre_correction_matrix(r)
    n = r.size
    if len(r.correction) != n or any(len(row) != n for row in r.correction):
        raise ValidationError(f"correction must be {n} x {n}")
    return tuple(tuple(pre[i][j] + r.correction[i][j] for j in range(n)) for i in range(n))


def _square_matrix(a):
    rows = [list(r) for r in a]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValidationError("matrix must be square")
    return [[parse_rational(x, f"a[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]


def realize_linking_matrix(a):
    """Build a :class:`LinkingRealization` whose linking matrix is ``a``."""
    a = _square_matrix(a)
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValidationError(f"matrix is not symmetric at ({i + 1}, {j + 1})")
    lens = tuple((a[i][i].denominator, a[i][i].numerator) for i in range(n))
    classes = [{("gamma", i): 1} for i in range(n)]
    blocks = []
    for i in range(n):
        for j in range(i + 1, n):
            x = a[i][j]
            if x.denominator > 1:
                b = len(blocks)
                blocks.append(MBlock(i, j, x.denominator, x.numerator))
                classes[i][("delta", b)] = 1
                classes[j][("epsilon", b)] = 1
    r = LinkingRealization(lens, tuple(blocks), tuple(classes), ())
    pre = pre_correction_matrix(r)
    correction = []
    for i in range(n):
        row = []
        for j in range(n):
            c = a[i][j] - pre[i][j]
            if c.denominator != 1:
                raise ConsistencyError(f"correction entry ({i + 1}, {j + 1}) = {c} is not an integer")
            row.append(Fraction(c))
        correction.append(tuple(row))
    r = LinkingRealization(lens, tuple(blocks), tuple(classes), tuple(correction))
    if linking_matrix_of(r) != tuple(map(tuple, a)):
        raise ConsistencyError("realised linking matrix does not reproduce the input")
    return r


def parse_matrix_text(text):
    """Read ``n`` then ``n`` rows of ``p/q`` entries (whitespace separated, ``#`` comments)."""
    lines = []
    for num, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((num, body.split()))
    if not lines:
        raise ValidationError("matrix file is empty")
    num, first = lines[0]
    if len(first) != 1:
        raise ValidationError(f"line {num}: expected the matrix size n alone")
    try:
        n = int(first[0])
    except ValueError:
        raise ValidationError(f"line {num}: size {first[0]!r} is not an integer") from None
    if n < 0:
        raise ValidationError(f"line {num}: size must be non-negative")
    rows = lines[1:]
    if len(rows) != n:
        raise ValidationError(f"expected {n} matrix rows, found {len(rows)}")
    out = []
    for num, toks in rows:
        if len(toks) != n:
            raise ValidationError(f"line {num}: expected {n} entries, found {len(toks)}")
        out.append([parse_rational(t, f"line {num}, entry {c + 1}") for c, t in enumerate(toks)])
    return out
