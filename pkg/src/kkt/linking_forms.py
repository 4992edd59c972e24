"""Nondegenerate Q/Z-valued linking forms on finite abelian groups.

A form is given on ``G = Z/o_1 + ... + Z/o_m`` by the rational Gram matrix of
the standard generators, read modulo 1. Odd primary parts are diagonalised
into blocks ``[p^k, s]`` with ``s`` in ``{1, n(p)}`` and normalised so that
each exponent carries at most one ``n(p)``; this is a complete invariant.
The 2-primary part is diagonalised into blocks ``A^k(n)`` after adding
stabilising copies of ``A^k(1)`` where needed; isomorphism at ``p = 2`` is
only decided up to the known relations, with brute force on small groups.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod

from .errors import UndecidedError, ValidationError
from .modular import factorize, legendre, n_of_p, prime_power, sqrt_mod_prime_power, two_adic_class
from .rational import frac_mod1, parse_rational

BRUTE_FORCE_LIMIT = 4096
REWRITE_LIMIT = 5000
RELATION_SEARCH_MAX_K = 4


@dataclass(frozen=True)
class LinkingForm:
    orders: tuple
    gram: tuple

    def __post_init__(self):
        orders = tuple(self.orders)
        m = len(orders)
        for i, o in enumerate(orders):
            if not isinstance(o, int) or isinstance(o, bool) or o < 2:
                raise ValidationError(f"orders[{i}]: expected an integer >= 2, got {o!r}")
        rows = tuple(self.gram)
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValidationError(f"gram must be {m} x {m}")
        gram = tuple(tuple(frac_mod1(parse_rational(x, f"gram[{i}][{j}]")) for j, x in enumerate(r)) for i, r in enumerate(rows))
        for i in range(m):
            for j in range(m):
                if gram[i][j] != gram[j][i]:
                    raise ValidationError(f"gram is not symmetric mod 1 at ({i}, {j})")
                if (orders[i] * gram[i][j]).denominator != 1:
                    raise ValidationError(
                        f"gram[{i}][{j}] = {gram[i][j]} is not defined on a generator of order {orders[i]}"
                    )
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def size(self):
        return prod(self.orders)

    def pair(self, x, y):
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                row = self.gram[i]
                for j, b in enumerate(y):
                    if b:
                        total += a * b * row[j]
        return frac_mod1(total)

    def elements(self):
        return product(*(range(o) for o in self.orders))

    def order_of(self, x):
        o = 1
        for a, n in zip(x, self.orders):
            o = o * (n // gcd(a, n)) // gcd(o, n // gcd(a, n))
        return o

    def to_json(self):
        return {"orders": list(self.orders), "gram": [[str(x) for x in r] for r in self.gram]}

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "orders" not in doc or "gram" not in doc:
            raise ValidationError("linking form: expected {orders, gram}")
        if not isinstance(doc["orders"], list) or not isinstance(doc["gram"], list):
            raise ValidationError("linking form: orders and gram must be lists")
        for r in doc["gram"]:
            if not isinstance(r, list):
                raise ValidationError("linking form: gram rows must be lists")
        return cls(tuple(doc["orders"]), tuple(tuple(r) for r in doc["gram"]))


@dataclass(frozen=True, order=True)
class CyclicBlock:
    """``Z/p^k`` with generator self-linking ``s / p^k``."""

    p: int
    k: int
    s: int

    def form(self):
        n = self.p**self.k
        return LinkingForm((n,), ((Fraction(self.s, n),),))

    def __str__(self):
        if self.p == 2:
            return f"A^{self.k}({self.s})"
        base = f"{self.p}^{self.k}" if self.k > 1 else str(self.p)
        return f"[{base}, {self.s}]"


def orthogonal_sum(*forms):
    orders = []
    m = sum(f.rank for f in forms)
    gram = [[Fraction(0)] * m for _ in range(m)]
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(f.rank):
                gram[off + i][off + j] = f.gram[i][j]
        orders.extend(f.orders)
        off += f.rank
    return LinkingForm(tuple(orders), tuple(map(tuple, gram)))


def blocks_form(blocks):
    return orthogonal_sum(*(b.form() for b in blocks))


def stabilized(f, exponents):
    """``f`` plus one copy of ``A^k(1)`` per entry of ``exponents``."""
    return orthogonal_sum(f, *(CyclicBlock(2, k, 1).form() for k in exponents))


# -- nondegeneracy ---------------------------------------------------------


def _lattice_index(rows, m):
    """Index in ``Z^m`` of the lattice spanned by integer ``rows`` (full rank assumed)."""
    work = [list(r) for r in rows if any(r)]
    det = 1
    for col in range(m):
        while True:
            nz = [r for r in work if r[col]]
            if not nz:
                return 0
            piv = min(nz, key=lambda r: abs(r[col]))
            rest = []
            done = True
            for r in work:
                if r is piv or not r[col]:
                    rest.append(r)
                    continue
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col]:
                    done = False
                rest.append(r2)
            work = rest
            if done:
                break
        det *= abs(piv[col])
        work = [r for r in work if r is not piv and any(r)]
    return det


def nondegenerate(f):
    """Whether the adjoint map ``G -> Hom(G, Q/Z)`` is injective.

    With ``N`` the exponent of ``G`` the adjoint lands in ``(Z/N)^m`` and its
    image is spanned by the rows of ``N * gram``; it is injective exactly when
    the image has ``|G|`` elements.
    """
    m = f.rank
    if m == 0:
        return True
    n = 1
    for o in f.orders:
        n = n * o // gcd(n, o)
    rows = [[int(n * x) for x in r] for r in f.gram]
    rows += [[n * int(i == j) for j in range(m)] for i in range(m)]
    image = n**m // _lattice_index(rows, m)
    return image == f.size


def nondegenerate_brute_force(f):
    """The literal criterion: every ``x`` of order ``k > 1`` pairs to ``1/k`` with some ``y``."""
    elems = list(f.elements())
    for x in elems:
        k = f.order_of(x)
        if k > 1 and not any(f.pair(x, y) == Fraction(1, k) for y in elems):
            return False
    return True


def _require_nondegenerate(f):
    if not nondegenerate(f):
        raise ValidationError("linking form is degenerate")


# -- primary decomposition -------------------------------------------------


def primary_decompose(f):
    """The ``p``-components, each on generators ``(o_i / p^e_i) g_i``."""
    _require_nondegenerate(f)
    primes = sorted({p for o in f.orders for p in factorize(o)})
    out = {}
    for p in primes:
        idx, mult, orders = [], [], []
        for i, o in enumerate(f.orders):
            e = factorize(o).get(p, 0)
            if e:
                idx.append(i)
                mult.append(o // p**e)
                orders.append(p**e)
        gram = tuple(
            tuple(frac_mod1(mult[a] * mult[b] * f.gram[i][j]) for b, j in enumerate(idx))
            for a, i in enumerate(idx)
        )
        out[p] = LinkingForm(tuple(orders), gram)
    return out


def _prime_of_group(f):
    ps = set()
    for o in f.orders:
        pk = prime_power(o)
        if pk is None:
            raise ValidationError(f"order {o} is not a prime power")
        ps.add(pk[0])
    if len(ps) > 1:
        raise ValidationError(f"group mixes primes {sorted(ps)}")
    return ps.pop() if ps else None


# -- diagonalisation -------------------------------------------------------


class _Work:
    """Ambient group with a working basis of a nondegenerate summand."""

    def __init__(self, f):
        self.orders = list(f.orders)
        self.gram = [list(r) for r in f.gram]
        m = len(self.orders)
        self.basis = [([int(i == j) for j in range(m)], o) for i, o in enumerate(self.orders)]

    def pair(self, x, y):
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        total += a * b * self.gram[i][j]
        return total

    def scaled(self, x, y, n):
        v = n * self.pair(x, y)
        if v.denominator != 1:
            raise AssertionError("pairing not integral at the maximal order")
        return int(v) % n

    def combine(self, coeffs):
        m = len(self.orders)
        v = [0] * m
        for c, (b, _) in zip(coeffs, self.basis):
            if c:
                for i in range(m):
                    v[i] += c * b[i]
        return [a % o for a, o in zip(v, self.orders)]

    def add_stabilizer(self, n):
        for b, _ in self.basis:
            b.append(0)
        for r in self.gram:
            r.append(Fraction(0))
        self.orders.append(n)
        self.gram.append([Fraction(0)] * (len(self.orders) - 1) + [Fraction(1, n)])
        e = [0] * len(self.orders)
        e[-1] = 1
        self.basis.append((e, n))

    def split(self, coeffs, j):
        """Split off the cyclic summand spanned by ``sum coeffs[i] * basis[i]``.

        ``basis[j]`` must have the maximal order ``n`` and a unit coefficient;
        the element must have unit scaled self-linking. The remaining basis,
        projected onto the orthogonal complement, replaces the old one.
        """
        n = self.basis[j][1]
        x = self.combine(coeffs)
        u = self.scaled(x, x, n)
        uinv = pow(u, -1, n)
        rest = []
        for i, (b, o) in enumerate(self.basis):
            if i == j:
                continue
            a = self.scaled(b, x, n) * uinv % n
            rest.append(([(bi - a * xi) % oi for bi, xi, oi in zip(b, x, self.orders)], o))
        self.basis = rest
        return x, u, n


def _max_order_indices(work):
    n = max(o for _, o in work.basis)
    return n, [i for i, (_, o) in enumerate(work.basis) if o == n]


def _diagonalize_odd(f, p):
    work = _Work(f)
    out = []
    np_ = n_of_p(p)
    while work.basis:
        n, tops = _max_order_indices(work)
        k = prime_power(n)[1]
        j = next((i for i in tops if work.scaled(work.basis[i][0], work.basis[i][0], n) % p), None)
        coeffs = [0] * len(work.basis)
        if j is not None:
            coeffs[j] = 1
        else:
            j = tops[0]
            bj = work.basis[j][0]
            i = next((i for i in range(len(work.basis)) if work.scaled(bj, work.basis[i][0], n) % p), None)
            if i is None:
                raise ValidationError("linking form is degenerate")
            coeffs[j] = coeffs[i] = 1
        x, u, n = work.split(coeffs, j)
        s = 1 if legendre(u, p) == 1 else np_
        # rescale so the generator links itself exactly s / p^k
        r = sqrt_mod_prime_power(s * pow(u, -1, n) % n, p, k)
        out.append((CyclicBlock(p, k, s), [r * a % o for a, o in zip(x, work.orders)]))
    return out


def _normalize_odd(blocks, p):
    np_ = n_of_p(p)
    by_k = Counter()
    ranks = Counter()
    for b in blocks:
        ranks[b.k] += 1
        if b.s == np_:
            by_k[b.k] += 1
    out = []
    for k in sorted(ranks):
        odd = by_k[k] % 2
        out += [CyclicBlock(p, k, 1)] * (ranks[k] - odd) + [CyclicBlock(p, k, np_)] * odd
    return sorted(out)


def diagonalize_odd(f, p):
    """Unnormalised blocks with their generators (coordinates in ``f``)."""
    if p == 2 or prime_power(p) != (p, 1):
        raise ValidationError(f"classify_odd needs an odd prime, got {p!r}")
    q = _prime_of_group(f)
    if q is not None and q != p:
        raise ValidationError(f"group is {q}-primary, not {p}-primary")
    _require_nondegenerate(f)
    return _diagonalize_odd(f, p)


def classify_odd(f, p):
    """Normal form ``[p^k, s]`` blocks of a nondegenerate form on a ``p``-group."""
    return _normalize_odd([b for b, _ in diagonalize_odd(f, p)], p)


class TwoPrimaryResult:
    """Stabilising exponents plus blocks; unpacks as ``(count, blocks)``."""

    def __init__(self, stabilizer_exponents, blocks, generators):
        self.stabilizer_exponents = tuple(stabilizer_exponents)
        self.blocks = sorted(blocks)
        self.generators = generators

    @property
    def stabilizers_added(self):
        return len(self.stabilizer_exponents)

    def __iter__(self):
        return iter((self.stabilizers_added, self.blocks))

    def __repr__(self):
        return f"TwoPrimaryResult({self.stabilizers_added}, [{', '.join(map(str, self.blocks))}])"


def classify_two(f):
    """Diagonalise a nondegenerate form on a 2-group, stabilising where needed.

    A maximal-order generator with odd scaled self-linking is split off
    directly. Otherwise pick ``x`` of maximal order ``2^k`` and ``y`` with
    ``2^k lk(x, y) = 1``, add ``z`` spanning ``A^k(1)`` and split off ``x + z``
    and ``y - z``, which are orthogonal with odd self-linkings.
    """
    q = _prime_of_group(f)
    if q is not None and q != 2:
        raise ValidationError(f"group is {q}-primary, not 2-primary")
    _require_nondegenerate(f)
    work = _Work(f)
    stabs = []
    blocks = []
    gens = []

    def emit(res):
        x, u, n = res
        k = n.bit_length() - 1
        blocks.append(CyclicBlock(2, k, two_adic_class(u, k)))
        gens.append(x)

    while work.basis:
        n, tops = _max_order_indices(work)
        j = next((i for i in tops if work.scaled(work.basis[i][0], work.basis[i][0], n) % 2), None)
        if j is not None:
            coeffs = [0] * len(work.basis)
            coeffs[j] = 1
            emit(work.split(coeffs, j))
            continue
        j = tops[0]
        bj = work.basis[j][0]
        i = next((i for i in range(len(work.basis)) if work.scaled(bj, work.basis[i][0], n) % 2), None)
        if i is None:
            raise ValidationError("linking form is degenerate")
        uinv = pow(work.scaled(bj, work.basis[i][0], n), -1, n)
        work.add_stabilizer(n)
        stabs.append(n.bit_length() - 1)
        z = len(work.basis) - 1
        coeffs = [0] * len(work.basis)
        coeffs[j] = coeffs[z] = 1
        emit(work.split(coeffs, j))
        # indices shift down by one past j
        i2, z2 = (i - 1 if i > j else i), z - 1
        coeffs = [0] * len(work.basis)
        coeffs[i2] = uinv
        coeffs[z2] = -1
        emit(work.split(coeffs, z2))
    return TwoPrimaryResult(stabs, blocks, gens)


# -- brute force -----------------------------------------------------------


def find_isometry(f, g):
    """An isomorphism ``G_f -> G_g`` preserving the forms, as generator images, or ``None``.

    Exhaustive backtracking over images of the generators of ``f``; the final
    map is checked to be bijective.
    """
    if f.size != g.size:
        return None
    elems = list(g.elements())
    m = f.rank
    gm = g.rank
    # pairing of each element of g with each generator of g
    row = {h: tuple(frac_mod1(sum(h[a] * g.gram[a][b] for a in range(gm) if h[a])) for b in range(gm)) for h in elems}

    def gpair(h1, h2):
        return frac_mod1(sum(c * x for c, x in zip(h2, row[h1]) if c))

    def killed(h, o):
        return all((o * a) % n == 0 for a, n in zip(h, g.orders))

    order = sorted(range(m), key=lambda i: -f.orders[i])
    cands = {}
    for i in order:
        o = f.orders[i]
        cands[i] = [h for h in elems if killed(h, o) and gpair(h, h) == f.gram[i][i]]
    image = {}

    def rec(t):
        if t == m:
            return True
        i = order[t]
        for h in cands[i]:
            if all(gpair(h, image[j]) == f.gram[i][j] for j in order[:t]):
                image[i] = h
                if rec(t + 1):
                    return True
        image.pop(i, None)
        return False

    if not rec(0):
        return None
    seen = set()
    for x in f.elements():
        y = tuple(
            sum(c * image[i][b] for i, c in enumerate(x)) % g.orders[b] for b in range(gm)
        )
        if y in seen:
            return None
        seen.add(y)
    return [image[i] for i in range(m)]


def brute_force_isomorphic(f, g):
    return find_isometry(f, g) is not None


# -- relations at p = 2 ----------------------------------------------------


@lru_cache(maxsize=None)
def four_ones_relation(k):
    """Blocks ``(3, a, b, c)`` with ``4 A^k(1) = A^k(3) + A^k(a) + A^k(b) + A^k(c)``.

    Found by search in ``(Z/2^k)^4``: start from ``x = e1 + e2 + e3`` and look
    for three further pairwise orthogonal elements with odd self-linking that
    complete it to a basis.
    """
    if k > RELATION_SEARCH_MAX_K:
        raise UndecidedError(f"four-copy relation not searched beyond k = {RELATION_SEARCH_MAX_K}")
    n = 2**k

    def pair(x, y):
        return sum(a * b for a, b in zip(x, y)) % n

    x1 = (1, 1, 1, 0)
    cands = [v for v in product(range(n), repeat=4) if pair(v, x1) == 0 and pair(v, v) % 2]

    def det_odd(vs):
        # determinant mod 2 of the 4 x 4 matrix
        m = [[a % 2 for a in v] for v in vs]
        for c in range(4):
            r = next((r for r in range(c, 4) if m[r][c]), None)
            if r is None:
                return False
            m[c], m[r] = m[r], m[c]
            for r2 in range(4):
                if r2 != c and m[r2][c]:
                    m[r2] = [(a + b) % 2 for a, b in zip(m[r2], m[c])]
        return True

    for x2 in cands:
        c3 = [v for v in cands if pair(v, x2) == 0]
        for x3 in c3:
            for x4 in c3:
                if pair(x4, x3) == 0 and det_odd([x1, x2, x3, x4]):
                    rest = sorted(two_adic_class(pair(v, v), k) for v in (x2, x3, x4))
                    return (two_adic_class(3, k), *rest)
    raise AssertionError("four-copy relation not found")


def _relation_moves(k):
    one = two_adic_class(1, k)
    m3 = two_adic_class(-3, k)
    moves = [((one, one), (m3, m3))]
    try:
        moves.append(((one,) * 4, tuple(sorted(four_ones_relation(k)))))
    except UndecidedError:
        pass
    return [(tuple(sorted(a)), tuple(sorted(b))) for a, b in moves if sorted(a) != sorted(b)]


def _connected(units_a, units_b, k):
    a, b = tuple(sorted(units_a)), tuple(sorted(units_b))
    if a == b:
        return True
    if len(a) != len(b):
        return False
    moves = _relation_moves(k)
    seen = {a}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        cnt = Counter(cur)
        for lhs, rhs in moves:
            for src, dst in ((lhs, rhs), (rhs, lhs)):
                need = Counter(src)
                if all(cnt[u] >= c for u, c in need.items()):
                    nxt = tuple(sorted((cnt - need + Counter(dst)).elements()))
                    if nxt == b:
                        return True
                    if nxt not in seen:
                        if len(seen) >= REWRITE_LIMIT:
                            return False
                        seen.add(nxt)
                        queue.append(nxt)
    return False


def blocks_related(blocks_a, blocks_b):
    """Whether two 2-primary block lists are linked by the relations, exponent by exponent."""
    ka = Counter((b.k for b in blocks_a))
    kb = Counter((b.k for b in blocks_b))
    if ka != kb:
        return False
    for k in ka:
        ua = [b.s for b in blocks_a if b.k == k]
        ub = [b.s for b in blocks_b if b.k == k]
        if not _connected(ua, ub, k):
            return False
    return True


def stably_equal(res_a, res_b):
    """Whether two :func:`classify_two` results describe stably isomorphic forms.

    Each side is completed with the other's stabilisers before comparing.
    """
    a = list(res_a.blocks) + [CyclicBlock(2, k, 1) for k in res_b.stabilizer_exponents]
    b = list(res_b.blocks) + [CyclicBlock(2, k, 1) for k in res_a.stabilizer_exponents]
    return blocks_related(a, b)


# -- isomorphism -----------------------------------------------------------


def isomorphic(f, g):
    """Decide ``f = g``.

    Exact at odd primes. At ``p = 2``: true when both sides diagonalise without
    stabilisers into related blocks, otherwise brute force on groups of at most
    ``BRUTE_FORCE_LIMIT`` elements, otherwise :class:`UndecidedError`.
    """
    pf, pg = primary_decompose(f), primary_decompose(g)
    if sorted(pf) != sorted(pg):
        return False
    for p in pf:
        if sorted(pf[p].orders) != sorted(pg[p].orders):
            return False
    for p in pf:
        if p == 2:
            continue
        if classify_odd(pf[p], p) != classify_odd(pg[p], p):
            return False
    if 2 not in pf:
        return True
    a, b = classify_two(pf[2]), classify_two(pg[2])
    if not a.stabilizer_exponents and not b.stabilizer_exponents and blocks_related(a.blocks, b.blocks):
        return True
    if pf[2].size <= BRUTE_FORCE_LIMIT:
        return brute_force_isomorphic(pf[2], pg[2])
    raise UndecidedError("2-primary parts not connected by the known relations and too large to search")
