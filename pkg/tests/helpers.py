"""Random input generators and independent oracles shared by the tests."""

from __future__ import annotations

import random
import string
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, gcd

import numpy as np

from kkt.clover import CloverData, TrilinearForm
from kkt.casson import ComplementaryClover
from kkt.linking_forms import LinkingForm

# -- random data -----------------------------------------------------------


def rand_q(rng, max_den=10, max_num=5):
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def rand_form(rng, genus, max_den=10, density=0.7):
    vals = {}
    for t in combinations(range(1, genus + 1), 3):
        if rng.random() < density:
            vals[t] = rand_q(rng, max_den)
    return TrilinearForm(genus, vals)


def rand_matrix(rng, r, c, max_den=10):
    return [[rand_q(rng, max_den) for _ in range(c)] for _ in range(r)]


def rand_clover(rng, k, gmin=3, gmax=4, max_den=10, link_density=0.8):
    genera = [rng.randint(gmin, gmax) for _ in range(k)]
    forms = [rand_form(rng, g, max_den) for g in genera]
    linking = {}
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            if rng.random() < link_density:
                linking[(i, j)] = rand_matrix(rng, genera[i - 1], genera[j - 1], max_den)
    return CloverData(tuple(forms), linking)


def rand_complementary(rng, gmax=5, max_den=10):
    g = rng.randint(0, gmax)
    return ComplementaryClover(g, rand_form(rng, g, max_den), rand_form(rng, g, max_den))


def rand_linking_form(rng, orders, max_tries=200):
    """A random well-defined form on the given orders; may be degenerate."""
    m = len(orders)
    gram = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            d = gcd(orders[i], orders[j])
            x = Fraction(rng.randrange(d), d)
            gram[i][j] = gram[j][i] = x
    return LinkingForm(tuple(orders), tuple(map(tuple, gram)))


ODD_ORDERS = [3, 5, 7, 9, 11, 13, 15, 21, 25, 27, 45, 49, 63, 75, 81, 99, 105, 121, 125, 135, 147, 165, 175, 189, 195]


def rand_odd_orders(rng, limit=200):
    while True:
        m = rng.randint(1, 3)
        orders = [rng.choice(ODD_ORDERS) for _ in range(m)]
        size = 1
        for o in orders:
            size *= o
        if size <= limit:
            return orders


def rand_nondegenerate(rng, orders_fn, nondeg):
    while True:
        f = rand_linking_form(rng, orders_fn(rng))
        if nondeg(f):
            return f


def random_text(rng, n=40):
    alphabet = string.printable + "{}[]:-/é"
    return "".join(rng.choice(alphabet) for _ in range(n))


# -- oracles ---------------------------------------------------------------


def brute_force_aut(d):
    """Half-edge permutations preserving vertices and edges, by exhaustion."""
    n = d.n_vertices
    edges = {frozenset(e) for e in d.edges}
    edge_mult = {}
    for e in d.edges:
        key = frozenset(e)
        edge_mult[key] = edge_mult.get(key, 0) + 1
    count = 0
    for vp in permutations(range(n)):
        for sps in product(permutations(range(3)), repeat=n):
            ok = True
            for (a, s), (b, t) in d.edges:
                img = frozenset(((vp[a], sps[a][s]), (vp[b], sps[b][t])))
                if img not in edges:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def loopless_matchings(n_vertices):
    """Perfect matchings of ``3 n`` half-edges avoiding pairs inside one vertex."""
    m = n_vertices
    total = 0
    for j in range(m + 1):
        rest = 3 * m - 2 * j
        total += (-1) ** j * factorial(m) // (factorial(j) * factorial(m - j)) * 3**j * double_factorial(rest - 1)
    return total


def so_structure_constants(n):
    """``f_abc = <[E_a, E_b], E_c>`` for ``so(n)`` in the orthonormal basis ``E_ij``."""
    basis = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mats = []
    for i, j in basis:
        m = np.zeros((n, n), dtype=np.int64)
        m[i, j], m[j, i] = 1, -1
        mats.append(m)
    dim = len(mats)
    f = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(dim):
        for b in range(dim):
            br = mats[a] @ mats[b] - mats[b] @ mats[a]
            for c in range(dim):
                # <X, Y> = -tr(XY) / 2 makes E_ij orthonormal
                f[a, b, c] = -np.trace(br @ mats[c]) // 2
    return f


def _letters(k):
    return [chr(ord("a") + i) if i < 26 else chr(ord("A") + i - 26) for i in range(k)]


def contract_network(net):
    """Full contraction of ``[(array, labels), ...]``, merging tensors pairwise."""
    net = list(net)
    while len(net) > 1:
        t1, l1 = net.pop(0)
        j = max(range(len(net)), key=lambda i: len(set(l1) & set(net[i][1])))
        t2, l2 = net.pop(j)
        out = "".join(c for c in l1 + l2 if (l1 + l2).count(c) == 1)
        net.append((np.einsum(f"{l1},{l2}->{out}", t1, t2), out))
    t, labels = net[0]
    if labels:
        t = np.einsum(f"{labels}->", t)
    return t.item() if isinstance(t, np.ndarray) or isinstance(t, np.generic) else t


def weight(d, f):
    """Lie algebra weight: contract ``f`` at each vertex in slot order along edges."""
    if d.n_vertices == 0:
        return 1
    names = _letters(len(d.edges))
    sub = [[None] * 3 for _ in range(d.n_vertices)]
    for e, ((a, s), (b, t)) in enumerate(d.edges):
        sub[a][s] = names[e]
        sub[b][t] = names[e]
    return int(contract_network([(f, "".join(x)) for x in sub]))


def form_tensor(form):
    g = form.genus
    t = np.full((g, g, g), Fraction(0), dtype=object)
    for a in range(1, g + 1):
        for b in range(1, g + 1):
            for c in range(1, g + 1):
                t[a - 1, b - 1, c - 1] = form(a, b, c)
    return t


def einsum_contract(c, d, sigma):
    """Same quantity as ``contract`` via ``numpy.einsum`` on object arrays."""
    names = _letters(6 * d.n_vertices)
    sub = [[None] * 3 for _ in range(d.n_vertices)]
    k = 0
    ops, specs = [], []
    for (a, s), (b, t) in d.edges:
        x, y = names[k], names[k + 1]
        k += 2
        sub[a][s] = x
        sub[b][t] = y
        ops.append(np.array(c.link(sigma[a], sigma[b]), dtype=object))
        specs.append(x + y)
    for v in range(d.n_vertices):
        ops.append(form_tensor(c.forms[sigma[v] - 1]))
        specs.append("".join(sub[v]))
    return Fraction(contract_network(list(zip(ops, specs))))


def is_square_brute(a, m):
    return any(x * x % m == a % m for x in range(m))
