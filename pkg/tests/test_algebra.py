import random
from fractions import Fraction

import pytest
import sympy

from helpers import so_structure_constants, weight
from kkt.algebra import (
    DiagramVector,
    compute_basis,
    from_coordinates,
    ihx_relations,
    ihx_terms,
    reduce,
    relation_matrix,
)
from kkt.diagrams import THETA, canonicalize, enumerate_diagrams, flip_orientation
from kkt.errors import ResourceLimitError, ValidationError

SO3 = so_structure_constants(3)
SO5 = so_structure_constants(5)


def test_known_dimensions():
    assert [compute_basis(n).dimension for n in range(4)] == [1, 1, 2, 3]


@pytest.mark.slow
def test_dimension_degree_four():
    assert compute_basis(4).dimension == 6


def test_degree_one_basis_is_theta():
    b = compute_basis(1)
    assert [c.canonical for c in b.basis] == [THETA]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimension_against_sympy_shuffled(n):
    gens = [c for c in enumerate_diagrams(n) if not c.zero_flag]
    rng = random.Random(n)
    shuffled = gens[:]
    rng.shuffle(shuffled)
    rows = relation_matrix(n, shuffled)
    r = sympy.Matrix(rows).rank() if rows else 0
    assert len(shuffled) - r == compute_basis(n).dimension


@pytest.mark.parametrize("f", [SO3, SO5], ids=["so3", "so5"])
def test_as_sign_matches_weight_system(f):
    for n in range(1, 3):
        for c in enumerate_diagrams(n):
            for v in range(c.canonical.n_vertices):
                assert weight(flip_orientation(c.canonical, v), f) == -weight(c.canonical, f)


@pytest.mark.parametrize("f", [SO3, SO5], ids=["so3", "so5"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ihx_relations_killed_by_weight_system(f, n):
    for rel in ihx_relations(n):
        assert sum(x * weight(c.canonical, f) for c, x in rel.items()) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reduction_respects_weight_system(n):
    # a weight system is a functional on A_n, so it must factor through the basis
    b = compute_basis(n)
    wb = [weight(c.canonical, SO5) for c in b.basis]
    for c in enumerate_diagrams(n):
        if c.zero_flag:
            assert weight(c.canonical, SO5) == 0
            continue
        coords = reduce(c, b)
        assert sum(x * w for x, w in zip(coords, wb)) == weight(c.canonical, SO5)


def test_ihx_terms_at_theta_edge():
    terms = ihx_terms(THETA, THETA.edges[0])
    assert len(terms) == 3
    # one rewiring makes a simple loop; the other two are theta with opposite orientations
    assert sum(t is None for t in terms) == 1
    total = DiagramVector()
    for t in terms:
        if t is not None:
            total = total + DiagramVector.from_diagram(t)
    assert not total


def test_ihx_terms_rejects_non_edge():
    with pytest.raises(ValidationError):
        ihx_terms(THETA, ((0, 0), (1, 1)))


def test_diagram_vector_arithmetic():
    cls, _ = canonicalize(THETA)
    v = DiagramVector.from_diagram(THETA, 3)
    w = DiagramVector.from_diagram(flip_orientation(THETA, 0), 3)
    assert (v + w) == DiagramVector()
    assert not (v + w)
    assert v.coefficient(cls) == 3
    assert (2 * v - v) == v
    assert (-v).coefficient(cls) == -3
    assert len(v) == 1 and v.degree == 1


def test_zero_flag_classes_dropped():
    flagged = next(c for c in enumerate_diagrams(3) if c.zero_flag)
    assert not DiagramVector.from_diagram(flagged.canonical)


def test_reduce_round_trip():
    b = compute_basis(2)
    for c in b.basis:
        coords = reduce(c, b)
        assert from_coordinates(coords, b) == DiagramVector({c: 1})


def test_reduce_degree_mismatch():
    with pytest.raises(ValidationError):
        reduce(DiagramVector.from_diagram(THETA), compute_basis(2))


def test_basis_cap():
    with pytest.raises(ResourceLimitError):
        compute_basis(5)
