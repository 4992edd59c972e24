"""Realising a rational matrix as a linking matrix in a sum of lens spaces."""

from fractions import Fraction as F

from kkt import linking_matrix_of, realize_linking_matrix
from kkt.lens import pre_correction_matrix

a = [[F(1, 2), F(1, 3)], [F(1, 3), F(-1, 4)]]
r = realize_linking_matrix(a)
print("manifold:      ", r.manifold())
for i, kc in enumerate(r.knot_classes, 1):
    print(f"knot {i} class:  ", " + ".join(f"{c}*{s[0]}[{s[1] + 1}]" for s, c in sorted(kc.items())))
print("before correction:", [[str(x) for x in row] for row in pre_correction_matrix(r)])
print("correction:       ", [[str(x) for x in row] for row in r.correction])
print("linking matrix:   ", [[str(x) for x in row] for row in linking_matrix_of(r)])
