"""Degree one end to end: the theta diagram, its symmetries, and lambda.

Run with ``python3 demos/01_theta_and_casson.py``.
"""

from fractions import Fraction

from kkt import (
    THETA,
    ComplementaryClover,
    TrilinearForm,
    automorphism_count,
    compute_basis,
    lambda_closed_form,
    lambda_via_theta,
    walker_conversions,
    z_n,
)

print("theta is encoded as", THETA.encode())
print("its automorphism group has", automorphism_count(THETA), "elements")

basis = compute_basis(1)
print("A_1 has dimension", basis.dimension, "spanned by", [c.encode() for c in basis.basis])

# Two genus-3 pieces whose forms are both the determinant, in dual bases.
det = TrilinearForm(3, {(1, 2, 3): 1})
cc = ComplementaryClover(3, det, det)
print("lambda from the closed form:   ", lambda_closed_form(cc))
print("lambda from contracting theta: ", lambda_via_theta(cc))
print("Z_1 coordinate on theta:       ", z_n(cc.as_clover(), 1, basis)[0])

# A half-integral variant: rescaling one form rescales lambda.
half = ComplementaryClover(3, det.scaled(Fraction(1, 2)), det)
print("with one form halved, lambda = ", lambda_via_theta(half))

lam, z1 = walker_conversions(4)
print(f"Walker's lambda_W = 4 corresponds to lambda = {lam} and Z_1 = {z1} theta")
