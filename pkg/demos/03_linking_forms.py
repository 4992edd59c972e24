"""Classifying a few linking forms, odd and 2-primary."""

from fractions import Fraction as F

from kkt import CyclicBlock, LinkingForm, classify_odd, classify_two, isomorphic, n_of_p, primary_decompose
from kkt.linking_forms import blocks_form, brute_force_isomorphic, stabilized

print("n(p) for the first odd primes:", {p: n_of_p(p) for p in (3, 5, 7, 11, 13, 17, 23)})

f = LinkingForm((9,), ((F(2, 9),),))
print("Z/9 with self-linking 2/9 ->", [str(b) for b in classify_odd(f, 3)])

g = blocks_form([CyclicBlock(5, 1, 2)] * 2)
print("two copies of [5, 2] normalise to", [str(b) for b in classify_odd(g, 5)])

h = LinkingForm((6,), ((F(1, 6),),))
print("Z/6 splits into", {p: part.gram for p, part in primary_decompose(h).items()})

hyp = LinkingForm((4, 4), ((0, F(1, 4)), (F(1, 4), 0)))
res = classify_two(hyp)
print("the hyperbolic form on Z/4 + Z/4 needs", res.stabilizers_added, "stabiliser and gives", res)
ok = brute_force_isomorphic(stabilized(hyp, res.stabilizer_exponents), blocks_form(res.blocks))
print("brute force confirms the stabilised isomorphism:", ok)

print("[3,1] vs [3,2] isomorphic?", isomorphic(CyclicBlock(3, 1, 1).form(), CyclicBlock(3, 1, 2).form()))
