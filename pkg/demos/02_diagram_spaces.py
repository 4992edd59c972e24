"""Counting Jacobi diagrams and the dimensions of A_n in low degree."""

import time

from kkt import compute_basis, enumerate_diagrams

for n in range(4):
    t = time.perf_counter()
    classes = enumerate_diagrams(n)
    zero = sum(c.zero_flag for c in classes)
    b = compute_basis(n)
    print(
        f"degree {n}: {len(classes)} classes ({zero} killed by AS), "
        f"dim A_{n} = {b.dimension}  [{time.perf_counter() - t:.2f} s]"
    )
    for c in classes:
        mark = " (zero)" if c.zero_flag else ""
        print(f"    {c.encode()}  #Aut = {c.aut}{mark}")

print("\nDegree 4 takes a few seconds:")
t = time.perf_counter()
print(f"dim A_4 = {compute_basis(4).dimension}  [{time.perf_counter() - t:.1f} s]")
