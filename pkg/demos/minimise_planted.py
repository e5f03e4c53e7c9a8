"""Hide a minimal model behind planted levels, then recover it.

Run: python demos/minimise_planted.py
"""
from g1min import generate_instance, invariants, minimise_global, minimise_local
from g1min.arith import valuation

A, B = -1, 1  # y^2 = x^3 - x + 1

for degree in (1, 2, 3, 4):
    phi, rec = generate_instance(A, B, degree, {5: 2, 7: 1}, seed=degree)
    print(f"degree {degree}: input has {len(phi.coeffs)} coefficients, max size {max(abs(c) for c in phi.coeffs)}")
    print(f"  disc = {invariants(phi).disc}")

    cert = minimise_local(phi, 5)
    print(f"  at p=5: v(disc) {' -> '.join(map(str, cert.valuations))}, {cert.status.value}")
    for mv in cert.moves:
        print(f"    {mv.tag:22s} drops v(disc) by {12 * mv.k}")

    gc = minimise_global(phi)
    print(f"  global: disc_final = {gc.delta_final}, disc_min = {gc.delta_min}, certified = {gc.certified}")
    print(f"  final coefficients: {[str(c) for c in gc.final.coeffs]}")
    assert valuation(gc.delta_final, 7) == valuation(rec.delta_min, 7)
    print()
