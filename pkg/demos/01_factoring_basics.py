"""Factor a few integer polynomials and inspect the results.

Run:  python demos/01_factoring_basics.py
"""
from polyfactor import IntPolynomial, factor, gen_swinnerton_dyer

# A polynomial is a low-to-high coefficient vector: x^2 - 1 is [-1, 0, 1].
p = IntPolynomial([-1, 0, 1])
res = factor(p)
print(f"{p}  ->  " + "  *  ".join(f"({g})^{m}" if m > 1 else f"({g})" for g, m in res.factors))
print(f"  certificate (exact re-multiplication): {res.certificate}")

# A constructed product: (x^2 - 2)(x^2 + 1). Neither factor has rational
# roots, so this exercises the conjugate-pair machinery.
p = IntPolynomial([-2, 0, -1, 0, 1])
res = factor(p)
print(f"\n{p}  ->  " + "  *  ".join(f"({g})" for g, _ in res.factors))

# Repeated factors go through the square-free decomposition first.
p = IntPolynomial([2, -3, 0, 1])  # (x - 1)^2 (x + 2)
res = factor(p)
print(f"\n{p}  ->  " + "  *  ".join(f"({g})^{m}" if m > 1 else f"({g})" for g, m in res.factors))

# Non-monic and non-primitive inputs are normalized automatically.
p = IntPolynomial([2, 6, 4])  # 2 (2x + 1)(x + 1) ... content 2
res = factor(p)
print(f"\n{p}  ->  content {res.content},  " + "  *  ".join(f"({g})" for g, _ in res.factors))

# The adversarial family: every root is a sum of square roots of primes.
# Subset sums of the roots hit integers all over the place, so the search
# stage reports many candidates, yet none survives exact verification.
f3 = gen_swinnerton_dyer(3)
res = factor(f3)
print(f"\n{f3}")
print(
    f"  irreducible: {res.irreducible}  "
    f"(candidates seen: {res.stats.candidates}, all rejected: {res.stats.rejected})"
)
