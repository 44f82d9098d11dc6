"""Finite fields and projective points.

Field elements are small integers: the base-p digits of the integer are the
coefficients of the element as a polynomial in the generator, lowest first.
"""

import numpy as np

from prmcodes.galois import gf, parse_field
from prmcodes.geometry import chart_points, enumerate_projective, projective_size

# %% GF(4): modulus x^2+x+1, alpha = 2, beta = alpha^2 = 3
F = gf(4)
print(F, "primitive element:", F.primitive)
print("alpha * beta =", F.mul(2, 3))
print("alpha^3 =", F.pow(2, 3))
print("1 / beta =", F.inv(3))

# elementwise operations on arrays go through the lookup tables
a = np.array([0, 1, 2, 3], dtype=np.uint8)
print("a + 1 =", F.vadd(a, np.ones(4, dtype=np.uint8)))
print("a * a =", F.vmul(a, a))

# %% other fields, including an explicit modulus
print(parse_field("2^3"), parse_field("3^2"), parse_field("2^4"))

# %% points of P^3 over GF(4), grouped into affine charts
P = enumerate_projective(3, F)
print("|P^3(GF(4))| =", len(P), "=", projective_size(3, 4))
for i in range(4):
    sl = P.chart_slice(i)
    print(f"chart {i}: {sl.stop - sl.start} points, first {P[sl.start]}, last {P[sl.stop - 1]}")

# chart 1 is the affine plane (1:w2:w3) placed after (0:1:...)
print("chart 1 as affine points:", list(chart_points(3, F, 1))[:5], "...")
