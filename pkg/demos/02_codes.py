"""Projective Reed-Muller codes: parameters, encoding and duality."""

import numpy as np

from prmcodes.codes import dual_check, encode, parameter_table, prm_params, prm_rank
from prmcodes.galois import gf
from prmcodes.monomials import parse_polynomial

# %% PRM_5(3,4): degree-5 forms in X0..X3 evaluated on the 85 points of P^3(GF(4))
spec = prm_params(3, 4, 5)
print(spec.as_dict())
print("dimension from the generator rank:", prm_rank(spec))

# %% encoding a message (k coefficients) and a polynomial
rng = np.random.default_rng(1)
msg = gf(4).random(rng, spec.k)
c = encode(spec, msg)
print("codeword weight:", np.count_nonzero(c), ">= d =", spec.d)

f = parse_polynomial("1*X0^3*X1^2+2*X1^4*X2+3*X3^5", spec.field, 4, offset=0)
print("encode(f) starts with", encode(spec, f)[:12])

# %% the dual of a PRM code is again a PRM code (or one extended by the all-ones word)
for nu in (1, 2, 3, 4):
    rep = dual_check(prm_params(2, 3, nu))
    print(f"PRM_{nu}(2,3):", rep)

# %% parameter tables: dimension and distance, and the chart-wise capacity t0
for row in parameter_table(1)[:5]:
    print(row)
for row in parameter_table(4):
    print(row)
