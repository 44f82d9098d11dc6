"""Chart-wise decoding of a projective Reed-Muller code.

Each chart is decoded from its own syndromes after removing the errors
already found on the earlier charts.  The bundled example is a PRM_5(3,4)
word over GF(4) with errors on every chart.
"""

import numpy as np

from prmcodes import fixtures
from prmcodes.codes import prm_params, random_codeword
from prmcodes.decoder import decode_prm, mdd_decode
from prmcodes.monomials import format_polynomial

# %% the bundled example
spec = fixtures.example_spec()
r = fixtures.received()
out = decode_prm(spec, r)
print(out.status)
for c in out.charts:
    print(f"chart {c.chart} ({c.mode}): weight {np.count_nonzero(c.error)}, z = {c.z}")
    for g in c.basis:
        print("    ", format_polynomial(g))
print("error positions:", np.flatnonzero(out.error))

# %% random errors within t0 on each BMS chart are always corrected
rng = np.random.default_rng(3)
c = random_codeword(spec, rng)
e = np.zeros(spec.n, dtype=np.uint8)
for i in range(spec.i0):
    sl = spec.points.chart_slice(i)
    pos = rng.choice(np.arange(sl.start, sl.stop), spec.t0, replace=False)
    e[pos] = spec.field.random(rng, spec.t0, nonzero=True)
res = decode_prm(spec, spec.field.vadd(c, e), bounded=True)
print("corrected:", res.ok and np.array_equal(res.codeword, c))

# %% a small code where nearest-codeword decoding is feasible
small = prm_params(2, 3, 1)
c = random_codeword(small, rng)
r = c.copy()
r[4] = small.field.add(r[4], 1)
print("mdd:", np.array_equal(mdd_decode(small, r), c), "chartwise:", np.array_equal(decode_prm(small, r).codeword, c))
