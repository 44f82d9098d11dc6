"""Discrete Fourier transform on an affine chart and the BMS algorithm.

The syndromes of an error word on the chart are a part of its spectrum.
BMS turns them into a Groebner basis of the error locator ideal, which
determines the rest of the spectrum; the inverse transform then gives the
error word.
"""

import numpy as np

from prmcodes.bms import bms_run
from prmcodes.galois import gf
from prmcodes.monomials import format_polynomial
from prmcodes.transform import dft, idft, spectrum_dict

F = gf(4)
m = 3

# %% a weight-3 error on A^3(GF(4)) and its full spectrum
err = np.zeros(F.q**m, dtype=np.uint8)
err[[10, 27, 60]] = [1, 2, 3]
spec = dft(F, err, m)
assert np.array_equal(idft(F, spec, m), err)
full = spectrum_dict(F, spec, m)

# %% only the low-degree part is known to the decoder (degree <= 4 here)
known = {h: v for h, v in full.items() if sum(h) <= 4}
print(len(known), "known syndromes out of", len(full))

res = bms_run(known, m, F, trace=True)
print(res)
for g in res.basis:
    print("  ", format_polynomial(g))
print("locator roots:", res.roots)
print("recovered error:", np.array_equal(res.error, err))
print("first trace lines:")
print("\n".join(res.trace[:5]))

# %% without majority voting the same syndromes may not be enough
print("no voting:", bms_run(known, m, F, voting=False))
