"""Codeword error rates on a q-ary symmetric channel.

PM1 assumes the decoder corrects at most t0 errors in total, PM2 at most t0
on each chart below i0, MDD at most half the minimum distance.  The closed
forms are compared with Monte Carlo estimates.
"""

from prmcodes.codes import prm_params
from prmcodes.simulate import ChannelSpec, analytic, log_grid, simulate_many

spec = prm_params(3, 4, 5)
print("PRM_5(3,4): t0 =", spec.t0, " t_md =", spec.t_md)

# %% closed forms over a grid
print("p,method,cer,stderr,trials,seed")
for p in log_grid(1e-3, 0.05, 4):
    for method in ("PM1", "PM2", "MDD"):
        print(analytic(spec, p, method).row())

# %% Monte Carlo with the chart-wise decoder
for p in (0.02, 0.04):
    res = simulate_many(spec, ChannelSpec(p, spec.field, rng_seed=11), ["PM1", "PM2"], 2000)
    for method, pt in res.items():
        print(pt.row(), " closed form:", round(analytic(spec, p, method).cer, 4))
