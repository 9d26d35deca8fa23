# %% [markdown]
# # Adaptive refinement on the outflow layer (nu = 1e-4)
#
# Same problem as demo 01, now with three rounds of residual-driven
# resampling: 70% of the centers come from the fitted mixture and 30% are
# uniform, and widths follow 1.1 * (distance to 2nd neighbour) + 1e-4.

# %%
from dataclasses import replace

import numpy as np

from gmm_pielm import AdaptConfig, run, single_layer

spec = single_layer(1e-4)
cfg = AdaptConfig(n_neurons=300, gmm_components=8, hybrid_ratio=0.7, iterations=3,
                  sigma_scaling=1.1, width_eps=1e-4, seed=42)
res = run(spec, cfg)

for rec in res.records:
    c = rec.centers
    print(f"iter {rec.iteration}: rmse={rec.rmse:.3e}  max|R|={rec.max_abs_residual:.2e}  "
          f"cond={rec.condition_number:.1e}  centers in [0.99,1]: {np.sum(c >= 0.99)}")

# %% [markdown]
# Try a few seeds. The outcome swings by orders of magnitude from seed to
# seed. Each round refits to the latest residual only, so mass can leave the
# layer as soon as the layer looks resolved. When many narrow kernels sit
# between collocation points the system has near-null modes, and those
# produce large errors off the constraints.

# %%
for seed in range(5):
    r = run(spec, replace(cfg, seed=seed))
    print(seed, " ".join(f"{rec.rmse:.1e}" for rec in r.records))
