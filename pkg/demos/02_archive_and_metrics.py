# %% [markdown]
# # Archive maintenance and quality indicators

# %%
import numpy as np

from dynmopso.archive import Archive, crowding_distance, non_dominated_set
from dynmopso.benchmarks import make_problem, true_pof
from dynmopso.metrics import gd, hypervolume, spread

rng = np.random.default_rng(0)

# %% [markdown]
# Non-dominated filtering and crowding distance on a small set.

# %%
F = np.array([(1, 3), (2, 2), (3, 1), (2, 3)], dtype=float)
print("non-dominated:", non_dominated_set(F))
print("crowding:", crowding_distance(F[:3]))

# %% [markdown]
# A capacity-20 archive fed 2000 random FDA1 points keeps a spread-out
# non-dominated subset.

# %%
fda1 = make_problem("fda1")
X = fda1.sample(rng, 2000)
archive = Archive(capacity=20)
archive.extend(X, fda1.evaluate(X, 0.0), 0.0)
print(len(archive), "entries; mutually non-dominated:", len(non_dominated_set(archive.F)) == len(archive))

# %% [markdown]
# Re-evaluating the archive after the environment moves is the change
# detector: it reports how many entries changed and how many got worse.

# %%
changed, degraded = archive.reevaluate(fda1, 0.5)
print(f"changed={changed} degraded={degraded} remaining={len(archive)}")

# %% [markdown]
# Indicators against the analytic front.

# %%
ref = true_pof("fda1", 0.0, 500)
print("GD      ", gd(archive.F, ref))
print("spread  ", spread(archive.F))
print("HV      ", hypervolume(archive.F, (1.1, 1.1)))
print("HV true ", hypervolume(ref, (1.1, 1.1)))
