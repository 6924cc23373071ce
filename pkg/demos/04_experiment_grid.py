# %% [markdown]
# # A small experiment grid
#
# The harness runs problems x algorithms x independent runs, writes one
# report CSV per run, front files, HV curves and a summary table. The full
# protocol is `dynmopso run` with defaults (30 runs each); this demo uses 3.

# %%
import tempfile
from pathlib import Path

from dynmopso.harness import ExperimentConfig, run_experiment

out = Path(tempfile.mkdtemp(prefix="dynmopso-"))
config = ExperimentConfig(problems=("fda1", "dmop3"), runs=3, out=str(out))
result = run_experiment(config)

# %%
for row in result.summary.rows:
    flag = "*" if row.best else " "
    print(f"{row.problem:6s} {row.algorithm:14s} {row.metric:6s} mean={row.mean:.4g} sd={row.sd:.3g} {flag}")

# %%
print(sorted(p.name for p in (out / "hv_curves").iterdir()))
print((out / "fronts" / "fda1__dynamic-mopso__run00.txt").read_text().splitlines()[:5])
