# %% [markdown]
# Empirical Wasserstein decay
#
# Start a cloud of chains at e_1 and track the exact empirical W1 distance to
# a fresh uniform cloud.  Two independent uniform clouds are not at distance
# zero, so the distance settles at a sampling floor; the excess over that
# floor is what contracts.

# %%
from gsss import decay_step_checks, rate_bound, wasserstein_decay_experiment

res = wasserstein_decay_experiment(3, 512, 5, seed=7)
print(res.to_csv())
print("floor sd:", round(res.floor_sd, 4))
for k, ratio, ok in decay_step_checks(res, rate_bound(3)):
    print(f"step {k}->{k + 1}:", "at floor" if ratio is None else f"ratio {ratio:.3f}", "ok" if ok else "FAIL")
