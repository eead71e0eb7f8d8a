# %% [markdown]
# Sampling on the sphere with geodesic slice sampling
#
# The constant-target kernel picks a random great circle through the current
# point and then a uniform point on it.  We run a chain in d = 5 and look at
# the first two moments of the coordinates.

# %%
import numpy as np

from gsss import basis_vector, exp_linear_density, hemisphere_density, run_chain

trace = run_chain(basis_vector(5), 20000, "constant", seed=1)
print("states:", trace.states.shape)
print("coordinate means:", np.round(trace.states.mean(axis=0), 3))
print("mean squares (expect 1/5):", np.round((trace.states**2).mean(axis=0), 3))

# %% [markdown]
# Ideal GSSS handles an arbitrary unnormalized density.  For exp(kappa v_1)
# the chain concentrates around e_1; for the hemisphere indicator it never
# leaves the half space v_1 > 0.

# %%
vmf = run_chain(basis_vector(3), 20000, exp_linear_density(4.0), seed=2)
print("E[v_1] under exp(4 v_1), d=3:", vmf.states[:, 0].mean().round(4),
      "exact:", round(1 / np.tanh(4.0) - 1 / 4.0, 4))

half = run_chain(basis_vector(3), 5000, hemisphere_density(), seed=3)
print("min v_1 on the hemisphere:", half.states[:, 0].min().round(4))
print("mean rejections per step:", half.rejection_counts.mean().round(3))
