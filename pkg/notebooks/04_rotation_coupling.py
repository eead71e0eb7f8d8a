# %% [markdown]
# Rotation coupling
#
# Rotating a kernel draw from e_1 by R_alpha in the (1, 2) plane gives a draw
# from the kernel at R_alpha e_1.  The cost ratio of that coupling reduces to
# sqrt(v_1^2 + v_2^2), independent of alpha, and its mean lies below rho(d)
# by Jensen's inequality.

# %%
import numpy as np

from gsss import basis_vector, coupled_ratios, estimate_dobrushin_coupled, sample_kernel_from

v = sample_kernel_from(basis_vector(4), 5, seed=0)
for alpha in (0.4, 2.5):
    print(f"alpha={alpha}: ratios", np.round(coupled_ratios(alpha, v), 6))

for d in (3, 10, 100):
    rep = estimate_dobrushin_coupled(d, 1.0, 200000, seed=d)
    print(f"d={d:3d}  estimate={rep.estimate:.5f} +- {rep.std_error:.5f}  bound={rep.rate_bound:.5f}")
