# %% [markdown]
# The contraction rate bound
#
# rho(d) is the mean of sqrt(cos^2 + sin^2/(d-1)) over a full period.  It is
# 1 at d = 2, about 0.86 at d = 3, and falls towards 2/pi.

# %%
from gsss import rate_bound, rate_bound_asymptote, rate_table, spectral_gap_lower_bound

for d in (2, 3, 4, 10, 100, 1000, 10**6):
    rho = rate_bound(d)
    print(f"d={d:>7}  rho={rho:.10f}  gap>={spectral_gap_lower_bound(rho):.6f}"
          f"  excess over 2/pi={rho - rate_bound_asymptote():.2e}")

table = rate_table(range(3, 11))
print(table.to_csv())
