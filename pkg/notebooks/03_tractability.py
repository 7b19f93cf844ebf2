# coding: utf-8

# # Cost of the Taylor algorithm and tractability
#
# n(eps, d) = C(d+k, k) is the cost of the constructive algorithm, an upper
# bound on the minimal information cost.  Everything below is a statement
# about a finite grid, not a proof.

# %%

from smoothtract.tractability import build_report, classify, curse_contrast, qpt_fit, wt_diagonal

eps = [2.0**-j for j in range(1, 11)]

# %% [markdown]
# Quasi-polynomial exponent t* as the dimension range doubles.  It keeps
# growing, but by shrinking increments.

# %%

for d_max in (100, 200, 400, 800):
    print(f"d<={d_max:4d}  t*={qpt_fit(eps, range(1, d_max + 1)):.4f}")

# %% [markdown]
# Weak tractability along eps = 1/d on the unit-volume ball.

# %%

for row in wt_diagonal([2**j for j in range(1, 9)]):
    print(f"d={row.d:4d}  k={row.k:3d}  ln n={row.ln_n:9.3f}  ratio={row.ratio:.4f}")

# %% [markdown]
# For eps = 1/2 the cube algorithm needs a single sample (k = 0), while the
# class of functions with all derivatives bounded by one, without the 1/alpha!
# renormalisation, needs at least 2^floor(d/2).

# %%

for row in curse_contrast(0.5, (2, 10, 20, 40)):
    print(f"d={row.d:3d}  n={row.n}  lower bound (other class)={row.lower_bound_unrenormed}")

# %%

report = build_report(eps, range(1, 101), wt_d_values=[2**j for j in range(1, 9)])
print(sorted(classify(report)))
