# coding: utf-8

# # Taylor models on the cube
#
# A function in F1(c) with c < 2 is approximated on [-1/2, 1/2]^d by its
# degree-k Taylor polynomial about the center, with sup error at most
# (c/2)^(k+1).  The order depends only on eps, never on d, and the number of
# coefficients is C(d+k, k).

# %%

import numpy as np

from smoothtract import ClassCertificate, Domain, approximate, get_function, plan, sup_error
from smoothtract.taylor import build_from_oracle

cert = ClassCertificate("F1", 1.0, "growth one")

# %% [markdown]
# Plans for a fixed eps across dimensions: same k, growing sample count.

# %%

for d in (1, 2, 5, 10, 20, 50):
    p = plan(Domain.cube(d), cert, 2.0**-5)
    print(f"d={d:3d}  k={p.k}  n={p.n:8d}  bound={p.bound:.4g}")

# %% [markdown]
# Build and check one model.  The sampled sup error is a lower witness of the
# true sup norm, so a value below the bound is evidence rather than proof.

# %%

f = get_function("prodcos", 5)
for eps in (2.0**-2, 2.0**-4, 2.0**-6):
    p = plan(f.domain, cert, eps)
    est = sup_error(f, approximate(f, p), seed=1, bound=p.bound)
    print(f"eps={eps:<8g} k={p.k}  sup={est.sup:.3e}  bound={p.bound:.3e}  pass={est.passed}")

# %% [markdown]
# Samples mode replaces derivatives by forward differences on the grid
# {h*alpha : |alpha| <= k}.  Half of eps goes to the differences by default.

# %%

p = plan(f.domain, cert, 2.0**-4, "samples")
model = approximate(f, p)
est = sup_error(f, model, seed=1, bound=p.bound)
exact = build_from_oracle(f, p.k)
print(f"k={p.k}  n={p.n}  h={p.h:.3g}  precision={p.precision} bits")
print(f"sup={est.sup:.3e}  B_trunc={p.b_trunc:.3e}  eps_fd={p.eps_fd:.3e}")
print("largest coefficient error:", np.abs(model.coefficients - exact.coefficients).max())
