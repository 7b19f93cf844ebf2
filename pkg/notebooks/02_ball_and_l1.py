# coding: utf-8

# # The ball of unit volume
#
# On the ball B(0, r_d) with volume one, r_d grows like sqrt(d / (2 pi e)), and the
# Taylor error for F2(c) is (c r)^(k+1)/(k+1)!.  The factorial eventually
# wins, so k is finite for every d, but it grows with d.

# %%

import math

from smoothtract import ClassCertificate, get_function, plan, sup_error
from smoothtract.approximate import approximate, sufficient_order_ball
from smoothtract.funcspace import unit_volume_radius
from smoothtract.l1_spherical import l1_bound, mc_l1_error

for d in (1, 2, 5, 10, 50, 100):
    r = unit_volume_radius(d)
    print(f"d={d:4d}  r_d={r:.4f}  r_d/sqrt(d/(2 pi e))={r / math.sqrt(d / (2 * math.pi * math.e)):.4f}  k_suff(1/16)={sufficient_order_ball(1 / 16, r)}")

# %% [markdown]
# Sup and L1 errors of one model.  The L1 error is a Monte Carlo estimate
# with a standard error; it can never exceed the sup error on a unit-volume
# ball.

# %%

f = get_function("ridge-sin", 5, "ball")
cert = ClassCertificate("F2", 1.0, "growth one", f.certificate("F2").partial_growth)
for eps in (2.0**-2, 2.0**-4, 2.0**-6):
    p = plan(f.domain, cert, eps)
    model = approximate(f, p)
    sup = sup_error(f, model, seed=3).sup
    l1 = mc_l1_error(f, model, m=100_000, seed=3)
    print(
        f"eps={eps:<8g} k={p.k}  sup={sup:.3e} (bound {p.bound:.3e})  "
        f"L1={l1.estimate:.3e} +- {l1.stderr:.1e} (bound {l1_bound('F4', f.domain.radius, p.k):.3e})"
    )
