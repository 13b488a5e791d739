"""Identifying a 12-term nonlinear PDE by the matrix-logarithm lifting.

The benchmark equation on [0, 5] is

    du/dt = -2u - 0.5 (1 + u) u_x + (1 - 0.2 u) u_xx + 0.1 u_xxx

Its coefficients over the 12-term candidate dictionary u^j d^k u/dx^k
(j = 0..2, k = 0..3) are recovered from 50 snapshot pairs by fitting the
one-step operator on the lifted functionals <W_i(u), w> and reading the
first column of logm(U) / ts.  A forward-difference baseline on the same
data illustrates why the lifting route is preferred at moderate sampling
times.

Run:  python3 demos/pde_identification.py
"""

import numpy as np

import koopid
from koopid.operators import describe_term

model = koopid.pde1_model()
candidates = koopid.Dictionary(model.dictionary.terms)
truth = koopid.true_coefficients(model, candidates)
weight = koopid.Bump(5.0, recentered=True)

print("simulating 50 pairs from 25 trajectories (ts = 0.3, burn-in 1.5) ...")
dataset = koopid.generate_pairs(
    model, koopid.ICFamily.PDE1, num_trajectories=25, total_pairs=50,
    t_s=0.3, seed=1, burn_in=1.5,
)

lifting = koopid.lifting_identify(dataset, candidates, weight)
direct = koopid.direct_identify(dataset, candidates, weight)

print(f"\n{'term':<14}{'true':>8}{'lifting':>10}{'direct':>10}")
for i, term in enumerate(candidates.terms):
    print(f"{describe_term(term):<14}{truth[i]:>8.2f}"
          f"{lifting.estimates[i]:>10.4f}{direct.estimates[i]:>10.4f}")

err_l = np.max(np.abs(lifting.estimates - truth))
err_d = np.max(np.abs(direct.estimates - truth))
print(f"\nmax abs error: lifting {err_l:.4f}, direct {err_d:.4f}")
print("the lifting estimates absorb the full one-step flow through the")
print("matrix logarithm, while forward differences see only a secant slope;")
print("at ts = 0.3 that difference is roughly a factor of "
      f"{err_d / err_l:.0f} in accuracy.")
