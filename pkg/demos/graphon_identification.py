"""Identifying nonlinear diffusive dynamics on a graphon.

The dynamics on [0, 1] combine a cubic local reaction with nonlocal
diffusion through the affine graphon G(x, y) = -1 + 0.7x + 0.3y:

    du/dt = -0.5u + 1.5u^2 - u^3 + int_0^1 G(x, y) (u(y) - u(x)) dy

The candidate dictionary holds 1, u, u^2, u^3 and three graphon couplings
with kernels f = 1, x and y; recovering the kernel coefficients (-1, 0.7,
0.3) identifies the graphon itself.  The weighting function is w(x) = x^2.

Run:  python3 demos/graphon_identification.py
"""

import numpy as np

import koopid
from koopid.operators import describe_term

model = koopid.graphon_model()
candidates = koopid.Dictionary(model.dictionary.terms)
truth = koopid.true_coefficients(model, candidates)

print("simulating 50 pairs from 25 trajectories (ts = 0.5) ...")
dataset = koopid.generate_pairs(
    model, koopid.ICFamily.GRAPHON, num_trajectories=25, total_pairs=50,
    t_s=0.5, seed=1,
)
result = koopid.lifting_identify(dataset, candidates, koopid.PowerLaw(2))

print(f"\n{'term':<26}{'true':>8}{'estimate':>10}")
for i, term in enumerate(candidates.terms):
    print(f"{describe_term(term):<26}{truth[i]:>8.2f}{result.estimates[i]:>10.4f}")
print(f"\nmax abs error at ts = 0.5: {np.max(np.abs(result.estimates - truth)):.4f}")

print("\nthe residual error at ts = 0.5 is finite-sampling-time bias, not")
print("noise: rerunning the whole pipeline at smaller sampling times shows")
print("the estimates converging to the true coefficients.")
for ts in (0.25, 0.1, 0.05):
    ds = koopid.generate_pairs(
        model, koopid.ICFamily.GRAPHON, num_trajectories=25, total_pairs=50,
        t_s=ts, seed=1,
    )
    r = koopid.lifting_identify(ds, candidates, koopid.PowerLaw(2))
    print(f"  ts = {ts:<5g} max abs error {np.max(np.abs(r.estimates - truth)):.5f}")
