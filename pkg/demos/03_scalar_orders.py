"""Watching the order of convergence appear in the digits.

A scalar run from z0 = 1.5 for each principal iteration.  The number of
correct digits multiplies by roughly s per step, and the least-squares
estimate of the order lands on s.
"""

from signiter import build_phi, scalar_iterate

for m, n in [(2, 1), (3, 2), (4, 3), (5, 4)]:
    spec = build_phi(m, n)
    z, report, run = scalar_iterate(spec, 1.5)
    print(f"{spec.label}  s={spec.s}  status={report.status}  estimated order={report.estimated_order:.3f}")
    for k, err in enumerate(run.errors):
        print(f"    k={k}  |z_k - 1| = {err:.3e}")

# Not every member works from every start: phi_{0,3} has a pole near 1.5.
_, report, _ = scalar_iterate(build_phi(0, 3), 1.5)
print(f"\nphi_{{0,3}} from 1.5: {report.status}")
_, report, _ = scalar_iterate(build_phi(0, 3), 1.05)
print(f"phi_{{0,3}} from 1.05: {report.status}, order {report.estimated_order:.3f}")
