"""Why no cheaper iteration of order s exists.

Order s at both +1 and -1 imposes 2s linear conditions on the coefficients
of a and b.  With deg a + deg b < 2s - 1 there are too few unknowns and the
only solution is zero.  Exactly at the bound the solutions form a line, and
that line is the Padé iteration.
"""

from signiter import construct_by_nullspace, construct_by_recursion, optimality_scan
from signiter.minimal import nullity

s = 3
print(f"Nullity of the order-{s} system by total degree m + n:")
for total in range(2 * s):
    values = [nullity(m, total - m, s) for m in range(total + 1)]
    print(f"  m+n = {total}: {values}")

report = optimality_scan(s)
print(f"\nScan of {len(report.records)} degree pairs certified: {report.ok}")

# The same pair found two unrelated ways.
for m, n in [(3, 2), (5, 0)]:
    rec, nul = construct_by_recursion(m, n), construct_by_nullspace(m, n)
    print(f"\n({m},{n}) by integration: ({rec.a}) / ({rec.b})")
    print(f"({m},{n}) by nullspace:   ({nul.a}) / ({nul.b})")

# Polynomial-only endpoint: a = (z^2 - 1)^s with b = 0.
end = construct_by_recursion(2 * s, -1)
print(f"\n({2 * s},-1) endpoint: a = {end.a}, b = {end.b}")
