"""Where Newton, Newton-Schulz and Halley come from.

Each classical sign iteration is a member of a two-parameter family built
from Padé approximants to (1 - xi)^(-1/2) with xi = 1 - z^2.  Running this
script prints the three named members, then every iteration of order 3.
"""

from signiter import build_phi, family_table

for name, (m, n) in [("Newton", (2, 1)), ("Newton-Schulz", (3, 0)), ("Halley", (3, 2))]:
    spec = build_phi(m, n)
    print(f"{name:<14} {spec.label}:  ({spec.num}) / ({spec.den})")

print()
print("All iterations of order 3 (m + n = 5):")
for spec in family_table(3):
    print(f"  {spec.label:<10} {spec.family:<16} ({spec.num}) / ({spec.den})")

# Swapping m and n gives the reciprocal function, so phi_{2,3} is 1/phi_{3,2}.
h, r = build_phi(3, 2), build_phi(2, 3)
print()
print("phi_{3,2} * phi_{2,3} numerator:  ", h.num * r.num)
print("phi_{3,2} * phi_{2,3} denominator:", h.den * r.den)
