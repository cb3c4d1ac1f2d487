"""Sign of a nonnormal matrix with a known answer.

A = V diag(lambda) V^{-1} has sign V diag(sign lambda) V^{-1}.  Halley's
iteration recovers it to near machine precision in a handful of steps.
"""

import numpy as np

from signiter import build_phi, build_test_matrix, matrix_sign_iterate, sign_residuals

eigs = np.array([0.7, 2.5, -1.2, -4.0, 1.0 + 0.8j, 1.0 - 0.8j])
A, S = build_test_matrix(eigs, seed=7)
print("A is real:", np.isrealobj(A), " shape:", A.shape)

for m, n in [(2, 1), (3, 2), (4, 3)]:
    spec = build_phi(m, n)
    X, report = matrix_sign_iterate(spec, A)
    rel = np.linalg.norm(X - S) / np.linalg.norm(S)
    inv, comm = sign_residuals(X, A)
    print(f"{spec.label}: {report.status} in {report.iterate_count} steps, "
          f"rel err {rel:.1e}, ||X^2 - I|| {inv:.1e}, ||XA - AX|| {comm:.1e}")

print("trace(sign A) =", round(float(np.trace(S).real)), "(positive minus negative eigenvalue count)")
