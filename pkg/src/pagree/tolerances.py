"""Centralized numerical tolerances.

Construction-time checks (norms, hermiticity, idempotency) use TOL_CONSTRUCT;
independent evaluation paths of the same quantity must agree to TOL_CROSS.
All other constants qualify one specific policy and are documented in place.
"""

#: entrywise tolerance for constructed operators and states
TOL_CONSTRUCT = 1e-12

#: tolerance for cross-method comparisons (brute vs Gram vs closed form)
TOL_CROSS = 1e-9

#: density-operator eigenvalues may dip this far below zero before rejection
EIGENVALUE_FLOOR = -1e-10

#: probabilities in [-NEGATIVE_PROBABILITY_CLAMP, 0) are treated as rounding
#: noise and clamped to 0; anything lower is reported as an error
NEGATIVE_PROBABILITY_CLAMP = 1e-12

#: tolerance for the measurement-chain trace identities checked at runtime
TOL_CHAIN_IDENTITY = 1e-10

#: largest cross-method residual the CLI accepts before exiting non-zero
CLI_RESIDUAL_LIMIT = 1e-6

#: emitted probabilities may overshoot [0, 1] by at most this much before
#: being clamped; larger violations abort with a diagnostic
EMIT_SLACK = 1e-9
