"""Default numerical tolerances."""

import os

# Verifier tolerance used whenever no explicit value is passed.
DEFAULT_TOL = 1e-10

# Stricter tolerance applied to Hermiticity checks at construction time.
HERMITICITY_TOL = 1e-12


def resolve_tol(tol=None):
    """Tolerance for CLI/service calls.

    Order of precedence: explicit argument, the GEAMKIT_TOL environment
    variable, then DEFAULT_TOL.
    """
    if tol is not None:
        return float(tol)
    env = os.environ.get("GEAMKIT_TOL")
    return float(env) if env else DEFAULT_TOL
