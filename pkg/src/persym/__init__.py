"""Exact rank censuses of persymmetric matrices over GF(2) and the
character sums over F2((1/T)) that those ranks control.

The package has three layers:

* carriers: bit-packed GF(2) matrices (`gf2`), truncated Laurent-series
  arithmetic and additive characters (`laurent`), structured-matrix
  builders (`builders`), exact dyadic rationals (`dyadic`);
* two independent routes to every quantity: literal character sums and
  exhaustive enumeration (`expsum`, `census`) versus closed-form count
  calculators (`formulas`);
* a CLI (`cli`) that cross-checks the two routes and emits machine-readable
  reports.
"""

from .exceptions import (
    BudgetExceeded,
    CaseMismatch,
    IncompleteDomain,
    InsufficientPrecision,
    NonIntegerResult,
    PersymError,
)

__all__ = [
    "PersymError",
    "InsufficientPrecision",
    "BudgetExceeded",
    "IncompleteDomain",
    "NonIntegerResult",
    "CaseMismatch",
]

__version__ = "0.1.0"
