"""scikit-learn style wrapper: fit on a polynomial, predict alpha at 1/p."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .conditions import check_conditions
from .geometry import LITERAL, build_newton_data
from .polynomial import BivariatePolynomial, parse_polynomial, swap_normalize
from .profile import HALF, sharp_profile


class ConditionsNotMet(ValueError):
    pass


class SmoothingProfileEstimator(BaseEstimator):
    """Sharp Sobolev exponent of the averaging operator along x3 = P(t1, t2).

    ``fit`` takes the polynomial (text or BivariatePolynomial) and builds the
    Newton data, hypothesis report and profile.  ``predict`` maps an array of
    1/p values in [0, 1] to alpha(p); values above 1/2 use the dual exponent.

    Parameters
    ----------
    convention : "literal" or "exclude-axis"
        Which admissible set to use.
    strict_exponents : bool
        Reject exponent 1 while parsing text input.
    require_conditions : bool
        Raise from ``fit`` if the nondegeneracy check does not pass.
    """

    def __init__(self, convention: str = LITERAL, strict_exponents: bool = True, require_conditions: bool = True):
        self.convention = convention
        self.strict_exponents = strict_exponents
        self.require_conditions = require_conditions

    def fit(self, X, y=None):
        poly = X if isinstance(X, BivariatePolynomial) else parse_polynomial(str(X), strict=self.strict_exponents)
        self.polynomial_, self.swapped_ = swap_normalize(poly)
        self.newton_data_ = build_newton_data(self.polynomial_, self.convention)
        self.conditions_ = check_conditions(self.polynomial_)
        if self.require_conditions and not self.conditions_.passed:
            raise ConditionsNotMet(f"nondegeneracy check returned {self.conditions_.verdict}")
        self.profile_ = sharp_profile(self.newton_data_)
        self.delta_ = self.newton_data_.delta
        return self

    def alpha(self, x) -> Fraction:
        """Exact exponent at 1/p = x."""
        check_is_fitted(self, "profile_")
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError("1/p must lie in [0, 1]")
        return self.profile_.evaluate(1 - x if x > HALF else x)

    def predict(self, X):
        check_is_fitted(self, "profile_")
        arr = check_array(np.asarray(X, dtype=float).reshape(-1, 1), ensure_all_finite=True).ravel()
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError("1/p must lie in [0, 1]")
        folded = np.where(arr > 0.5, 1.0 - arr, arr)
        pieces = [p for p in self.profile_.pieces if not p.degenerate] or self.profile_.pieces
        out = np.empty_like(folded)
        for k, x in enumerate(folded):
            for p in pieces:
                if float(p.x_lo) <= x <= float(p.x_hi):
                    out[k] = float(p.slope) * x + float(p.intercept)
                    break
        return out
