"""scikit-learn compatible wrappers.

Each row of ``X`` is one sequence sampled at offsets ``0..n_features-1``.
The transformers are stateless apart from remembering ``n_features_in_``,
so they drop into a :class:`~sklearn.pipeline.Pipeline` next to ordinary
feature transformers.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_order, check_real
from .fracops import frac_diff_comp_values, frac_diff_direct_values, frac_sum_values
from .solver import IvpSpec, solve_closed_const, solve_oracle, solve_series


class _SequenceTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self._validate_params()
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, but {type(self).__name__} "
                             f"was fitted with {self.n_features_in_}")
        self._validate_params()
        return np.array([self._transform_row(row) for row in X], dtype=np.float64)

    def _validate_params(self):
        check_order(self.order, name="order")


class FractionalSum(_SequenceTransformer):
    """Row-wise fractional sum of the given order.

    Output column ``n`` is the sum at offset ``n`` (column 0 is always 0).

    >>> FractionalSum(order=1.0).fit_transform([[1.0, 1.0, 1.0, 1.0]])
    array([[0., 1., 2., 3.]])
    """

    def __init__(self, order=0.5, exact=False):
        self.order = order
        self.exact = exact

    def _transform_row(self, row):
        return frac_sum_values(row.tolist(), self.order, horizon=len(row) - 1, exact=self.exact)


class FractionalDifference(_SequenceTransformer):
    """Row-wise Riemann-Liouville fractional difference.

    ``form`` is ``"composition"`` or ``"direct"``. Output has one column
    fewer than the input, since offset ``n`` consumes ``f[0..n+1]``.
    """

    def __init__(self, order=0.5, form="composition", exact=False):
        self.order = order
        self.form = form
        self.exact = exact

    def _validate_params(self):
        super()._validate_params()
        if self.form not in ("composition", "direct"):
            raise ValueError(f"form must be 'composition' or 'direct', got {self.form!r}")

    def _transform_row(self, row):
        fn = frac_diff_comp_values if self.form == "composition" else frac_diff_direct_values
        return fn(row.tolist(), self.order, exact=self.exact)


class LinearFractionalFilter(_SequenceTransformer):
    """Drive ``Delta^nu x = c x + z`` with each row of ``X`` as the forcing ``z``.

    Row ``z[0..N-1]`` maps to the trajectory ``x[0..N]``, so the output has
    one column more than the input. ``method`` selects the solver:
    ``"closed_form"`` (Mittag-Leffler), ``"series"`` or ``"oracle"``.
    """

    def __init__(self, order=0.5, c=0.0, x0=0.0, method="closed_form"):
        self.order = order
        self.c = c
        self.x0 = x0
        self.method = method

    def _validate_params(self):
        super()._validate_params()
        check_real(self.c, "c")
        check_real(self.x0, "x0")
        if self.method not in ("closed_form", "series", "oracle"):
            raise ValueError(f"unknown method {self.method!r}")

    def _transform_row(self, row):
        spec = IvpSpec.build(0.0, self.order, self.x0, self.c, row.tolist(), len(row))
        solve = {"closed_form": solve_closed_const, "series": solve_series,
                 "oracle": solve_oracle}[self.method]
        return list(solve(spec).values)
