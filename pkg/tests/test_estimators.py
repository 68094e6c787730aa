import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from dfrac.estimators import FractionalDifference, FractionalSum, LinearFractionalFilter
from dfrac.exceptions import InputError
from dfrac.fracops import frac_diff_comp_values, frac_sum_values
from dfrac.solver import IvpSpec, solve_oracle

X = np.random.default_rng(0).uniform(-1, 1, size=(4, 9))


def test_fractional_sum_rows():
    out = FractionalSum(order=0.4).fit_transform(X)
    assert out.shape == X.shape
    np.testing.assert_array_equal(out[2], frac_sum_values(X[2].tolist(), 0.4))


def test_difference_forms_agree():
    comp = FractionalDifference(order=0.3).fit_transform(X)
    direct = FractionalDifference(order=0.3, form="direct").fit_transform(X)
    assert comp.shape == (4, 8)
    np.testing.assert_allclose(comp, direct, rtol=1e-9, atol=1e-12)
    np.testing.assert_array_equal(comp[0], frac_diff_comp_values(X[0].tolist(), 0.3))


def test_filter_matches_oracle():
    filt = LinearFractionalFilter(order=0.7, c=-0.4, x0=1.0)
    out = filt.fit_transform(X)
    assert out.shape == (4, 10)
    want = solve_oracle(IvpSpec.build(0.0, 0.7, 1.0, -0.4, X[1].tolist(), 9)).values
    np.testing.assert_allclose(out[1], want, rtol=1e-10, atol=1e-12)
    for method in ("series", "oracle"):
        np.testing.assert_allclose(clone(filt).set_params(method=method).fit_transform(X), out,
                                   rtol=1e-9, atol=1e-12)


def test_pipeline_and_params():
    pipe = make_pipeline(FractionalSum(order=0.5), FractionalDifference(order=0.5))
    out = pipe.fit_transform(X)
    # The order-nu difference undoes the order-nu sum up to the one-step offset shift.
    np.testing.assert_allclose(out, X[:, :-1], atol=1e-12)
    assert FractionalSum(order=0.2).get_params() == {"order": 0.2, "exact": False}


def test_validation():
    with pytest.raises(NotFittedError):
        FractionalSum().transform(X)
    with pytest.raises(InputError):
        FractionalSum(order=1.2).fit(X)
    with pytest.raises(ValueError):
        FractionalDifference(form="sideways").fit(X)
    with pytest.raises(ValueError):
        LinearFractionalFilter(method="magic").fit(X)
    with pytest.raises(ValueError):
        FractionalSum().fit(X).transform(X[:, :3])
