"""Square-root state geometry, qubit preimages and uncertainty bounds."""

import json as _json

from ._qig import (
    anticommutator,
    commutator,
    derivative,
    fisher_rao_analytic,
    fisher_rao_mc,
    gibbons_expectation,
    haar_moment,
    make_locally_unbiased,
    principal_sqrt,
    random_density,
    random_hermitian,
    run_cli,
    skew_information,
    skew_moment,
    skew_second,
    unitary_evolve,
    variance,
    velocity_sq,
)
from . import _qig


def bound_report(xi, h, t, reference_time=0.0):
    return _json.loads(_qig._bound_report_json(xi, h, t, reference_time))


def higher_order_bound(xi, h, t, max_order=3, reference_time=0.0):
    return _json.loads(_qig._higher_order_bound_json(xi, h, t, max_order, reference_time))


def sqrt_preimages(a, b, c):
    return _json.loads(_qig._sqrt_preimages_json(a, b, c))


__all__ = [
    "anticommutator",
    "bound_report",
    "commutator",
    "derivative",
    "fisher_rao_analytic",
    "fisher_rao_mc",
    "gibbons_expectation",
    "haar_moment",
    "higher_order_bound",
    "make_locally_unbiased",
    "principal_sqrt",
    "random_density",
    "random_hermitian",
    "run_cli",
    "skew_information",
    "skew_moment",
    "skew_second",
    "sqrt_preimages",
    "unitary_evolve",
    "variance",
    "velocity_sq",
]
