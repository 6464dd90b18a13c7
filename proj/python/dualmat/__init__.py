"""Dual complex matrix decompositions and generalized inverses."""

import json

from ._core import (
    DualMatError,
    DualMatrix,
    DualReal,
    DualSvd,
    HsDecomposition,
    InverseReport,
    ToleranceConfig,
    approx_equal,
    check_property,
    dggi,
    dmpgi,
    dual_svd,
    essential_part,
    group_inverse_essential,
    hs_decompose,
    inverse,
    is_class,
    mpdgi,
    ndmpi,
    ndmpi_hs,
    nonessential_part,
    properties,
    random_dual_matrix,
    theorems,
    verify_ndmpi,
)
from ._core import _run_suite_json


def run_suite(theorem, trials=200, sizes=(4,), seed=0, threads=1):
    """Fuzz one theorem; returns the same report the CLI prints for `verify`."""
    return json.loads(_run_suite_json(theorem, trials, list(sizes), seed, threads))


__all__ = [name for name in dir() if not name.startswith("_")]
