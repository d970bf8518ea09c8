"""Bergman kernel laboratory: Python access to the C++ core."""

import json

from . import _core
from ._core import (
    BergmanError,
    DimensionMismatch,
    Kernel,
    KernelNearZero,
    closed_kernel,
    membership,
    sample,
)

__version__ = _core.__version__


def catalog():
    return json.loads(_core.catalog_json())


def weights(sub, m1, m2, bound=64, which="all", component=0):
    return json.loads(_core.weights_json(sub, m1, m2, bound, which, component))


def build_kernel(**config):
    """Builds a truncated kernel model; keywords follow the run config (domain, samples, seed, cutoff, ...)."""
    return _core.build_kernel(json.dumps(config))


def kernel_model(**config):
    return json.loads(_core.kernel_model_json(json.dumps(config)))


def verify(kind, **config):
    return json.loads(_core.verify_json(kind, json.dumps(config)))


def suite(**config):
    return json.loads(_core.suite_json(json.dumps(config)))


def grid(quantity="T", nx=41, ny=41, **config):
    return _core.grid_csv(json.dumps(config), quantity, nx, ny)
