"""Generation of Sym(n)/Alt(n) by torsion elements, and the mapping-class checks built on it."""

import json

from . import _core
from ._core import TorsiongenError, canonical_cycles, classify, decompose, order, stable_bound

__version__ = _core.__version__

__all__ = [
    "TorsiongenError",
    "canonical_cycles",
    "classify",
    "decompose",
    "estimate",
    "mcg",
    "order",
    "stable_bound",
    "sweep",
    "verify",
]


def verify(family, k, n, *, jobs=1, cache_dir=None):
    """Report dict for one cell; ``report["exit_code"]`` mirrors the CLI."""
    text, code = _core.verify(family, k, n, jobs, cache_dir)
    report = json.loads(text)
    report["exit_code"] = code
    return report


def sweep(family, k_min, k_max, n_min, n_max, *, jobs=0, cache_dir=None):
    text, code = _core.sweep(family, k_min, k_max, n_min, n_max, jobs, cache_dir)
    report = json.loads(text)
    report["exit_code"] = code
    return report


def estimate(k, n, trials, *, sampler="max_disjoint_k_cycles", seed=0, jobs=0):
    return json.loads(_core.estimate(k, n, trials, sampler, seed, jobs))


def mcg(k, g, variant="four"):
    text, passed = _core.mcg(k, g, variant)
    report = json.loads(text)
    report["exit_code"] = 0 if passed else 1
    return report
