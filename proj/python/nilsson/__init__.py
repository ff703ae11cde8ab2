"""Nilsson-type asymptotic expansions of sequences.

Thin Python layer over the compiled core: JSON documents are exchanged as
Python objects, exact values as rational strings.
"""

import json as _json

from . import _core
from ._core import NumericalError, UserError, __version__, check_balanced, gamma_series, omega_cmp, p_beta_latex

__all__ = [
    "NumericalError",
    "UserError",
    "__version__",
    "beta_integral",
    "check",
    "check_balanced",
    "estimate_growth",
    "eval_multisum",
    "fit",
    "formal_solutions",
    "gamma_series",
    "omega_cmp",
    "p_beta_latex",
    "polygamma",
    "run_cli",
    "unroll",
]


def _doc(x):
    return x if isinstance(x, str) else _json.dumps(x)


def _values(values, n_min=0):
    if isinstance(values, dict):
        return _json.dumps(values)
    return _json.dumps({"n_min": n_min, "values": [str(v) for v in values]})


def polygamma(k, x, precision=128):
    """psi^(k)(x) for rational x, as a decimal string."""
    return _core.polygamma(k, str(x), precision)


def beta_integral(gamma, beta, n, quad=False, precision=128, tolerance=1e-12):
    return _core.beta_integral(str(gamma), beta, n, quad, precision, tolerance)


def eval_multisum(term, n0, n1):
    """Exact values a_n0..a_n1 of a built-in name or a term document."""
    return _json.loads(_core.eval_multisum(_doc(term), n0, n1))


def unroll(recurrence, N):
    return _json.loads(_core.unroll(_doc(recurrence), N))


def formal_solutions(recurrence, order=10, precision=256):
    return _json.loads(_core.formal_solutions(_doc(recurrence), order, precision))


def fit(values, model, n_min=0, precision=0):
    """Least-squares fit; returns the expansion document with a "fit" report."""
    return _json.loads(_core.fit(_values(values, n_min), _doc(model), precision))


def check(values, expansion, cuts, window, n_min=0, precision=256):
    lo, hi = window
    return _json.loads(_core.check(_values(values, n_min), _doc(expansion), cuts, lo, hi, precision))


def estimate_growth(values, window, n_min=0):
    lo, hi = window
    return _core.estimate_growth(_values(values, n_min), lo, hi)


def run_cli(*args):
    """Runs the command-line tool in-process: (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
