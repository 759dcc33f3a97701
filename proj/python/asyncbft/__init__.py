"""Python front end for the asyncbft simulation harness.

    import asyncbft
    rows = asyncbft.run({"protocol": "coin", "n": [4, 7], "trials": 50})
    asyncbft.fit([r["n"] for r in rows], [r["mean_bits"] for r in rows])
"""

import json

from . import _core
from ._core import DecodeError, preset_names

__all__ = ["run", "run_preset", "preset_names", "fit", "chi_square", "transcript", "replay", "DecodeError"]


def _config(config):
    return config if isinstance(config, str) else json.dumps(config)


def run(config, threads=0):
    """Run an experiment; `config` is a dict (or JSON text) of ExperimentConfig keys.

    Returns one summary dict per n. Bad configs raise ValueError naming the field.
    """
    return [json.loads(r) for r in _core.run_json(_config(config), threads)]


def run_preset(name, threads=0):
    rep = _core.preset(name, threads)
    rep["rows"] = [json.loads(r) for r in rep["rows"]]
    return rep


def fit(n, values):
    """Least-squares slope and intercept of log(values) against log(n)."""
    return _core.fit_loglog(list(map(float, n)), list(map(float, values)))


def chi_square(counts):
    """(statistic, p-value, dof) against the uniform distribution."""
    return _core.chi_square_uniform(list(counts))


def transcript(config, n, trial=0):
    """Recorded run of one trial, as bytes."""
    return _core.transcript(_config(config), n, trial)


def replay(data):
    """Re-executes a transcript; returns the divergence list (empty when identical)."""
    return _core.replay(data)
