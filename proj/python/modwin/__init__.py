"""Python bindings for the modwin engines. Populations and reports are plain dicts."""

import json

from . import _core
from ._core import CapExceeded, InputError, ValidationError

__all__ = [
    "CapExceeded",
    "InputError",
    "ValidationError",
    "best_window",
    "compete",
    "expand_frequencies",
    "fair_limit",
    "lcc",
    "robust",
    "scenario",
    "simulate",
]


def _window(window):
    return "" if window is None else json.dumps(window)


def lcc(population, method="exact"):
    return json.loads(_core.lcc(json.dumps(population), method))


def fair_limit(population, window=None):
    return json.loads(_core.fair_limit(json.dumps(population), _window(window)))


def best_window(population, jobs=1):
    return json.loads(_core.best_window(json.dumps(population), jobs))


def simulate(population, schedule, horizon, window=None):
    return json.loads(_core.simulate(json.dumps(population), _window(window), json.dumps(schedule), horizon))


def compete(config, focus=0):
    return json.loads(_core.compete(json.dumps(config), focus))


def robust(population, k, window=None, jobs=1):
    return json.loads(_core.robust(json.dumps(population), _window(window), k, jobs))


def scenario(name, n=0, theta="", seed=0):
    return json.loads(_core.scenario(name, n, theta, seed))


def expand_frequencies(population):
    return json.loads(_core.expand_frequencies(json.dumps(population)))
