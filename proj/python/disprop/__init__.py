"""Exact disproportionate cake division.

Instances, divisions and reports are plain dicts in the same JSON format the
``disprop`` command line tool reads and writes; rationals are strings such as
``"1/3"``. Every function also accepts the JSON text itself.
"""

import json

from . import _core
from ._core import BudgetError, DispropError, ValidationError, cut_count_bound

__all__ = [
    "BudgetError",
    "DispropError",
    "ValidationError",
    "baseline",
    "campaign",
    "check_trace",
    "check_witness",
    "cut_count_bound",
    "lower_bound",
    "oracle",
    "pair",
    "random_instance",
    "search",
    "solve",
    "verify",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def solve(instance, with_trace=False):
    """Division with at most max(0, 3n - 4) cuts; with_trace adds the recursion trace."""
    return json.loads(_core.solve(_text(instance), with_trace))


def verify(instance, division):
    return json.loads(_core.verify(_text(instance), _text(division)))


def pair(instance, list_limit=1000):
    """Two-agent division plus the pigeonhole certificate behind it."""
    return json.loads(_core.pair(_text(instance), list_limit))


def baseline(instance, method="sliding"):
    return json.loads(_core.baseline(_text(instance), method))


def lower_bound(n, scale="desk", eps=None, delta=None):
    return json.loads(_core.lower_bound(n, scale, eps or "", delta or ""))


def random_instance(n, segments=4, seed=0):
    return json.loads(_core.random_instance(n, segments, seed))


def oracle(instance, max_cuts=2, refine=1, budget=20_000_000):
    return json.loads(_core.oracle(_text(instance), max_cuts, refine, budget))


def search(instance, refine=1, budget=0):
    """Exact search for an arc and split satisfying the partition property."""
    return json.loads(_core.search(_text(instance), refine, budget))


def campaign(n, count, seed=0, budget=0, segments=3):
    return [json.loads(line) for line in _core.campaign(n, count, seed, budget, segments).splitlines()]


def check_trace(instance, trace):
    """(ok, path, message) for a trace produced by solve(..., with_trace=True)."""
    return _core.check_trace(_text(instance), _text(trace))


def check_witness(instance, witness):
    return _core.check_witness(_text(instance), _text(witness))
