"""CBDDL task toolkit: parse and validate task files, replay scripted
episodes, score safety costs, generate language/visual perturbations and
analyze task-space diversity.

The heavy lifting lives in the compiled ``_cbddl`` extension; this module
adds small ergonomic wrappers around its JSON-string interfaces.
"""

import json as _json

try:
    from ._cbddl import *  # noqa: F401,F403  (installed layout)
    from . import _cbddl as _ext
except ImportError:  # pragma: no cover - build-tree layout
    from _cbddl import *  # noqa: F401,F403
    import _cbddl as _ext

__all__ = [name for name in dir(_ext) if not name.startswith("_")] + [
    "evaluate_episode",
    "sample_profile",
]


def evaluate_episode(spec, trajectory):
    """Evaluate a trajectory against a task; returns the report dict
    (success, cc, terms, length)."""
    return _json.loads(_ext.evaluate_episode_json(spec, trajectory))


def sample_profile(level, seed, objects=()):
    """Sample a cumulative V-level visual profile as a dict."""
    return _json.loads(_ext.sample_profile_json(level, seed, list(objects)))
