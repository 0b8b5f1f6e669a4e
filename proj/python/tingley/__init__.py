"""Python face of the sphere-isometry reconstruction lab.

Wraps the native module's JSON-string interface into dicts.
"""

import json

import _tingley

__all__ = ["gen_instance", "reconstruct", "run_suite", "census", "version"]


def gen_instance(section, seed=1, size=4, n=4, orbits=3):
    """Generate a random hidden-map instance as a dict."""
    return json.loads(_tingley.gen_instance_json(section, seed, size, n, orbits))


def reconstruct(instance, probes=16, samples=1000, tol=1e-9, seed=1):
    """Recover the hidden map from oracle probes; returns the report dict.

    The report's "ok" field is False when a perturbation was detected.
    """
    text = instance if isinstance(instance, str) else json.dumps(instance)
    return json.loads(_tingley.reconstruct_json(text, probes, samples, tol, seed))


def run_suite(trials=200, seed=1):
    """Run the acceptance battery; returns a list of criterion dicts."""
    return json.loads(_tingley.run_suite_json(trials, seed))


def census():
    """Permutations of the discrete circle vs actual isometries."""
    return json.loads(_tingley.census_json())


def version():
    return _tingley.version()
