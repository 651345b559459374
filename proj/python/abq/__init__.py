"""Statevector simulation of QAOA and adaptive-bias QAOA on random 1-3-SAT+
problems.

The heavy lifting lives in the compiled extension ``abq._abq``; this package
re-exports it and adds a few small conveniences.
"""

from ._abq import *  # noqa: F401,F403
from ._abq import __version__  # noqa: F401


def random_formula(n, alpha, seed):
    """One random 1-3-SAT+ instance at clause density alpha."""
    from ._abq import generate_instance

    return generate_instance(n, alpha, seed)


def ground_energy(formula):
    """Exact minimum penalty energy by exhaustive search."""
    from ._abq import brute_force_ground

    return brute_force_ground(formula).energy
