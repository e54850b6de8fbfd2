"""
Complex numerics core: Wirtinger jets and the finite-difference oracle
"""

from .jet import WirtingerJet, jet_apply, jet_power, guard_radius, real_partials
from .finite_difference import fd_wirtinger, default_step
from .elementary import CATALOGUE, FUNCTION_IDS

__all__ = [
    'WirtingerJet',
    'jet_apply',
    'jet_power',
    'guard_radius',
    'real_partials',
    'fd_wirtinger',
    'default_step',
    'CATALOGUE',
    'FUNCTION_IDS',
]
