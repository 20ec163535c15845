"""Hall algebras of parabolic sheaves on curves: exact finite models.

The subpackages mirror the objects: ``curve`` (zeta kernel), ``lattice`` and
``shuffle`` (the weighted shuffle algebra), ``symmetric`` (its symmetrized
form), ``ktheory`` (classes and the Euler form), ``stability`` (HN types and
Reineke inversion), ``oracle`` (brute-force torsion Hall algebras over small
finite fields) and ``cli``.
"""

from .curve import Curve, point_count, xi_coeffs, zeta_series
from .ktheory import KClass, basis_s, basis_u, euler_form, parabolic_degree, slope
from .lattice import Lattice, Weights
from .scalars import Scalar, v, vpow
from .shuffle import TruncPolicy, WindowSaturationError, generator, shuffle_mul
from .stability import Window, hn_reineke_identity_check, reineke_expand

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "KClass",
    "Lattice",
    "Scalar",
    "TruncPolicy",
    "Weights",
    "Window",
    "WindowSaturationError",
    "basis_s",
    "basis_u",
    "euler_form",
    "generator",
    "hn_reineke_identity_check",
    "parabolic_degree",
    "point_count",
    "reineke_expand",
    "shuffle_mul",
    "slope",
    "v",
    "vpow",
    "xi_coeffs",
    "zeta_series",
]
