"""Brute-force Hall algebras of torsion sheaves over F_2 and F_3."""

from .cyclic import T, bracket_constants, torsion_class, verify_cyclic_bracket, verify_T_shift
from .generators import KINDS, TPoly, closed_points, exp_convert, green_pairing_T0, qint
from .hall import HallElem, aut_count, enumerate_submodules, equal_at_l, euler, hall_number, hall_product, model_for
from .models import CAPACITY, Multisegment, OracleCapacityError, Partition, multisegments, partitions
from .symfun import hl_correspondence_check, hl_polynomial, schur_polynomial

__all__ = [
    "CAPACITY",
    "HallElem",
    "KINDS",
    "Multisegment",
    "OracleCapacityError",
    "Partition",
    "T",
    "TPoly",
    "aut_count",
    "bracket_constants",
    "closed_points",
    "enumerate_submodules",
    "equal_at_l",
    "euler",
    "exp_convert",
    "green_pairing_T0",
    "hall_number",
    "hall_product",
    "hl_correspondence_check",
    "hl_polynomial",
    "model_for",
    "multisegments",
    "partitions",
    "qint",
    "schur_polynomial",
    "torsion_class",
    "verify_T_shift",
    "verify_cyclic_bracket",
]
