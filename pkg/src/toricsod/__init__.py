"""Singularities, minimal resolutions, Kalck-Karmazyn algebras, Brauer
classes, Grothendieck groups and reflexive generators of toric surfaces."""

from .brauer_groth import beta_relations, g0_twisted, g0_untwisted, ip_cokernel, standard_beta
from .exactalg import FgAbelianGroup, GroupElement, cokernel, smith_normal_form
from .generators import ObstructionPresent, generator_classes, wpp_generators
from .hjfrac import SingularityType, dual_fraction, hj_eval, hj_expand, inverse_type
from .kkalg import KKInconsistency, kk_presentation, monomial_basis
from .resolution import minimal_resolution
from .sodbuilder import build_collection, sod_report, untwist
from .toricfan import FanError, brauer_from_rays, divisor_class_groups, reorder, validate_fan, wpp_fan

__version__ = "0.1.0"

__all__ = [
    "FanError",
    "FgAbelianGroup",
    "GroupElement",
    "KKInconsistency",
    "ObstructionPresent",
    "SingularityType",
    "beta_relations",
    "brauer_from_rays",
    "build_collection",
    "cokernel",
    "divisor_class_groups",
    "dual_fraction",
    "g0_twisted",
    "g0_untwisted",
    "generator_classes",
    "hj_eval",
    "hj_expand",
    "inverse_type",
    "ip_cokernel",
    "kk_presentation",
    "minimal_resolution",
    "monomial_basis",
    "reorder",
    "smith_normal_form",
    "sod_report",
    "standard_beta",
    "untwist",
    "validate_fan",
    "wpp_fan",
    "wpp_generators",
]
