"""Reduced enveloping algebras of sl(n) in characteristic p."""

from .blocks import (
    BlockReport,
    CentralSeparationError,
    DimensionPolynomial,
    FitError,
    KostantReport,
    SimpleInfo,
    check_separation,
    dimension_polynomial,
    fit_polynomial,
    frobenius_center_defect,
    highest_weights,
    joint_generalized_eigenspace,
    kostant_check,
    kw_check,
    kw_codim,
    simples_in_block,
    translate,
)
from .center import BracketRelationError, central_operators, central_scalars, check_bracket_relations
from .lie import Basis, PChar, RestrictedLie, pchar, restricted_lie
from .verma import Straightener, baby_verma, baby_verma_weights
from .weylmod import UnsupportedWeightError, weyl_module, weyl_module_weights

__all__ = [
    "Basis",
    "BlockReport",
    "BracketRelationError",
    "CentralSeparationError",
    "DimensionPolynomial",
    "FitError",
    "KostantReport",
    "PChar",
    "RestrictedLie",
    "SimpleInfo",
    "Straightener",
    "UnsupportedWeightError",
    "baby_verma",
    "baby_verma_weights",
    "central_operators",
    "central_scalars",
    "check_bracket_relations",
    "check_separation",
    "dimension_polynomial",
    "fit_polynomial",
    "frobenius_center_defect",
    "highest_weights",
    "joint_generalized_eigenspace",
    "kostant_check",
    "kw_check",
    "kw_codim",
    "pchar",
    "restricted_lie",
    "simples_in_block",
    "translate",
    "weyl_module",
    "weyl_module_weights",
]
