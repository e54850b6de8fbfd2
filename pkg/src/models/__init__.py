"""
Theorem engines: structural checks, integral theorems and structural Liouville
"""

from .reports import CheckReport, StructuralVariant, TransformKind, encode_json, reports_to_frame
from .structural_models import StructuralAnalysisEngine
from .integral_theorems import IntegralTheoremEngine, PompeiuResult, transformed_expr
from .liouville_models import LiouvilleAnalysisEngine, ModulusScan, PhiRecovery
from .acceptance import AcceptanceSuite, CriterionResult

__all__ = [
    'CheckReport',
    'StructuralVariant',
    'TransformKind',
    'encode_json',
    'reports_to_frame',
    'StructuralAnalysisEngine',
    'IntegralTheoremEngine',
    'PompeiuResult',
    'transformed_expr',
    'LiouvilleAnalysisEngine',
    'ModulusScan',
    'PhiRecovery',
    'AcceptanceSuite',
    'CriterionResult',
]
