"""Staged (-1)-curve contraction for log pairs on blown-up ruled surfaces."""

from .contraction import ContractionError, contract, initial_state
from .generator import GeneratorParams, random_instance
from .goodmodel import GoodModelPlan, InvalidInstance, run
from .lattice import DivisorClass, LatticeContext, intersect
from .surface import SurfacePair, validate
from .verify import CHECKS, verify

__all__ = [
    "CHECKS",
    "ContractionError",
    "DivisorClass",
    "GeneratorParams",
    "GoodModelPlan",
    "InvalidInstance",
    "LatticeContext",
    "SurfacePair",
    "contract",
    "initial_state",
    "intersect",
    "random_instance",
    "run",
    "validate",
    "verify",
]
