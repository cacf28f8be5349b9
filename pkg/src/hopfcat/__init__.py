"""Exact verification engine for finite braided tensor categories containing sRep(W)."""
from __future__ import annotations

from .hopf import HopfAlgebra, QTStructure, drinfeld_double, nichols
from .metric import enumerate_B, torsor_table
from .scalar import CycScalar
from .verifier import RunConfig, VerificationReport, run_all

__version__ = "0.1.0"

__all__ = [
    "CycScalar",
    "HopfAlgebra",
    "QTStructure",
    "RunConfig",
    "VerificationReport",
    "drinfeld_double",
    "enumerate_B",
    "nichols",
    "run_all",
    "torsor_table",
]
