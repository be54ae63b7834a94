"""Instance generation, fixtures, the theorem suite and the classical oracle."""

from .fixtures import FIXTURE_NAMES, all_fixtures, fixture, fixture_document_instance
from .generate import GenParams, InstanceStream, enumerate_ideals, generate_instances
from .oracle import classical_oracle
from .suite import (
    ALL_THEOREMS,
    CATALOG,
    COUNTEREXAMPLE,
    CONFIRMED,
    HYPOTHESIS_NOT_MET,
    UNIVERSAL,
    TheoremFinding,
    is_classical,
    replay,
    run_theorem_suite,
)

__all__ = [
    "ALL_THEOREMS", "CATALOG", "CONFIRMED", "COUNTEREXAMPLE", "FIXTURE_NAMES", "GenParams",
    "HYPOTHESIS_NOT_MET", "InstanceStream", "TheoremFinding", "UNIVERSAL", "all_fixtures",
    "classical_oracle", "enumerate_ideals", "fixture", "fixture_document_instance",
    "generate_instances", "is_classical", "replay", "run_theorem_suite",
]
