"""Fuzzy statistical convergence diagnostics for finite prefixes of real sequences."""

from .core import (
    DEFAULT_CONFIG,
    UNBOUNDED,
    DefectEstimate,
    EstimatorConfig,
    IndexSet,
    OutOfEvidenceError,
    RejectedCandidate,
    SequencePrefix,
    UsageError,
    Verdict,
    tail_liminf,
    tail_limsup,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "UNBOUNDED",
    "DefectEstimate",
    "EstimatorConfig",
    "IndexSet",
    "OutOfEvidenceError",
    "RejectedCandidate",
    "SequencePrefix",
    "UsageError",
    "Verdict",
    "tail_liminf",
    "tail_limsup",
]
