# SPDX-License-Identifier: CC-BY-SA-4.0

"""Sampling-based certificates and the composite diagnosis."""

from relanosov_lab.certifiers.diagnosis import (
    Diagnosis,
    DiagnosisTag,
    decide_tag,
    diagnose,
    replay_diagnosis,
)
from relanosov_lab.certifiers.divergence import (
    DIVERGENT,
    NOT_DIVERGENT,
    CertificationError,
    DivergenceReport,
    ShellRecord,
    certify_divergence,
    check_k,
    divergence_verdict,
)
from relanosov_lab.certifiers.domination import (
    DominationFit,
    FlowProbe,
    fit_domination,
    fit_weak_domination,
    probe_flow_domination,
)
from relanosov_lab.certifiers.dynamics import (
    ConvergenceRecord,
    DynamicsReport,
    NotTransverse,
    check_dynamics_preserving,
    draw_test_subspaces,
    test_dynamics_preserving,
)
from relanosov_lab.certifiers.limit_set import (
    FiberReport,
    InsufficientLabels,
    LimitSample,
    LimitSetSample,
    TransversalityAudit,
    analyze_fibers,
    audit_transversality,
    limit_flag,
    sample_limit_set,
)
from relanosov_lab.certifiers.stability import (
    StabilityRecord,
    StabilitySweep,
    peripheral_components,
    perturb_type_preserving,
    stability_sweep,
)

__all__ = [
    "DIVERGENT",
    "NOT_DIVERGENT",
    "CertificationError",
    "ConvergenceRecord",
    "Diagnosis",
    "DiagnosisTag",
    "DivergenceReport",
    "DominationFit",
    "DynamicsReport",
    "FiberReport",
    "FlowProbe",
    "InsufficientLabels",
    "LimitSample",
    "LimitSetSample",
    "NotTransverse",
    "ShellRecord",
    "StabilityRecord",
    "StabilitySweep",
    "TransversalityAudit",
    "analyze_fibers",
    "audit_transversality",
    "certify_divergence",
    "check_dynamics_preserving",
    "check_k",
    "decide_tag",
    "diagnose",
    "divergence_verdict",
    "draw_test_subspaces",
    "fit_domination",
    "fit_weak_domination",
    "limit_flag",
    "peripheral_components",
    "perturb_type_preserving",
    "probe_flow_domination",
    "replay_diagnosis",
    "sample_limit_set",
    "stability_sweep",
    "test_dynamics_preserving",
]
