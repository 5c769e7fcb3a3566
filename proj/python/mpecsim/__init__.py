"""Message-passing error correction simulator for the concatenated
[[9,1,3]] Bacon-Shor code.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (
    __version__,
    builder_version,
    census,
    chain_check,
    decode_syndrome,
    enumerate_box_cases,
    estimate_direct,
    estimate_fixed,
    failure_polynomial,
    golden_cases,
    improvement_ratio,
    replay_golden,
    run_sweep,
    run_trial,
    weight_schedule,
)

__all__ = [
    "__version__",
    "builder_version",
    "census",
    "chain_check",
    "decode_syndrome",
    "enumerate_box_cases",
    "estimate_direct",
    "estimate_fixed",
    "failure_polynomial",
    "golden_cases",
    "improvement_ratio",
    "replay_golden",
    "run_sweep",
    "run_trial",
    "weight_schedule",
]
