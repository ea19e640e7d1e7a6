"""Guess & Check codes for correcting a few deletions, with experiment and
file-synchronization harnesses."""
from .bits import as_bits, delete_at, is_subsequence, to_str
from .channel import deletion_channel, trial_rng
from .experiments import (FailureStats, TrialConfig, bound_delta1, exhaustive_failure_rate,
                          rate_and_case_report, run_trials)
from .gc import (DecodeOutcome, GcParams, gc_decode, gc_decode_with_parities, gc_encode,
                 precoded_bits, recover_parities)
from .gf2m import Field, get_field
from .mds import ConfigError, MdsCode
from .sync import SyncConfig, SyncResult, sync_run
from .vt import vt_repair, vt_syndrome

__version__ = "0.1.0"

__all__ = [
    "as_bits", "delete_at", "is_subsequence", "to_str",
    "deletion_channel", "trial_rng",
    "FailureStats", "TrialConfig", "bound_delta1", "exhaustive_failure_rate",
    "rate_and_case_report", "run_trials",
    "DecodeOutcome", "GcParams", "gc_decode", "gc_decode_with_parities", "gc_encode",
    "precoded_bits", "recover_parities",
    "Field", "get_field", "ConfigError", "MdsCode",
    "SyncConfig", "SyncResult", "sync_run", "vt_repair", "vt_syndrome",
]
