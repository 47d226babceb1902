"""Shellsort increment-sequence laboratory."""
from .analytics import ExperimentRecord, FitResult, ak_stats, fit_exponent, lower_bound, mc_estimate
from .codec import Descriptor, decode_trace, descr_length, encode_trace
from .increments import FAMILIES, IncrementSequence, generate, validate
from .permcore import chain_inversions, enumerate_permutations, inversion_count, random_permutation
from .simpleproc import MinorSchedule, minor_candidate, minor_oracle, simple_apply
from .sorter import SortTrace, run_pass, shellsort, total_inversions

__version__ = "0.1.0"
