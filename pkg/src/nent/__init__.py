"""Fail-stop tolerant processing of integer data streams.

m >= 3 streams are superimposed pairwise ("entangled") before a linear,
sesquilinear or bijective operation runs on them unchanged; all m results are
then recoverable from any m-1 of the processed streams by shift-add
extraction.  A checksum-stream baseline and a benchmark harness are included
for comparison.
"""

from .blocks import EntangledBlock, StreamBlock
from .checksum import ChecksumBlock, checksum_apply, checksum_encode, checksum_recover
from .codec import (
    disentangle,
    disentangle_inplace,
    disentangle_m3,
    entangle,
    entangle_inplace,
)
from .counters import OpCounters
from .errors import (
    AdmissionError,
    FormatError,
    NentError,
    ParameterError,
    RangeError,
    RecoveryMismatchError,
    UnrecoverableError,
)
from .ops import (
    Kernel,
    LsbOp,
    OpBoundReport,
    OpKind,
    admit,
    apply_conventional,
    apply_entangled,
    self_entangle_kernel,
)
from .params import (
    CodecParams,
    RangeBound,
    checksum_bitwidth,
    checksum_range,
    derive_params,
    input_range,
    output_range,
    word_range,
)
from .pipeline import FailureSpec, RunReport, Scheme, run_pipeline, sweep_failures
from .streamfile import read_stream_file, write_stream_file

__version__ = "0.1.0"

__all__ = [
    "AdmissionError",
    "ChecksumBlock",
    "CodecParams",
    "EntangledBlock",
    "FailureSpec",
    "FormatError",
    "Kernel",
    "LsbOp",
    "NentError",
    "OpBoundReport",
    "OpCounters",
    "OpKind",
    "ParameterError",
    "RangeBound",
    "RangeError",
    "RecoveryMismatchError",
    "RunReport",
    "Scheme",
    "StreamBlock",
    "UnrecoverableError",
    "admit",
    "apply_conventional",
    "apply_entangled",
    "checksum_apply",
    "checksum_bitwidth",
    "checksum_encode",
    "checksum_range",
    "checksum_recover",
    "derive_params",
    "disentangle",
    "disentangle_inplace",
    "disentangle_m3",
    "entangle",
    "entangle_inplace",
    "input_range",
    "output_range",
    "read_stream_file",
    "run_pipeline",
    "self_entangle_kernel",
    "sweep_failures",
    "word_range",
    "write_stream_file",
]
