"""Fail-stop execution harness.

Workers are logical: each stream's computation owns its buffer, and a
fail-stop event means that buffer never becomes available.  The harness
poisons failed buffers with an extreme alternating pattern before recovery,
so any accidental read of a "dead" stream surfaces as a wrong result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .blocks import StreamBlock
from .checksum import checksum_apply, checksum_encode, checksum_recover
from .codec import disentangle, entangle
from .counters import OpCounters
from .errors import AdmissionError, ParameterError, RecoveryMismatchError
from .ops import LsbOp, admit, admit_against, apply_conventional, apply_entangled
from .params import checksum_range, word_range


class Scheme(enum.Enum):
    PLAIN = "plain"
    ENTANGLED = "entangled"
    CHECKSUM = "checksum"


@dataclass(frozen=True)
class FailureSpec:
    """Which single worker (if any) fails, under which protection scheme."""

    scheme: Scheme
    fixed: Optional[int] = None  # FIXED(index)
    seed: Optional[int] = None  # RANDOM(seed); overrides fixed

    def resolve(self, workers: int) -> Optional[int]:
        if self.seed is not None:
            return int(np.random.default_rng(self.seed).integers(workers))
        if self.fixed is not None:
            if not 0 <= self.fixed < workers:
                raise ParameterError(
                    f"fixed failure index {self.fixed} out of range for "
                    f"{workers} workers"
                )
            return self.fixed
        return None


@dataclass
class RunReport:
    outputs: StreamBlock
    failed_worker: Optional[int]
    recovered: bool
    counters: OpCounters = field(default_factory=OpCounters)


def worker_count(scheme: Scheme, m: int) -> int:
    return m + 1 if scheme is Scheme.CHECKSUM else m


def poison_pattern(w: int, n: int) -> np.ndarray:
    """Alternating min/max w-bit words; reads of a dead buffer cannot go unnoticed."""
    pat = np.empty(n, dtype=np.int64)
    pat[0::2] = -(1 << (w - 1))
    pat[1::2] = (1 << (w - 1)) - 1
    return pat


def _admission_check(op: LsbOp, block: StreamBlock, scheme: Scheme) -> None:
    bound = int(np.abs(block.data.astype(object)).max()) if block.data.size else 0
    p = block.params
    if scheme is Scheme.ENTANGLED:
        report = admit(op, bound, p)
    elif scheme is Scheme.CHECKSUM:
        report = admit_against(op, bound, checksum_range(p.m, p.w).hi)
    else:
        report = admit_against(op, bound, word_range(p.w).hi)
    if not report.admitted:
        raise AdmissionError(
            f"op {op.kind.value} not admitted under scheme {scheme.value}: "
            f"worst case {report.worst_case_output} > limit {report.limit}",
            report=report,
        )


def run_pipeline(op: LsbOp, block: StreamBlock, spec: FailureSpec) -> RunReport:
    """Run per-stream workers, inject at most one fail-stop, roll forward."""
    _admission_check(op, block, spec.scheme)
    p = block.params
    counters = OpCounters()
    r = spec.resolve(worker_count(spec.scheme, p.m))

    if spec.scheme is Scheme.ENTANGLED:
        ent = entangle(block, counters)
        out = apply_entangled(op, ent, counters)
        if r is not None:
            out.data[r] = poison_pattern(p.w, out.n)
        recovered = disentangle(out, failed=r, counters=counters)
        return RunReport(recovered, r, True, counters)

    if spec.scheme is Scheme.CHECKSUM:
        enc = checksum_encode(block, counters)
        out = checksum_apply(op, enc, counters)
        if r is not None:
            out.data[r] = poison_pattern(p.w, out.n)
        recovered = checksum_recover(out, failed=r, counters=counters)
        return RunReport(recovered, r, True, counters)

    out = apply_conventional(op, block, counters)
    if r is not None:
        out.data[r] = poison_pattern(p.w, out.n)
        return RunReport(out, r, False, counters)
    return RunReport(out, None, True, counters)


def sweep_failures(op: LsbOp, block: StreamBlock, scheme: Scheme) -> list[RunReport]:
    """Run FIXED(r) for every worker plus no-failure; recovered outputs must agree."""
    workers = worker_count(scheme, block.params.m)
    reports = [run_pipeline(op, block, FailureSpec(scheme, fixed=r)) for r in range(workers)]
    reports.append(run_pipeline(op, block, FailureSpec(scheme)))
    reference = reports[-1].outputs.data
    for rep in reports:
        if not rep.recovered:
            alive = [i for i in range(block.params.m) if i != rep.failed_worker]
            if not np.array_equal(rep.outputs.data[alive], reference[alive]):
                raise RecoveryMismatchError(
                    f"surviving streams differ for failed worker {rep.failed_worker}"
                )
        elif not np.array_equal(rep.outputs.data, reference):
            raise RecoveryMismatchError(
                f"recovered outputs differ for failed worker {rep.failed_worker}"
            )
    return reports
