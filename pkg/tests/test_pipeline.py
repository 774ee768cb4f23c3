import numpy as np
import pytest

from nent import (
    AdmissionError,
    FailureSpec,
    Kernel,
    LsbOp,
    OpKind,
    ParameterError,
    Scheme,
    StreamBlock,
    apply_conventional,
    derive_params,
    run_pipeline,
    sweep_failures,
)
from tests.test_ops import admitted_block, make_op

P3 = derive_params(3, 32)


def conv_op(n, seed=0, nk=8):
    rng = np.random.default_rng(seed)
    return LsbOp(OpKind.CIRCULAR_CONVOLUTION, Kernel.of_vector(rng.integers(-3, 4, nk)))


def test_entangled_fixed_failure_matches_conventional():
    op = conv_op(64)
    block = admitted_block(P3, op, seed=0, n=64)
    report = run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED, fixed=1))
    assert report.recovered and report.failed_worker == 1
    assert np.array_equal(report.outputs.data, apply_conventional(op, block).data)


def test_plain_failure_unrecovered():
    op = conv_op(32)
    block = admitted_block(P3, op, seed=1, n=32)
    report = run_pipeline(op, block, FailureSpec(Scheme.PLAIN, fixed=0))
    assert not report.recovered and report.failed_worker == 0
    expected = apply_conventional(op, block).data
    assert np.array_equal(report.outputs.data[1:], expected[1:])
    assert not np.array_equal(report.outputs.data[0], expected[0])


def test_random_failure_deterministic():
    op = conv_op(32)
    block = admitted_block(P3, op, seed=2, n=32)
    spec = FailureSpec(Scheme.ENTANGLED, seed=1234)
    a = run_pipeline(op, block, spec)
    b = run_pipeline(op, block, spec)
    assert a.failed_worker == b.failed_worker
    assert np.array_equal(a.outputs.data, b.outputs.data)


def test_fixed_index_out_of_range():
    op = conv_op(16)
    block = admitted_block(P3, op, seed=3, n=16)
    with pytest.raises(ParameterError):
        run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED, fixed=3))
    # checksum has m+1 workers, so index m is valid there
    run_pipeline(op, block, FailureSpec(Scheme.CHECKSUM, fixed=3))


def test_unadmitted_op_rejected():
    g = np.full(4, 10**6)
    op = LsbOp(OpKind.CIRCULAR_CONVOLUTION, Kernel.of_vector(g))
    block = StreamBlock(P3, np.full((3, 4), 1000))
    with pytest.raises(AdmissionError):
        run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED))


@pytest.mark.parametrize("scheme", [Scheme.ENTANGLED, Scheme.CHECKSUM, Scheme.PLAIN])
@pytest.mark.parametrize("m", (3, 8))
def test_sweep_failures_all_indices_agree(scheme, m):
    p = derive_params(m, 32)
    op = conv_op(48, seed=m)
    block = admitted_block(p, op, seed=m, n=48)
    reports = sweep_failures(op, block, scheme)
    workers = m + 1 if scheme is Scheme.CHECKSUM else m
    assert len(reports) == workers + 1
    expected = apply_conventional(op, block).data
    for rep in reports:
        if rep.recovered:
            assert np.array_equal(rep.outputs.data, expected)


@pytest.mark.parametrize("kind", list(OpKind))
def test_sweep_poisoned_opacity_all_ops(kind):
    m = 3
    p = derive_params(m, 32)
    rng = np.random.default_rng(hash((kind.value, "sweep")) % 2**32)
    n = 32
    op = make_op(kind, n, rng, m)
    block = admitted_block(p, op, seed=11, n=n)
    for scheme in (Scheme.ENTANGLED, Scheme.CHECKSUM):
        sweep_failures(op, block, scheme)


def test_entangled_counters_m3_meet_closed_form():
    # at m=3 the codec does exactly 2*m*n add-ops for entangle + disentangle
    op = conv_op(128)
    block = admitted_block(P3, op, seed=4, n=128)
    report = run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED, fixed=0))
    c = report.counters
    assert c.encode_ops + c.decode_ops <= 2 * 3 * 128


@pytest.mark.parametrize("m", (3, 4, 5, 8))
def test_codec_add_count_is_3m_minus_3_per_position(m):
    # general tally: m adds to entangle, 2m-3 to disentangle; equals the
    # 2*m*n closed form only at m=3 and exceeds it beyond that
    p = derive_params(m, 32)
    op = conv_op(64, seed=m)
    block = admitted_block(p, op, seed=m, n=64)
    report = run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED, fixed=0))
    c = report.counters
    assert c.encode_ops + c.decode_ops == (3 * m - 3) * 64


def test_checksum_counters():
    op = LsbOp(OpKind.SCALE, Kernel.of_scalar(2))
    block = StreamBlock(P3, np.ones((3, 100)))
    report = run_pipeline(op, block, FailureSpec(Scheme.CHECKSUM, fixed=0))
    c = report.counters
    assert c.encode_ops == 2 * 100  # (m-1) * n
    assert c.decode_ops == 2 * 100
    assert c.op_ops == 4 * 100  # m+1 streams


def test_counters_exclude_shifts():
    op = conv_op(64, seed=5)
    block = admitted_block(P3, op, seed=5, n=64)
    report = run_pipeline(op, block, FailureSpec(Scheme.ENTANGLED, fixed=2))
    c = report.counters
    assert c.shift_ops > 0
    assert c.total == c.encode_ops + c.op_ops + c.decode_ops
