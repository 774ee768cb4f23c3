import numpy as np
import pytest

from nent import (
    Kernel,
    LsbOp,
    OpKind,
    RangeError,
    StreamBlock,
    apply_conventional,
    checksum_apply,
    checksum_encode,
    checksum_recover,
    derive_params,
)
from tests.test_ops import admitted_block, make_op

P3 = derive_params(3, 32)


def test_encode_example():
    cb = checksum_encode(StreamBlock(P3, [[1], [2], [3]]))
    assert cb.data.ravel().tolist() == [1, 2, 3, 6]


def test_encode_zero():
    cb = checksum_encode(StreamBlock(P3, np.zeros((3, 4))))
    assert not cb.data.any()


def test_encode_rejects_31_bit_inputs():
    v = 1 << 30  # needs 31 bits; the m=3 checksum limit is 30
    with pytest.raises(RangeError):
        checksum_encode(StreamBlock(P3, [[v], [0], [0]]))
    ok = (1 << 29) - 1
    checksum_encode(StreamBlock(P3, [[ok], [ok], [ok]]))


def test_scale_preserves_relation():
    cb = checksum_encode(StreamBlock(P3, [[1], [2], [3]]))
    out = checksum_apply(LsbOp(OpKind.SCALE, Kernel.of_scalar(2)), cb)
    assert out.data.ravel().tolist() == [2, 4, 6, 12]


def test_permutation_preserves_relation():
    rng = np.random.default_rng(0)
    block = StreamBlock(P3, rng.integers(-99, 100, (3, 8)))
    op = LsbOp(OpKind.PERMUTATION, Kernel.of_permutation(rng.permutation(8)))
    out = checksum_apply(op, checksum_encode(block))
    assert np.array_equal(out.data[3], out.data[:3].sum(axis=0))


def test_conv_preserves_relation():
    rng = np.random.default_rng(1)
    block = StreamBlock(P3, rng.integers(-500, 500, (3, 24)))
    op = LsbOp(OpKind.CIRCULAR_CONVOLUTION, Kernel.of_vector(rng.integers(-4, 5, 6)))
    out = checksum_apply(op, checksum_encode(block))
    assert np.array_equal(out.data[3], out.data[:3].sum(axis=0))


def test_additive_op_checksum_correction():
    # kernel must enter the checksum stream as m*g for the relation to survive
    rng = np.random.default_rng(2)
    block = StreamBlock(P3, rng.integers(-99, 100, (3, 10)))
    op = LsbOp(OpKind.ELEMENTWISE_ADD, Kernel.of_vector(rng.integers(-9, 10, 10)))
    out = checksum_apply(op, checksum_encode(block))
    assert np.array_equal(out.data[3], out.data[:3].sum(axis=0))
    out = checksum_apply(
        LsbOp(OpKind.ELEMENTWISE_SUB, op.kernel), checksum_encode(block)
    )
    assert np.array_equal(out.data[3], out.data[:3].sum(axis=0))


def test_recover_examples():
    cb = checksum_encode(StreamBlock(P3, [[1], [2], [3]]))
    cb.data[1] = -999  # poison the "failed" stream
    rec = checksum_recover(cb, failed=1)
    assert rec.data.ravel().tolist() == [1, 2, 3]

    cb2 = checksum_encode(StreamBlock(P3, [[1], [2], [3]]))
    assert checksum_recover(cb2, failed=3).data.ravel().tolist() == [1, 2, 3]
    assert checksum_recover(cb2, failed=None).data.ravel().tolist() == [1, 2, 3]


@pytest.mark.parametrize("kind", list(OpKind))
@pytest.mark.parametrize("m", (3, 4, 8))
def test_end_to_end_equivalence(kind, m):
    p = derive_params(m, 32)
    rng = np.random.default_rng(hash((kind.value, m, "cs")) % 2**32)
    n = 48
    op = make_op(kind, n, rng, m)
    block = admitted_block(p, op, seed=m + 1, n=n)
    expected = apply_conventional(op, block).data
    out = checksum_apply(op, checksum_encode(block))
    for r in list(range(m + 1)) + [None]:
        damaged = type(out)(out.params, out.data.copy())
        if r is not None:
            damaged.data[r] = -(1 << 40)
        rec = checksum_recover(damaged, failed=r)
        assert np.array_equal(rec.data, expected), (kind, m, r)
