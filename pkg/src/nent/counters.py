"""Arithmetic-operation counters (additions/multiplications).

Shifts are tallied separately and never included in the add/mul totals,
mirroring how the cost model discounts them.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounters:
    encode_ops: int = 0
    op_ops: int = 0
    decode_ops: int = 0
    shift_ops: int = 0

    @property
    def total(self) -> int:
        """Add/mul total across all phases; shifts excluded."""
        return self.encode_ops + self.op_ops + self.decode_ops

    def __add__(self, other: "OpCounters") -> "OpCounters":
        return OpCounters(
            self.encode_ops + other.encode_ops,
            self.op_ops + other.op_ops,
            self.decode_ops + other.decode_ops,
            self.shift_ops + other.shift_ops,
        )
