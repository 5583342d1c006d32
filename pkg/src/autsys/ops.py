"""Deletion, contraction and their restriction / dotting aliases.

Both operations land on the ground ``P - C``. Contraction keeps the traces
``A - C`` of every member; deletion keeps the members avoiding ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import AutonomousSystem, Subset, compress

DELETE = "delete"
CONTRACT = "contract"
QUOTIENT = "quotient"


def contract(P: AutonomousSystem, C: Subset) -> AutonomousSystem:
    C = P.mask(C)
    keep = P.full & ~C
    return AutonomousSystem(P.labels(keep), tuple({compress(m, keep) for m in P.family}))


def delete(P: AutonomousSystem, C: Subset) -> AutonomousSystem:
    C = P.mask(C)
    keep = P.full & ~C
    return AutonomousSystem(P.labels(keep), tuple(compress(m, keep) for m in P.family if not m & C))


def restrict(P: AutonomousSystem, X: Subset) -> AutonomousSystem:
    """``P|X``: contract everything outside ``X``."""
    return contract(P, P.full & ~P.mask(X))


def dot(P: AutonomousSystem, X: Subset) -> AutonomousSystem:
    """``P.X``: delete everything outside ``X``."""
    return delete(P, P.full & ~P.mask(X))


@dataclass(frozen=True)
class ReductionStep:
    """One step of a minor sequence.

    ``operand`` is a sorted label tuple for delete/contract and a
    :class:`~autsys.quotient.Partition` for quotient. Labels rather than masks
    keep a step meaningful on its own, independent of the system's indexing.
    """

    kind: str
    operand: Union[tuple, "object"]

    def __post_init__(self):
        if self.kind not in (DELETE, CONTRACT, QUOTIENT):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind != QUOTIENT:
            object.__setattr__(self, "operand", tuple(sorted(self.operand)))

    def apply(self, P: AutonomousSystem) -> AutonomousSystem:
        if self.kind == DELETE:
            return delete(P, self.operand)
        if self.kind == CONTRACT:
            return contract(P, self.operand)
        from .quotient import quotient_by_partition

        return quotient_by_partition(P, self.operand)

    def describe(self) -> str:
        if self.kind == QUOTIENT:
            cells = " | ".join(",".join(c) for c in self.operand.cells)
            return f"quotient by cells [{cells}]"
        what = "{" + ",".join(self.operand) + "}"
        return f"{self.kind} {what}"
