"""Clock-cycle accounting shared by every datapath unit."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

UNITS = ("addsub", "multiply", "reduce", "group_op", "pm")


@dataclass
class CycleLedger:
    """Elapsed cycles per unit, plus the work and issue logs behind them.

    ``counters`` hold elapsed cycles at the level that issued an operation:
    a bare ``mod_mul`` charges ``multiply`` and ``reduce``, a unified point
    operation charges ``group_op`` once for its whole level schedule, a
    point-multiply iteration charges ``pm``. ``total`` is their sum.

    ``work`` accumulates the cycles of every issued unit operation at every
    nesting depth (the scheduled work, not the elapsed time), ``issued``
    counts operations by kind, and ``trace`` (when enabled) keeps the issue
    order. Nested ledgers share those three logs with their parent.
    """

    counters: dict = field(default_factory=lambda: dict.fromkeys(UNITS, 0))
    work: Counter = field(default_factory=Counter)
    issued: Counter = field(default_factory=Counter)
    trace: list | None = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counters.values())

    def charge(self, unit: str, cycles: int) -> None:
        if unit not in self.counters:
            raise KeyError(f"unknown unit {unit!r}")
        self.counters[unit] += cycles

    def issue(self, kind: str, **unit_cycles: int) -> int:
        """Record one operation of ``kind`` and charge its unit cycles.

        Returns the cycles the operation took (sum over its units, which run
        back to back).
        """
        cycles = 0
        for unit, n in unit_cycles.items():
            self.counters[unit] += n
            self.work[unit] += n
            cycles += n
        self.issued[kind] += 1
        if self.trace is not None:
            self.trace.append(kind)
        return cycles

    def nested(self) -> "CycleLedger":
        """Fresh elapsed counters sharing this ledger's work/issue logs."""
        return CycleLedger(work=self.work, issued=self.issued, trace=self.trace)
