"""Double-and-add-always point multiplication controller.

Each iteration issues a doubling and an addition on twin unified-operation
datapaths and a key-bit multiplexer keeps one of the two results. The
controller model charges one group-operation latency per iteration (the two
datapaths are costed as running side by side), so an m-bit scalar in paper
mode costs (m - 1)(5m/2 + 6) cycles whatever its value.

Paper mode always runs bits m-2..0. The accumulator starts at P when the
scalar's top bit is set and at the identity otherwise; doubling the identity
returns the identity, so iterations above the scalar's leading one leave it
untouched and the surviving accumulator is still k*P.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .group import (
    AffinePoint,
    CurveParams,
    NotOnCurveError,
    ProjectivePoint,
    to_projective,
    unified_point_op,
)
from .ledger import CycleLedger
from .words import Word256


class CycleMode(enum.Enum):
    PAPER = "paper"
    EXACT = "exact"


@dataclass
class PmResult:
    point: ProjectivePoint
    ledger: CycleLedger
    mode: CycleMode
    iterations: int
    zero_scalar: bool = False

    @property
    def cycles(self) -> int:
        return self.ledger.total


def _scalar_word(k) -> Word256:
    if isinstance(k, Word256):
        return k
    return Word256.from_int(k)


def point_multiply(k, P: AffinePoint, c: CurveParams, mode: CycleMode = CycleMode.PAPER,
                   multiplier: str = "radix4", trace: bool = True) -> PmResult:
    """k*P for k given as a Word256 (or a non-negative int below 2^m)."""
    mode = CycleMode(mode)
    kw = _scalar_word(k)
    m = c.bits
    if m < 256 and not kw < Word256.from_int(1 << m):
        raise ValueError(f"scalar wider than the {m}-bit datapath")
    if not c.contains(P):
        raise NotOnCurveError(f"input point is not on {c.name}")
    ledger = CycleLedger(trace=[] if trace else None)
    if kw.is_zero():
        return PmResult(c.identity(), ledger, mode, 0, zero_scalar=True)

    Pp = to_projective(P)
    if mode is CycleMode.PAPER:
        top = m - 1
        T = Pp if kw.bit(top) else c.identity()
    else:
        top = max(i for i in range(m) if kw.bit(i))
        T = Pp

    iterations = 0
    for i in range(top - 1, -1, -1):
        doubling, addition = ledger.nested(), ledger.nested()
        D = unified_point_op(T, T, c, doubling, multiplier)
        A = unified_point_op(D, Pp, c, addition, multiplier)
        # twin datapaths run side by side: the iteration takes the slower one
        ledger.issue("pm_iteration", pm=max(doubling.total, addition.total))
        T = A if kw.bit(i) else D
        iterations += 1
    return PmResult(T, ledger, mode, iterations)


def pm_cycles(bits: int) -> int:
    """(m - 1)(5m/2 + 6) = 5m^2/2 + 7m/2 - 6."""
    return (bits - 1) * (5 * bits // 2 + 6)


@dataclass(frozen=True)
class LatencyReport:
    cycles: int
    clock_mhz: float
    bits: int
    time_s: float
    throughput_bps: float | None

    def as_dict(self) -> dict:
        return {
            "latency_cycles": self.cycles,
            "clock_mhz": self.clock_mhz,
            "operand_bits": self.bits,
            "time_s": self.time_s,
            "throughput_bps": self.throughput_bps,
        }


def latency_report(cycles: int, clock_mhz: float, bits: int = 256) -> LatencyReport:
    if clock_mhz <= 0:
        raise ValueError("clock frequency must be positive")
    time_s = cycles / (clock_mhz * 1e6)
    throughput = bits / time_s if cycles else None
    return LatencyReport(cycles, clock_mhz, bits, time_s, throughput)


def report(r: PmResult, clock_mhz: float = 117.809, bits: int = 256) -> LatencyReport:
    return latency_report(r.cycles, clock_mhz, bits)
