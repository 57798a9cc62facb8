"""Unified twisted Edwards point operation on projective coordinates.

One routine serves both addition and doubling; there is no doubling formula
anywhere in the datapath. The operation runs as a fixed six-level schedule,
where a level takes as long as its slowest unit (multiplier levels m/2 + 1
cycles, the add/sub level 1 cycle):

    L1  t1 = X1*X2   A = Z1*Z2   C2 = X1*Y2   D1 = Y1*Y2   D2 = X2*Y1
    L2  B = A^2      C1 = a*t1   t2 = C2*D2
    L3  E = d*t2
    L4  F = B - E    G = B + E   t3 = C2 + D2   t4 = D1 - C1
    L5  u = A*F      v = A*G     Z3 = F*G
    L6  X3 = u*t3    Y3 = v*t4

That is 13 multiplications, 1 squaring and 4 additions/subtractions, and
5(m/2 + 1) + 1 = 5m/2 + 6 cycles.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .alu import AddSub, FieldElement, FieldParams, mod_addsub, mod_mul, mod_sqr
from .ledger import CycleLedger


class NotOnCurveError(ValueError):
    pass


class DegenerateResultError(ArithmeticError):
    """The unified formula produced Z = 0 (only possible on incomplete curves)."""


@dataclass(frozen=True)
class AffinePoint:
    x: FieldElement
    y: FieldElement

    def ints(self) -> tuple[int, int]:
        return self.x.to_int(), self.y.to_int()


@dataclass(frozen=True)
class ProjectivePoint:
    X: FieldElement
    Y: FieldElement
    Z: FieldElement


@dataclass(frozen=True)
class CurveParams:
    """a*x^2 + y^2 = 1 + d*x^2*y^2 over ``field``."""

    field: FieldParams
    a: FieldElement
    d: FieldElement
    name: str
    base: AffinePoint | None = None
    complete: bool = field(init=False)

    def __post_init__(self):
        if self.a.field != self.field or self.d.field != self.field:
            raise ValueError("curve coefficients live in a different field")
        if self.a.is_zero() or self.d.is_zero() or self.a == self.d:
            raise ValueError("need a != 0, d != 0, a != d")
        p = self.field.p.to_int()
        complete = oracle.o_qr(self.a.to_int(), p) and not oracle.o_qr(self.d.to_int(), p)
        object.__setattr__(self, "complete", complete)
        if self.base is not None and not self.contains(self.base):
            raise NotOnCurveError(f"base point is not on {self.name}")

    @property
    def bits(self) -> int:
        return self.field.bits

    def oracle(self) -> oracle.OracleCurve:
        return oracle.OracleCurve(self.field.p.to_int(), self.a.to_int(), self.d.to_int())

    def elem(self, v: int) -> FieldElement:
        return FieldElement.from_int(self.field, v % self.field.p.to_int())

    def contains(self, P: AffinePoint) -> bool:
        if P.x.field != self.field or P.y.field != self.field:
            return False
        return oracle.o_on_curve(P.ints(), self.oracle())

    def point(self, x: int, y: int) -> AffinePoint:
        """Validated affine point from integer coordinates."""
        p = self.field.p.to_int()
        if not (0 <= x < p and 0 <= y < p):
            raise NotOnCurveError("coordinates not reduced")
        P = AffinePoint(FieldElement.from_int(self.field, x), FieldElement.from_int(self.field, y))
        if not self.contains(P):
            raise NotOnCurveError(f"({x:#x}, {y:#x}) is not on {self.name}")
        return P

    def identity(self) -> ProjectivePoint:
        zero, one = self.elem(0), self.elem(1)
        return ProjectivePoint(zero, one, one)


def to_projective(P: AffinePoint) -> ProjectivePoint:
    return ProjectivePoint(P.x, P.y, FieldElement.from_int(P.x.field, 1))


def to_affine(P: ProjectivePoint) -> AffinePoint:
    """(X/Z, Y/Z). Verification side only: uses the reference inverse."""
    if P.Z.is_zero():
        raise ZeroDivisionError("Z = 0 has no affine image")
    f = P.X.field
    p = f.p.to_int()
    zi = oracle.o_invmod(P.Z.to_int(), p)
    return AffinePoint(FieldElement.from_int(f, oracle.o_mulmod(P.X.to_int(), zi, p)),
                       FieldElement.from_int(f, oracle.o_mulmod(P.Y.to_int(), zi, p)))


def on_curve_projective(P: ProjectivePoint, c: CurveParams) -> bool:
    """(aX^2 + Y^2) Z^2 == Z^4 + d X^2 Y^2, checked on the reference side."""
    p, a, d = c.oracle()
    X, Y, Z = P.X.to_int(), P.Y.to_int(), P.Z.to_int()
    if Z == 0:
        return False
    X2, Y2, Z2 = X * X % p, Y * Y % p, Z * Z % p
    return (a * X2 + Y2) * Z2 % p == (Z2 * Z2 + d * X2 * Y2) % p


def point_equal(P: ProjectivePoint, Q: ProjectivePoint) -> bool:
    """Projective equality by cross-multiplication (uncharged comparator)."""
    return (mod_mul(P.X, Q.Z) == mod_mul(Q.X, P.Z)
            and mod_mul(P.Y, Q.Z) == mod_mul(Q.Y, P.Z))


def scale(P: ProjectivePoint, lam: FieldElement) -> ProjectivePoint:
    """(lam*X : lam*Y : lam*Z), the same projective point for lam != 0."""
    return ProjectivePoint(mod_mul(P.X, lam), mod_mul(P.Y, lam), mod_mul(P.Z, lam))


def negate(P: ProjectivePoint) -> ProjectivePoint:
    zero = FieldElement.from_int(P.X.field, 0)
    return ProjectivePoint(mod_addsub(zero, P.X, AddSub.SUB), P.Y, P.Z)


class _Level:
    """Issues one schedule level's operations and tracks its latency."""

    __slots__ = ("work", "multiplier", "latency")

    def __init__(self, work: CycleLedger, multiplier: str):
        self.work = work
        self.multiplier = multiplier
        self.latency = 0

    def _timed(self, fn, *args):
        t0 = self.work.total
        r = fn(*args)
        self.latency = max(self.latency, self.work.total - t0)
        return r

    def mul(self, x, y):
        return self._timed(mod_mul, x, y, self.work, self.multiplier)

    def sqr(self, x):
        return self._timed(mod_sqr, x, self.work, self.multiplier)

    def add(self, x, y):
        return self._timed(mod_addsub, x, y, AddSub.ADD, self.work)

    def sub(self, x, y):
        return self._timed(mod_addsub, x, y, AddSub.SUB, self.work)


def unified_point_op(P: ProjectivePoint, Q: ProjectivePoint, c: CurveParams,
                     ledger: CycleLedger | None = None,
                     multiplier: str = "radix4") -> ProjectivePoint:
    """P + Q (and 2P when Q is P) through the six-level schedule.

    Charges the schedule's elapsed cycles to ``ledger.counters['group_op']``;
    the individual unit operations land in the shared work/issue logs.
    """
    if ledger is None:
        ledger = CycleLedger(trace=None)
    work = ledger.nested()
    X1, Y1, Z1 = P.X, P.Y, P.Z
    X2, Y2, Z2 = Q.X, Q.Y, Q.Z
    elapsed = 0

    L = _Level(work, multiplier)
    t1 = L.mul(X1, X2)
    A = L.mul(Z1, Z2)
    C2 = L.mul(X1, Y2)
    D1 = L.mul(Y1, Y2)
    D2 = L.mul(X2, Y1)
    elapsed += L.latency

    L = _Level(work, multiplier)
    B = L.sqr(A)
    C1 = L.mul(c.a, t1)
    t2 = L.mul(C2, D2)
    elapsed += L.latency

    L = _Level(work, multiplier)
    E = L.mul(c.d, t2)
    elapsed += L.latency

    L = _Level(work, multiplier)
    F = L.sub(B, E)
    G = L.add(B, E)
    t3 = L.add(C2, D2)
    t4 = L.sub(D1, C1)
    elapsed += L.latency

    L = _Level(work, multiplier)
    u = L.mul(A, F)
    v = L.mul(A, G)
    Z3 = L.mul(F, G)
    elapsed += L.latency

    L = _Level(work, multiplier)
    X3 = L.mul(u, t3)
    Y3 = L.mul(v, t4)
    elapsed += L.latency

    ledger.issue("unified_op", group_op=elapsed)
    if Z3.is_zero():
        raise DegenerateResultError(f"Z3 = 0 on {c.name} (complete={c.complete})")
    return ProjectivePoint(X3, Y3, Z3)


def group_op_cycles(bits: int) -> int:
    """5m/2 + 6."""
    return 5 * bits // 2 + 6
