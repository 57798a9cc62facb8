"""Behavioral models of the accelerator's arithmetic units.

Units and their cycle costs for an m-bit datapath (m = 256 by default):

* combined modular adder/subtractor: 1 cycle
* radix-4 Booth multiplier: m/2 cycles (one recoded window per cycle)
* word-shuffle / fold reduction: 1 cycle
* modular multiplier (multiplier then reducer): m/2 + 1 cycles

The alternate multipliers (radix-2 Booth, serial schoolbook) retire one
multiplier bit per cycle, m cycles each.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .ledger import CycleLedger
from .words import (
    LIMB_MASK,
    Word256,
    Word512,
    add_limbs,
    cmp_limbs,
    limb_bit,
    sub_limbs,
)

ACC_LIMBS = 17  # Booth accumulator limbs: 512-bit product plus sign/overflow headroom


class Backend(enum.Enum):
    FAST_P256 = "fast_p256"
    PSEUDO_25519 = "pseudo25519"
    GENERIC = "generic"  # shift-subtract reduction, any odd modulus; test curves only


P256_HEX = "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff"
P25519_HEX = "7fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffed"


@dataclass(frozen=True)
class FieldParams:
    p: Word256
    backend: Backend
    name: str = field(compare=False)  # label only; same p/backend/width is the same field
    bits: int = 256

    def __post_init__(self):
        if not (2 <= self.bits <= 256 and self.bits % 2 == 0):
            raise ValueError(f"datapath width must be even and in [2, 256], got {self.bits}")
        if self.p.bit(0) != 1 or self.p < Word256.from_int(3):
            raise ValueError("modulus must be odd and >= 3")
        if self.bits < 256 and not self.p < Word256.from_int(1 << self.bits):
            raise ValueError(f"modulus does not fit in {self.bits} bits")
        if self.backend is Backend.FAST_P256 and self.p != Word256.from_hex(P256_HEX):
            raise ValueError("fast_p256 backend requires p = 2^256 - 2^224 + 2^192 + 2^96 - 1")
        if self.backend is Backend.PSEUDO_25519 and self.p != Word256.from_hex(P25519_HEX):
            raise ValueError("pseudo25519 backend requires p = 2^255 - 19")
        if self.backend is not Backend.GENERIC and self.bits != 256:
            raise ValueError(f"{self.backend.value} backend is 256-bit only")


FIELD_P256 = FieldParams(Word256.from_hex(P256_HEX), Backend.FAST_P256, "p256")
FIELD_25519 = FieldParams(Word256.from_hex(P25519_HEX), Backend.PSEUDO_25519, "p25519")


class FieldElement:
    """A Word256 below the modulus of ``field``."""

    __slots__ = ("w", "field")

    def __init__(self, w: Word256, field: FieldParams):
        if not w < field.p:
            raise ValueError(f"{w!r} is not reduced modulo {field.name}")
        self.w = w
        self.field = field

    @classmethod
    def _make(cls, arr, field):
        e = object.__new__(cls)
        e.w = Word256._wrap(arr)
        e.field = field
        return e

    @classmethod
    def from_int(cls, field: FieldParams, value: int) -> "FieldElement":
        return cls(Word256.from_int(value), field)

    @classmethod
    def from_hex(cls, field: FieldParams, text: str) -> "FieldElement":
        return cls(Word256.from_hex(text), field)

    def to_int(self) -> int:
        return self.w.to_int()

    def hex(self) -> str:
        return self.w.hex()

    def is_zero(self) -> bool:
        return self.w.is_zero()

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (self.field is other.field or self.field == other.field) and self.w == other.w

    def __hash__(self):
        return hash((self.field.name, self.w))

    def __repr__(self):
        return f"FieldElement({self.field.name}, 0x{self.w.hex()})"


def _same_field(x: FieldElement, y: FieldElement) -> FieldParams:
    if x.field is not y.field and x.field != y.field:
        raise ValueError(f"field mismatch: {x.field.name} vs {y.field.name}")
    return x.field


# ---------------------------------------------------------------------------
# adder / subtractor
# ---------------------------------------------------------------------------

@njit(cache=True)
def _addsub_kernel(x, y, p, is_sub, out):
    v = np.zeros(9, dtype=np.uint32)
    p9 = np.zeros(9, dtype=np.uint32)
    p9[:8] = p
    if not is_sub:
        # V = A + B; if V >= p then V - p
        v[8] = add_limbs(x, y, v[:8])
        if cmp_limbs(v, p9) >= 0:
            sub_limbs(v, p9, v)
    elif cmp_limbs(x, y) >= 0:
        sub_limbs(x, y, v[:8])
    else:
        # (A + p) - B
        v[8] = add_limbs(x, p, v[:8])
        y9 = np.zeros(9, dtype=np.uint32)
        y9[:8] = y
        sub_limbs(v, y9, v)
    for i in range(8):
        out[i] = v[i]


class AddSub(enum.Enum):
    ADD = "add"
    SUB = "sub"


def mod_addsub(x: FieldElement, y: FieldElement, op: AddSub,
               ledger: CycleLedger | None = None) -> FieldElement:
    f = _same_field(x, y)
    out = np.empty(8, dtype=np.uint32)
    _addsub_kernel(x.w.limbs, y.w.limbs, f.p.limbs, op is AddSub.SUB, out)
    if ledger is not None:
        ledger.issue("mod_" + op.value, addsub=1)
    return FieldElement._make(out, f)


def mod_add(x, y, ledger=None):
    return mod_addsub(x, y, AddSub.ADD, ledger)


def mod_sub(x, y, ledger=None):
    return mod_addsub(x, y, AddSub.SUB, ledger)


# ---------------------------------------------------------------------------
# multipliers
# ---------------------------------------------------------------------------

@njit(cache=True, inline="always")
def _acc_add_shifted(acc, b, s, sign):
    """acc += sign * (b << s) on a carry-save accumulator.

    ``acc`` holds signed int64 limbs of weight 2^(32j); partial products are
    dropped in limb by limb without carry propagation. Each limb moves by
    less than 2^32 per call, so a few hundred calls stay far inside int64.
    """
    off = s >> 5
    r = s & 31
    n = b.size
    if r == 0:
        for k in range(n):
            acc[off + k] += sign * np.int64(b[k])
    else:
        prev = np.int64(0)
        for k in range(n):
            cur = np.int64(b[k])
            acc[off + k] += sign * (((cur << r) & LIMB_MASK) | (prev >> (32 - r)))
            prev = cur
        acc[off + n] += sign * (prev >> (32 - r))


# radix-4 selector (bits 2i+1, 2i, 2i-1) -> Booth digit
BOOTH4_DIGIT = np.array([0, 1, 1, 2, -2, -1, -1, 0], dtype=np.int64)


@njit(cache=True)
def booth4_step_kernel(acc, mcand, mplier, i, nsteps):
    """One radix-4 Booth window: recode bits (2i+1, 2i, 2i-1) of the multiplier.

    The digit lands at weight 4^i. On the last window a set multiplier MSB
    means the signed reading was A - 2^m, so mcand << m is added back here.
    Returns the 3-bit selector. ``_multiply_kernel`` repeats this body inline
    (a per-window call costs ~3x); tests hold the two in lockstep.
    """
    sel = (limb_bit(mplier, 2 * i + 1) << 2) | (limb_bit(mplier, 2 * i) << 1) | limb_bit(mplier, 2 * i - 1)
    d = BOOTH4_DIGIT[sel]
    if d > 0:
        _acc_add_shifted(acc, mcand, 2 * i + (d >> 1), 1)
    elif d < 0:
        _acc_add_shifted(acc, mcand, 2 * i + ((-d) >> 1), -1)
    if i == nsteps - 1 and limb_bit(mplier, 2 * nsteps - 1) == 1:
        _acc_add_shifted(acc, mcand, 2 * nsteps, 1)
    return sel


@njit(cache=True)
def _finish(acc, out):
    """Carry-propagate the accumulator into 16 limbs; False if out of [0, 2^512)."""
    carry = np.int64(0)
    for j in range(ACC_LIMBS):
        t = acc[j] + carry
        if j < 16:
            out[j] = t & LIMB_MASK
        elif t != 0:
            return False
        carry = t >> 32
    return carry == 0


MULT_RADIX4, MULT_RADIX2, MULT_SCHOOLBOOK = 0, 1, 2


@njit(cache=True)
def _multiply_kernel(kind, mcand, mplier, nsteps, out):
    """Run a multiplier to completion; returns the steps taken (-1 on overflow)."""
    acc = np.zeros(ACC_LIMBS, dtype=np.int64)
    steps = 0
    if kind == MULT_RADIX4:
        for i in range(nsteps):
            sel = (limb_bit(mplier, 2 * i + 1) << 2) | (limb_bit(mplier, 2 * i) << 1) | limb_bit(mplier, 2 * i - 1)
            d = BOOTH4_DIGIT[sel]
            if d > 0:
                _acc_add_shifted(acc, mcand, 2 * i + (d >> 1), 1)
            elif d < 0:
                _acc_add_shifted(acc, mcand, 2 * i + ((-d) >> 1), -1)
            if i == nsteps - 1 and limb_bit(mplier, 2 * nsteps - 1) == 1:
                _acc_add_shifted(acc, mcand, 2 * nsteps, 1)
            steps += 1
    elif kind == MULT_RADIX2:
        # digit = b[i-1] - b[i]
        for i in range(nsteps):
            d = limb_bit(mplier, i - 1) - limb_bit(mplier, i)
            if d != 0:
                _acc_add_shifted(acc, mcand, i, d)
            if i == nsteps - 1 and limb_bit(mplier, i) == 1:
                _acc_add_shifted(acc, mcand, nsteps, 1)
            steps += 1
    else:
        for i in range(nsteps):
            if limb_bit(mplier, i) == 1:
                _acc_add_shifted(acc, mcand, i, 1)
            steps += 1
    return steps if _finish(acc, out) else -1


# name -> (kernel id, steps for an m-bit datapath)
MULTIPLIERS = {
    "radix4": (MULT_RADIX4, lambda m: m // 2),
    "radix2": (MULT_RADIX2, lambda m: m),
    "schoolbook": (MULT_SCHOOLBOOK, lambda m: m),
}


def _multiplier(name):
    try:
        return MULTIPLIERS[name]
    except KeyError:
        raise ValueError(f"unknown multiplier {name!r}; choose from {sorted(MULTIPLIERS)}") from None


def _multiply(name, M, R, ledger, bits):
    kind, nsteps = _multiplier(name)
    out = np.empty(16, dtype=np.uint32)
    # A = M is scanned, B = R is accumulated
    steps = _multiply_kernel(kind, R.limbs, M.limbs, nsteps(bits), out)
    if steps < 0:
        raise ArithmeticError("product does not fit in 512 bits")
    if ledger is not None:
        ledger.issue(name + "_multiply", multiply=steps)
    return Word512._wrap(out)


def booth_multiply(M: Word256, R: Word256, ledger: CycleLedger | None = None,
                   bits: int = 256) -> Word512:
    """Exact M*R through bits/2 radix-4 Booth windows."""
    return _multiply("radix4", M, R, ledger, bits)


def booth_radix2_multiply(M: Word256, R: Word256, ledger: CycleLedger | None = None,
                          bits: int = 256) -> Word512:
    return _multiply("radix2", M, R, ledger, bits)


def schoolbook_multiply(M: Word256, R: Word256, ledger: CycleLedger | None = None,
                        bits: int = 256) -> Word512:
    return _multiply("schoolbook", M, R, ledger, bits)


class EngineState(enum.Enum):
    IDLE = "idle"
    BUSY = "busy"
    DONE = "done"


class BoothEngine:
    """Cycle-stepped radix-4 Booth multiplier (one window per ``step``)."""

    def __init__(self, bits: int = 256):
        if bits % 2 or not 2 <= bits <= 256:
            raise ValueError("width must be even and in [2, 256]")
        self.nsteps = bits // 2
        self.state = EngineState.IDLE
        self.step_index = 0
        self.cycles_charged = 0
        self.multiplicand = Word256.zero()
        self.multiplier = Word256.zero()
        self.acc = np.zeros(ACC_LIMBS, dtype=np.int64)
        self.last_sel = None

    def load(self, M: Word256, R: Word256) -> "BoothEngine":
        self.multiplier, self.multiplicand = M, R
        self.acc = np.zeros(ACC_LIMBS, dtype=np.int64)
        self.step_index = 0
        self.cycles_charged = 0
        self.state = EngineState.BUSY
        return self

    def step(self) -> "BoothEngine":
        if self.state is not EngineState.BUSY:
            raise RuntimeError(f"cannot step a {self.state.value} engine")
        self.last_sel = int(booth4_step_kernel(self.acc, self.multiplicand.limbs,
                                               self.multiplier.limbs, self.step_index, self.nsteps))
        self.step_index += 1
        self.cycles_charged += 1
        if self.step_index == self.nsteps:
            self.state = EngineState.DONE
        return self

    @property
    def accumulator(self) -> int:
        """Signed value of the working register (for inspection only)."""
        return sum(int(v) << (32 * j) for j, v in enumerate(self.acc))

    def result(self) -> Word512:
        if self.state is not EngineState.DONE:
            raise RuntimeError("product not ready")
        out = np.empty(16, dtype=np.uint32)
        if not _finish(self.acc, out):
            raise ArithmeticError("product does not fit in 512 bits")
        return Word512._wrap(out)


def booth_step(e: BoothEngine) -> BoothEngine:
    return e.step()


# ---------------------------------------------------------------------------
# reducers
# ---------------------------------------------------------------------------

# Word-shuffle terms for p256 as (coefficient, words high..low); -1 = zero word.
_P256_TERMS = (
    (1, (7, 6, 5, 4, 3, 2, 1, 0)),
    (2, (15, 14, 13, 12, 11, -1, -1, -1)),
    (2, (-1, 15, 14, 13, 12, -1, -1, -1)),
    (1, (15, 14, -1, -1, -1, 10, 9, 8)),
    (1, (8, 13, 15, 14, 13, 11, 10, 9)),
    (-1, (10, 8, -1, -1, -1, 13, 12, 11)),
    (-1, (11, 9, -1, -1, 15, 14, 13, 12)),
    (-1, (12, -1, 10, 9, 8, 15, 14, 13)),
    (-1, (13, -1, 11, 10, 9, -1, 15, 14)),
)
_P256_COEF = np.array([c for c, _ in _P256_TERMS], dtype=np.int64)
# column j holds the source word for limb j (little-endian)
_P256_IDX = np.array([idx[::-1] for _, idx in _P256_TERMS], dtype=np.int64)
P256_MAX_CORRECTIONS = 8


@njit(cache=True)
def _fast_reduce_p256_kernel(x, p, coef, idx, out):
    # signed per-limb column sums, then carry-propagate into 9 signed limbs
    r = np.zeros(9, dtype=np.int64)
    carry = np.int64(0)
    for j in range(8):
        s = carry
        for t in range(coef.size):
            w = idx[t, j]
            if w >= 0:
                s += coef[t] * np.int64(x[w])
        r[j] = s & LIMB_MASK
        carry = s >> 32  # arithmetic shift
    r[8] = carry
    # + 4p lifts the sum out of (-4p, 5p) into [0, 9p)
    p4 = np.zeros(9, dtype=np.uint32)
    c = np.int64(0)
    for j in range(8):
        t = (np.int64(p[j]) << 2) + c
        p4[j] = t & LIMB_MASK
        c = t >> 32
    p4[8] = c
    carry = np.int64(0)
    v = np.zeros(9, dtype=np.uint32)
    for j in range(9):
        t = r[j] + np.int64(p4[j]) + carry
        if j < 8:
            v[j] = t & LIMB_MASK
            carry = t >> 32
        else:
            if t < 0 or t > LIMB_MASK:
                return -1
            v[j] = t
    p9 = np.zeros(9, dtype=np.uint32)
    p9[:8] = p
    n = 0
    while cmp_limbs(v, p9) >= 0:
        sub_limbs(v, p9, v)
        n += 1
        if n > P256_MAX_CORRECTIONS:
            return -1
    for j in range(8):
        out[j] = v[j]
    return n


@njit(cache=True)
def _reduce_25519_kernel(x, p, out):
    # x <- (x mod 2^255) + 19 * (x >> 255) until the high part vanishes
    r = np.zeros(17, dtype=np.uint32)
    r[:16] = x
    folds = 0
    while True:
        high = np.zeros(10, dtype=np.int64)
        for i in range(10):
            lo = np.int64(r[i + 7]) >> 31 if i + 7 < 17 else np.int64(0)
            hi = np.int64(r[i + 8]) if i + 8 < 17 else np.int64(0)
            high[i] = (lo | (hi << 1)) & LIMB_MASK
        nonzero = False
        for i in range(10):
            if high[i] != 0:
                nonzero = True
        if not nonzero:
            break
        r[7] &= 0x7FFFFFFF
        for i in range(8, 17):
            r[i] = 0
        carry = np.int64(0)
        for i in range(17):
            h = high[i] if i < 10 else np.int64(0)
            t = np.int64(r[i]) + 19 * h + carry
            r[i] = t & LIMB_MASK
            carry = t >> 32
        folds += 1
    if cmp_limbs(r[:8], p) >= 0:
        sub_limbs(r[:8], p, r[:8])
    for i in range(8):
        out[i] = r[i]
    return folds


@njit(cache=True)
def _reduce_generic_kernel(x, p, out):
    # restoring shift-subtract division, remainder only
    r = np.zeros(9, dtype=np.uint32)
    p9 = np.zeros(9, dtype=np.uint32)
    p9[:8] = p
    top = 511
    while top >= 0 and limb_bit(x, top) == 0:
        top -= 1
    for i in range(top, -1, -1):
        c = np.int64(limb_bit(x, i))
        for j in range(9):
            t = (np.int64(r[j]) << 1) | c
            r[j] = t & LIMB_MASK
            c = t >> 32
        if cmp_limbs(r, p9) >= 0:
            sub_limbs(r, p9, r)
    for j in range(8):
        out[j] = r[j]
    return 0


RED_P256, RED_25519, RED_GENERIC = 0, 1, 2
_BACKEND_CODE = {Backend.FAST_P256: RED_P256, Backend.PSEUDO_25519: RED_25519,
                 Backend.GENERIC: RED_GENERIC}


@njit(cache=True)
def _reduce_kernel(code, x, p, out):
    if code == RED_P256:
        return _fast_reduce_p256_kernel(x, p, _P256_COEF, _P256_IDX, out)
    if code == RED_25519:
        return _reduce_25519_kernel(x, p, out)
    return _reduce_generic_kernel(x, p, out)


@njit(cache=True)
def _modmul_kernel(mult, a, b, nsteps, red, p, out):
    prod = np.empty(16, dtype=np.uint32)
    steps = _multiply_kernel(mult, b, a, nsteps, prod)
    if steps < 0:
        return -1
    if _reduce_kernel(red, prod, p, out) < 0:
        return -2
    return steps


def _reduce_into(x: Word512, field: FieldParams, out) -> None:
    if _reduce_kernel(_BACKEND_CODE[field.backend], x.limbs, field.p.limbs, out) < 0:
        raise ArithmeticError(f"{field.backend.value} reduction left its correction range")


def reduce(x: Word512, field: FieldParams, ledger: CycleLedger | None = None) -> FieldElement:
    out = np.empty(8, dtype=np.uint32)
    _reduce_into(x, field, out)
    if ledger is not None:
        ledger.issue("reduce_" + field.backend.value, reduce=1)
    return FieldElement._make(out, field)


def fast_reduce_p256(x: Word512, ledger: CycleLedger | None = None) -> FieldElement:
    return reduce(x, FIELD_P256, ledger)


def reduce_25519(x: Word512, ledger: CycleLedger | None = None) -> FieldElement:
    return reduce(x, FIELD_25519, ledger)


# ---------------------------------------------------------------------------
# modular multiplier
# ---------------------------------------------------------------------------

def mod_mul(x: FieldElement, y: FieldElement, ledger: CycleLedger | None = None,
            multiplier: str = "radix4", kind: str = "mod_mul") -> FieldElement:
    """(x*y) mod p: multiplier cycles then one reduction cycle."""
    f = _same_field(x, y)
    mult, nsteps = _multiplier(multiplier)
    out = np.empty(8, dtype=np.uint32)
    steps = _modmul_kernel(mult, x.w.limbs, y.w.limbs, nsteps(f.bits),
                           _BACKEND_CODE[f.backend], f.p.limbs, out)
    if steps < 0:
        raise ArithmeticError("modular multiplier left its working range")
    if ledger is not None:
        ledger.issue(kind, multiply=steps, reduce=1)
    return FieldElement._make(out, f)


def mod_sqr(x: FieldElement, ledger: CycleLedger | None = None,
            multiplier: str = "radix4") -> FieldElement:
    """Squaring runs on the same multiplier; it is only logged separately."""
    return mod_mul(x, x, ledger, multiplier, kind="mod_sqr")


def mod_mul_cycles(field: FieldParams, multiplier: str = "radix4") -> int:
    return MULTIPLIERS[multiplier][1](field.bits) + 1
