"""Fixed-width unsigned words for the datapath.

Every word is a little-endian array of 32-bit limbs (``uint32``). The limb
width is fixed module-wide: it matches the base-2^32 split used by the P-256
word-shuffle reduction, so ``Word512.words()`` is directly ``x0..x15``.

Arithmetic is done limb by limb with explicit carries inside the numba
kernels below; Python integers only appear at the text/int conversion
boundary.
"""
from __future__ import annotations

import numpy as np
from numba import njit

LIMB_BITS = 32
LIMB_MASK = 0xFFFFFFFF


# ---------------------------------------------------------------------------
# limb kernels (shared with the arithmetic units)
# ---------------------------------------------------------------------------

@njit(cache=True)
def add_limbs(a, b, out):
    """out = a + b over len(out) limbs; returns the carry-out."""
    carry = np.int64(0)
    for i in range(out.size):
        s = np.int64(a[i]) + np.int64(b[i]) + carry
        out[i] = s & LIMB_MASK
        carry = s >> 32
    return carry


@njit(cache=True)
def sub_limbs(a, b, out):
    """out = a - b over len(out) limbs (mod 2^(32n)); returns the borrow."""
    borrow = np.int64(0)
    for i in range(out.size):
        d = np.int64(a[i]) - np.int64(b[i]) - borrow
        if d < 0:
            d += np.int64(1) << 32
            borrow = 1
        else:
            borrow = 0
        out[i] = d
    return borrow


@njit(cache=True)
def cmp_limbs(a, b):
    """Three-way compare of equal-length limb arrays."""
    for i in range(a.size - 1, -1, -1):
        x = np.int64(a[i])
        y = np.int64(b[i])
        if x > y:
            return 1
        if x < y:
            return -1
    return 0


@njit(cache=True)
def shl_limbs(a, out, s):
    """out = (a << s) truncated to len(out) limbs; 0 <= s < 32."""
    carry = np.int64(0)
    for i in range(out.size):
        v = np.int64(a[i]) if i < a.size else np.int64(0)
        out[i] = ((v << s) | carry) & LIMB_MASK
        carry = v >> (32 - s) if s else np.int64(0)


@njit(cache=True)
def shr_limbs(a, out, s):
    """out = a >> s; 0 <= s < 32; len(out) == len(a)."""
    n = a.size
    for i in range(n):
        lo = np.int64(a[i]) >> s
        hi = np.int64(a[i + 1]) if i + 1 < n else np.int64(0)
        if s:
            lo |= (hi << (32 - s)) & LIMB_MASK
        out[i] = lo


@njit(cache=True, inline="always")
def limb_bit(a, i):
    if i < 0 or i >= 32 * a.size:
        return 0
    return (np.int64(a[i >> 5]) >> (i & 31)) & 1


@njit(cache=True)
def is_zero_limbs(a):
    for i in range(a.size):
        if a[i] != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# word types
# ---------------------------------------------------------------------------

class _Word:
    NLIMBS = 0
    __slots__ = ("limbs",)

    def __init__(self, limbs):
        arr = np.array(limbs, dtype=np.uint32)
        if arr.shape != (self.NLIMBS,):
            raise ValueError(f"{type(self).__name__} needs {self.NLIMBS} limbs, got shape {arr.shape}")
        arr.flags.writeable = False
        self.limbs = arr

    @classmethod
    def _wrap(cls, arr):
        # trusted fast path: arr is a fresh uint32 array of the right size
        arr.flags.writeable = False
        w = object.__new__(cls)
        w.limbs = arr
        return w

    @classmethod
    def bits(cls):
        return cls.NLIMBS * LIMB_BITS

    @classmethod
    def zero(cls):
        return cls._wrap(np.zeros(cls.NLIMBS, dtype=np.uint32))

    @classmethod
    def from_int(cls, value: int):
        if value < 0:
            raise ValueError("words are unsigned")
        try:
            raw = value.to_bytes(4 * cls.NLIMBS, "little")
        except OverflowError:
            raise ValueError(f"{value:#x} does not fit in {cls.bits()} bits") from None
        return cls._wrap(np.frombuffer(raw, dtype="<u4").astype(np.uint32))

    @classmethod
    def from_hex(cls, text: str):
        """Parse big-endian hex (optional 0x, at most the full width)."""
        s = text.strip().lower()
        if s.startswith("0x"):
            s = s[2:]
        width = 8 * cls.NLIMBS
        if not s or len(s) > width or any(c not in "0123456789abcdef" for c in s):
            raise ValueError(f"bad hex for {cls.__name__}: {text!r}")
        s = s.rjust(width, "0")
        limbs = [int(s[width - 8 * (i + 1):width - 8 * i], 16) for i in range(cls.NLIMBS)]
        return cls._wrap(np.array(limbs, dtype=np.uint32))

    def hex(self) -> str:
        return "".join(f"{int(x):08x}" for x in self.limbs[::-1])

    def to_int(self) -> int:
        return int.from_bytes(self.limbs.astype("<u4").tobytes(), "little")

    def bit(self, i: int) -> int:
        assert 0 <= i < self.bits(), f"bit index {i} out of range"
        return (int(self.limbs[i >> 5]) >> (i & 31)) & 1

    def is_zero(self) -> bool:
        return not self.limbs.any()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return bool(np.array_equal(self.limbs, other.limbs))

    def __lt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return cmp_limbs(self.limbs, other.limbs) < 0

    def __le__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return cmp_limbs(self.limbs, other.limbs) <= 0

    def __hash__(self):
        return hash((type(self).__name__, self.limbs.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(0x{self.hex()})"


class Word256(_Word):
    NLIMBS = 8
    __slots__ = ()


class Word512(_Word):
    NLIMBS = 16
    __slots__ = ()

    def words(self) -> tuple[int, ...]:
        """The sixteen 32-bit words x0..x15, least significant first."""
        return tuple(int(x) for x in self.limbs)

    def low(self) -> Word256:
        return Word256._wrap(self.limbs[:8].copy())

    def high(self) -> Word256:
        return Word256._wrap(self.limbs[8:].copy())


def zero_extend(a: Word256) -> Word512:
    out = np.zeros(16, dtype=np.uint32)
    out[:8] = a.limbs
    return Word512._wrap(out)


def add_carry(a: Word256, b: Word256) -> tuple[Word256, int]:
    out = np.empty(8, dtype=np.uint32)
    c = add_limbs(a.limbs, b.limbs, out)
    return Word256._wrap(out), int(c)


def sub_borrow(a: Word256, b: Word256) -> tuple[Word256, int]:
    out = np.empty(8, dtype=np.uint32)
    br = sub_limbs(a.limbs, b.limbs, out)
    return Word256._wrap(out), int(br)


def bit(a: _Word, i: int) -> int:
    return a.bit(i)


def shl1(a: Word512) -> Word512:
    out = np.empty(16, dtype=np.uint32)
    shl_limbs(a.limbs, out, 1)
    return Word512._wrap(out)


def shr1(a: Word512) -> Word512:
    out = np.empty(16, dtype=np.uint32)
    shr_limbs(a.limbs, out, 1)
    return Word512._wrap(out)


def shr2(a: Word512) -> Word512:
    out = np.empty(16, dtype=np.uint32)
    shr_limbs(a.limbs, out, 2)
    return Word512._wrap(out)
