import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from edccsim.alu import (
    BOOTH4_DIGIT, FIELD_25519, FIELD_P256, MULT_RADIX4, AddSub, Backend, BoothEngine,
    EngineState, FieldElement, FieldParams, _multiply_kernel, booth_multiply,
    booth_radix2_multiply, fast_reduce_p256, mod_add, mod_addsub, mod_mul, mod_mul_cycles,
    mod_sqr, mod_sub, reduce, reduce_25519, schoolbook_multiply,
)
from edccsim.ledger import CycleLedger
from edccsim.words import Word256, Word512

u256 = st.integers(0, 2**256 - 1)
FIELDS = [FIELD_P256, FIELD_25519]
MULTS = [booth_multiply, booth_radix2_multiply, schoolbook_multiply]


def elems(f):
    return st.integers(0, f.p.to_int() - 1).map(lambda v: FieldElement.from_int(f, v))


def booth4_digits(a: int, m: int = 256) -> list[int]:
    """Reference radix-4 recoding, straight from the bit triples."""
    b = lambda i: (a >> i) & 1 if i >= 0 else 0
    return [b(2 * i - 1) + b(2 * i) - 2 * b(2 * i + 1) for i in range(m // 2)]


@given(u256)
def test_recoding_reference_is_signed_value(a):
    value = sum(d * 4**i for i, d in enumerate(booth4_digits(a)))
    assert value == a - (2**256 if a >> 255 else 0)


def test_digit_table_matches_recoding():
    for sel in range(8):
        hi, mid, lo = sel >> 2, (sel >> 1) & 1, sel & 1
        assert BOOTH4_DIGIT[sel] == lo + mid - 2 * hi


# --- multipliers ------------------------------------------------------------

@pytest.mark.parametrize("mult", MULTS)
@given(a=u256, b=u256)
def test_multiplier_exact(mult, a, b):
    assert mult(Word256.from_int(a), Word256.from_int(b)).to_int() == a * b


@pytest.mark.parametrize("mult", MULTS)
@pytest.mark.parametrize("a,b", [(0, 0), (2**256 - 1, 2**256 - 1), (2**255, 2**255),
                                 (2**255, 1), (1, 2**256 - 1), (0xAAAA << 240, 0x5555)])
def test_multiplier_corners(mult, a, b):
    assert mult(Word256.from_int(a), Word256.from_int(b)).to_int() == a * b


@pytest.mark.parametrize("name,mult,steps", [("radix4", booth_multiply, 128),
                                             ("radix2", booth_radix2_multiply, 256),
                                             ("schoolbook", schoolbook_multiply, 256)])
def test_multiplier_cycles(name, mult, steps):
    led = CycleLedger()
    mult(Word256.from_int(3), Word256.from_int(5), led)
    assert led.counters["multiply"] == steps
    assert led.issued[name + "_multiply"] == 1


@given(u256, u256)
def test_engine_stepwise_matches_recoding(a, b):
    """After step i the register holds b * sum_{j<=i} d_j 4^j (MSB fix on the last step)."""
    e = BoothEngine().load(Word256.from_int(a), Word256.from_int(b))
    digits = booth4_digits(a)
    partial = 0
    for i, d in enumerate(digits):
        e.step()
        partial += d * 4**i * b
        fix = b << 256 if (i == 127 and a >> 255) else 0
        assert e.accumulator == partial + fix
    assert e.state is EngineState.DONE
    assert e.cycles_charged == 128
    assert e.result().to_int() == a * b


@given(u256, u256)
def test_engine_and_batch_kernel_agree(a, b):
    A, B = Word256.from_int(a), Word256.from_int(b)
    e = BoothEngine().load(A, B)
    while e.state is EngineState.BUSY:
        e.step()
    out = np.empty(16, dtype=np.uint32)
    assert _multiply_kernel(MULT_RADIX4, B.limbs, A.limbs, 128, out) == 128
    assert e.result() == Word512._wrap(out)


def test_engine_state_machine():
    e = BoothEngine()
    with pytest.raises(RuntimeError):
        e.step()
    e.load(Word256.from_int(7), Word256.from_int(6))
    with pytest.raises(RuntimeError):
        e.result()
    for _ in range(128):
        e.step()
    with pytest.raises(RuntimeError):
        e.step()
    assert e.result().to_int() == 42
    assert e.load(Word256.from_int(2), Word256.from_int(2)).state is EngineState.BUSY


@pytest.mark.parametrize("bits", [8, 16, 32])
def test_engine_narrow(bits):
    e = BoothEngine(bits).load(Word256.from_int(2**bits - 1), Word256.from_int(2**bits - 3))
    for _ in range(bits // 2):
        e.step()
    assert e.result().to_int() == (2**bits - 1) * (2**bits - 3)


# --- reducers ---------------------------------------------------------------

@given(st.integers(0, 2**512 - 1))
def test_fast_reduce_p256(v):
    assert fast_reduce_p256(Word512.from_int(v)).to_int() == v % FIELD_P256.p.to_int()


@given(st.integers(0, 2**512 - 1))
def test_reduce_25519(v):
    assert reduce_25519(Word512.from_int(v)).to_int() == v % FIELD_25519.p.to_int()


@pytest.mark.parametrize("f", FIELDS)
def test_reduce_corners(f):
    p = f.p.to_int()
    for v in [0, 1, p - 1, p, p + 1, 2 * p, p * p - 1, (p - 1) ** 2, 2**512 - 1, 2**256, 2**255]:
        assert reduce(Word512.from_int(v), f).to_int() == v % p


@pytest.mark.parametrize("f", FIELDS)
@given(data=st.data())
def test_reduce_idempotent(f, data):
    v = data.draw(st.integers(0, 2**512 - 1))
    r = reduce(Word512.from_int(v), f)
    assert reduce(Word512.from_int(r.to_int()), f) == r


def test_reduce_cycle():
    led = CycleLedger()
    reduce_25519(Word512.from_int(12345), led)
    assert led.total == 1 and led.counters["reduce"] == 1


# --- modular ops ------------------------------------------------------------

@pytest.mark.parametrize("f", FIELDS)
@given(data=st.data())
def test_mod_ops_match_ints(f, data):
    x, y = data.draw(elems(f)), data.draw(elems(f))
    p = f.p.to_int()
    a, b = x.to_int(), y.to_int()
    assert mod_add(x, y).to_int() == (a + b) % p
    assert mod_sub(x, y).to_int() == (a - b) % p
    assert mod_mul(x, y).to_int() == a * b % p
    assert mod_sqr(x).to_int() == a * a % p


@pytest.mark.parametrize("f", FIELDS)
@given(data=st.data())
def test_field_axioms(f, data):
    x, y, z = (data.draw(elems(f)) for _ in range(3))
    zero, one = FieldElement.from_int(f, 0), FieldElement.from_int(f, 1)
    assert mod_add(x, y) == mod_add(y, x)
    assert mod_mul(x, y) == mod_mul(y, x)
    assert mod_mul(mod_mul(x, y), z) == mod_mul(x, mod_mul(y, z))
    assert mod_mul(x, mod_add(y, z)) == mod_add(mod_mul(x, y), mod_mul(x, z))
    assert mod_add(x, zero) == x and mod_mul(x, one) == x
    assert mod_add(mod_sub(x, y), y) == x
    assert mod_add(x, mod_sub(zero, x)) == zero


@pytest.mark.parametrize("f", FIELDS)
def test_mod_corners(f):
    p = f.p.to_int()
    e = lambda v: FieldElement.from_int(f, v)
    assert mod_add(e(p - 1), e(1)).is_zero()
    assert mod_add(e(p - 1), e(p - 1)).to_int() == p - 2
    assert mod_sub(e(0), e(1)).to_int() == p - 1
    assert mod_mul(e(p - 1), e(p - 1)).to_int() == 1


@pytest.mark.parametrize("f", FIELDS)
@pytest.mark.parametrize("multiplier,cycles", [("radix4", 129), ("radix2", 257), ("schoolbook", 257)])
def test_mod_mul_cycles(f, multiplier, cycles):
    led = CycleLedger()
    x = FieldElement.from_int(f, 0xDEADBEEF)
    z = mod_mul(x, x, led, multiplier)
    assert z.to_int() == 0xDEADBEEF**2 % f.p.to_int()
    assert led.total == cycles == mod_mul_cycles(f, multiplier)
    assert led.counters["reduce"] == 1


def test_addsub_one_cycle():
    led = CycleLedger()
    x = FieldElement.from_int(FIELD_25519, 5)
    mod_addsub(x, x, AddSub.ADD, led)
    mod_addsub(x, x, AddSub.SUB, led)
    assert led.total == 2 and led.counters["addsub"] == 2
    assert led.issued == {"mod_add": 1, "mod_sub": 1}


def test_field_mismatch():
    a = FieldElement.from_int(FIELD_25519, 1)
    b = FieldElement.from_int(FIELD_P256, 1)
    assert a != b
    with pytest.raises(ValueError):
        mod_mul(a, b)
    with pytest.raises(ValueError):
        mod_add(a, b)


def test_element_must_be_reduced():
    with pytest.raises(ValueError):
        FieldElement.from_int(FIELD_25519, FIELD_25519.p.to_int())


def test_unknown_multiplier():
    x = FieldElement.from_int(FIELD_25519, 3)
    with pytest.raises(ValueError):
        mod_mul(x, x, multiplier="karatsuba")


def test_field_params_validation():
    with pytest.raises(ValueError):
        FieldParams(Word256.from_int(2**255 - 19), Backend.FAST_P256, "x")
    with pytest.raises(ValueError):
        FieldParams(Word256.from_int(100), Backend.GENERIC, "x")
    with pytest.raises(ValueError):
        FieldParams(Word256.from_int(257), Backend.GENERIC, "x", bits=8)
    with pytest.raises(ValueError):
        FieldParams(Word256.from_int(251), Backend.GENERIC, "x", bits=7)


@pytest.mark.parametrize("bits,p", [(8, 251), (16, 65521), (32, 4294967291)])
@pytest.mark.parametrize("multiplier", ["radix4", "radix2", "schoolbook"])
def test_generic_backend(bits, p, multiplier, rng):
    f = FieldParams(Word256.from_int(p), Backend.GENERIC, f"toy{bits}", bits=bits)
    for _ in range(200):
        a, b = rng.randrange(p), rng.randrange(p)
        led = CycleLedger()
        z = mod_mul(FieldElement.from_int(f, a), FieldElement.from_int(f, b), led, multiplier)
        assert z.to_int() == a * b % p
        assert led.total == mod_mul_cycles(f, multiplier)
    assert mod_mul_cycles(f) == bits // 2 + 1
