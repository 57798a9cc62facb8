"""Built-in curves and the curve-definition file format.

A curve file is ``key = value`` lines (``#`` starts a comment)::

    name    = ed25519
    backend = pseudo25519          # fast_p256 | pseudo25519 | generic
    bits    = 256                  # optional, datapath width m
    p       = 7fff...ffed
    a       = 7fff...ffec
    d       = 5203...78a3
    base_x  = 2169...d51a          # optional together with base_y
    base_y  = 6666...6658

Field values are big-endian hex.
"""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from . import oracle
from .alu import FIELD_25519, FIELD_P256, Backend, FieldElement, FieldParams
from .group import AffinePoint, CurveParams
from .words import Word256

CURVE_DIR_ENV = "EDCCSIM_CURVE_DIR"
CURVE_SUFFIX = ".curve"

# d = -121665/121666 mod 2^255 - 19, frozen from the reference inverse
ED25519_D = "52036cee2b6ffe738cc740797779e89800700a4d4141d8ab75eb4dca135978a3"
ED25519_BX = "216936d3cd6e53fec0a4e231fdd6dc5c692cc7609525a7b2c9562d608f25d51a"
ED25519_BY = "6666666666666666666666666666666666666666666666666666666666666658"
# prime order of the base point
ED25519_ORDER = 0x1000000000000000000000000000000014DEF9DEA2F79CD65812631A5CF5D3ED

# p256e: a = 2 (square), d = 3 (non-square) over the P-256 prime; not a standard curve
P256E_BX = "4637e5990525556311e614f154e5438619ac85d52168f16ff736366121775874"
P256E_BY = "0000000000000000000000000000000000000000000000000000000000000003"

# small complete test curves for reduced widths, modulus = largest prime below 2^m
TOY_PRIMES = {8: 251, 16: 65521, 32: 4294967291}


def _curve(field: FieldParams, a: int, d: int, name: str, bx=None, by=None) -> CurveParams:
    p = field.p.to_int()
    a_el = FieldElement.from_int(field, a % p)
    d_el = FieldElement.from_int(field, d % p)
    base = None
    if bx is not None:
        base = AffinePoint(FieldElement.from_int(field, bx), FieldElement.from_int(field, by))
    return CurveParams(field, a_el, d_el, name, base)


@lru_cache(maxsize=None)
def ed25519() -> CurveParams:
    return _curve(FIELD_25519, -1, int(ED25519_D, 16), "ed25519",
                  int(ED25519_BX, 16), int(ED25519_BY, 16))


@lru_cache(maxsize=None)
def p256e() -> CurveParams:
    return _curve(FIELD_P256, 2, 3, "p256e", int(P256E_BX, 16), int(P256E_BY, 16))


@lru_cache(maxsize=None)
def toy_curve(bits: int) -> CurveParams:
    """A complete curve over the largest prime below 2^bits (generic backend).

    a is the smallest square >= 2, d the smallest non-square >= 2, and the
    base point has the smallest ordinate >= 2 that admits an even abscissa.
    """
    if bits in TOY_PRIMES:
        p = TOY_PRIMES[bits]
    else:
        p = (1 << bits) - 1
        while not oracle.o_is_prime(p):
            p -= 2
    field = FieldParams(Word256.from_int(p), Backend.GENERIC, f"toy{bits}", bits=bits)
    a = next(v for v in range(2, p) if oracle.o_qr(v, p))
    d = next(v for v in range(2, p) if v != a and not oracle.o_qr(v, p))
    oc = oracle.OracleCurve(p, a, d)
    for y in range(2, p):
        x = oracle.o_recover_x(y, oc)
        if x:
            return _curve(field, a, d, f"toy{bits}", x, y)
    raise ValueError(f"no base point found for width {bits}")


BUILTINS = {"ed25519": ed25519, "p256e": p256e}


def parse_curve_text(text: str, source: str = "<text>") -> CurveParams:
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        fields[key.lower()] = value
    missing = {"backend", "p", "a", "d"} - fields.keys()
    if missing:
        raise ValueError(f"{source}: missing {', '.join(sorted(missing))}")
    try:
        backend = Backend(fields["backend"].lower())
    except ValueError:
        raise ValueError(f"{source}: unknown backend {fields['backend']!r}") from None
    name = fields.get("name", Path(source).stem)
    bits = int(fields.get("bits", "256"))
    field = FieldParams(Word256.from_hex(fields["p"]), backend, name, bits=bits)
    if ("base_x" in fields) != ("base_y" in fields):
        raise ValueError(f"{source}: base_x and base_y go together")
    bx = by = None
    if "base_x" in fields:
        bx, by = int(fields["base_x"], 16), int(fields["base_y"], 16)
    return _curve(field, int(fields["a"], 16), int(fields["d"], 16), name, bx, by)


def dump_curve(c: CurveParams) -> str:
    lines = [
        f"name = {c.name}",
        f"backend = {c.field.backend.value}",
        f"bits = {c.field.bits}",
        f"p = {c.field.p.hex()}",
        f"a = {c.a.hex()}",
        f"d = {c.d.hex()}",
    ]
    if c.base is not None:
        lines += [f"base_x = {c.base.x.hex()}", f"base_y = {c.base.y.hex()}"]
    return "\n".join(lines) + "\n"


def load_curve(spec: str) -> CurveParams:
    """Resolve a curve by file path, then $EDCCSIM_CURVE_DIR/<name>.curve, then built-in name."""
    path = Path(spec)
    if path.is_file():
        return parse_curve_text(path.read_text(), str(path))
    curve_dir = os.environ.get(CURVE_DIR_ENV)
    if curve_dir:
        candidate = Path(curve_dir) / (spec + CURVE_SUFFIX)
        if candidate.is_file():
            return parse_curve_text(candidate.read_text(), str(candidate))
    if spec in BUILTINS:
        return BUILTINS[spec]()
    if spec.startswith("toy") and spec[3:].isdigit():
        return toy_curve(int(spec[3:]))
    raise ValueError(f"unknown curve {spec!r} (built-ins: {', '.join(sorted(BUILTINS))}, toy<m>)")
