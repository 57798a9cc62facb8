"""Test-vector files: generation from the reference side, replay through the datapath.

Modular vectors::

    # field: pseudo25519          (fast_p256 | pseudo25519 | generic)
    # op: mul                     (mul | add | sub; default mul)
    # modulus: fb                 (generic only)
    # bits: 8                     (generic only, default 256)
    <x> <y> <expected>

Point vectors (expected = k*P, affine)::

    # curve: ed25519              (built-in name or curve file path)
    # mode: paper                 (paper | exact; default paper)
    <k> <px> <py> <qx> <qy>

All fields are big-endian hex; blank lines and other ``#`` lines are ignored.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import oracle
from .alu import P256_HEX, P25519_HEX, AddSub, Backend, FieldElement, FieldParams, mod_addsub, mod_mul
from .curves import load_curve
from .words import Word256


class VectorFormatError(ValueError):
    pass


@dataclass
class VerifyResult:
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)  # line numbers

    def summary(self) -> str:
        return f"{self.passed} passed, {self.failed} failed"


def read_vectors(text: str, source: str = "<vectors>"):
    """Split a vector file into (headers, [(lineno, [fields...]), ...])."""
    headers, rows = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, value = (s.strip() for s in body.split(":", 1))
                if key.lower() in {"field", "op", "modulus", "bits", "curve", "mode"}:
                    headers[key.lower()] = value
            continue
        rows.append((lineno, line.split()))
    if rows and "field" not in headers and "curve" not in headers:
        raise VectorFormatError(f"{source}: missing '# field:' or '# curve:' header")
    return headers, rows


def field_from_headers(headers: dict) -> FieldParams:
    try:
        backend = Backend(headers["field"].lower())
    except ValueError:
        raise VectorFormatError(f"unknown field backend {headers['field']!r}") from None
    if backend is Backend.FAST_P256:
        return FieldParams(Word256.from_hex(P256_HEX), backend, "p256")
    if backend is Backend.PSEUDO_25519:
        return FieldParams(Word256.from_hex(P25519_HEX), backend, "p25519")
    if "modulus" not in headers:
        raise VectorFormatError("generic field needs a '# modulus:' header")
    return FieldParams(Word256.from_hex(headers["modulus"]), backend, "generic",
                       bits=int(headers.get("bits", "256")))


def _check_modular(f: FieldParams, op: str, rows):
    res = VerifyResult()
    for lineno, cols in rows:
        if len(cols) != 3:
            raise VectorFormatError(f"line {lineno}: expected 3 fields, got {len(cols)}")
        try:
            x, y = (FieldElement.from_hex(f, c) for c in cols[:2])
            expected = Word256.from_hex(cols[2])
        except ValueError as e:
            raise VectorFormatError(f"line {lineno}: {e}") from None
        if op == "mul":
            got = mod_mul(x, y)
        else:
            got = mod_addsub(x, y, AddSub(op))
        if got.w == expected:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append(lineno)
    return res


def _check_points(curve_spec: str, mode: str, rows):
    from .group import to_affine
    from .scalar_mul import point_multiply

    c = load_curve(curve_spec)
    res = VerifyResult()
    for lineno, cols in rows:
        if len(cols) != 5:
            raise VectorFormatError(f"line {lineno}: expected 5 fields, got {len(cols)}")
        try:
            k = Word256.from_hex(cols[0])
            px, py, qx, qy = (Word256.from_hex(s).to_int() for s in cols[1:])
            P = c.point(px, py)
        except ValueError as e:
            raise VectorFormatError(f"line {lineno}: {e}") from None
        got = to_affine(point_multiply(k, P, c, mode, trace=False).point).ints()
        if got == (qx, qy):
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append(lineno)
    return res


def _check_chunk(args):
    kind, headers, rows = args
    if kind == "field":
        return _check_modular(field_from_headers(headers), headers.get("op", "mul").lower(), rows)
    return _check_points(headers["curve"], headers.get("mode", "paper").lower(), rows)


def verify_text(text: str, source: str = "<vectors>", workers: int = 1) -> VerifyResult:
    headers, rows = read_vectors(text, source)
    if not rows:
        return VerifyResult()
    kind = "field" if "field" in headers else "curve"
    if kind == "field":
        field_from_headers(headers)  # fail fast on a bad header
        if headers.get("op", "mul").lower() not in {"mul", "add", "sub"}:
            raise VectorFormatError(f"unknown op {headers['op']!r}")
    elif headers.get("mode", "paper").lower() not in {"paper", "exact"}:
        raise VectorFormatError(f"unknown mode {headers['mode']!r}")
    if workers <= 1:
        return _check_chunk((kind, headers, rows))
    chunks = [(kind, headers, rows[i::workers]) for i in range(workers)]
    total = VerifyResult()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for r in pool.map(_check_chunk, chunks):
            total.passed += r.passed
            total.failed += r.failed
            total.failures.extend(r.failures)
    total.failures.sort()
    return total


def verify_file(path, workers: int = 1) -> VerifyResult:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise VectorFormatError(f"cannot read {path}: {e}") from None
    return verify_text(text, str(path), workers)


# ---------------------------------------------------------------------------
# generation (reference arithmetic only)
# ---------------------------------------------------------------------------

def _h(v: int) -> str:
    return f"{v:064x}"


def modular_vectors(backend: str, count: int, seed: int = 0, op: str = "mul",
                    modulus: int | None = None, bits: int = 256) -> str:
    backend = Backend(backend)
    if backend is Backend.FAST_P256:
        p = int(P256_HEX, 16)
    elif backend is Backend.PSEUDO_25519:
        p = int(P25519_HEX, 16)
    elif modulus is None:
        raise ValueError("generic vectors need a modulus")
    else:
        p = modulus
    rng = random.Random(seed)
    ops = {"mul": lambda x, y: oracle.o_mulmod(x, y, p),
           "add": lambda x, y: oracle.o_mod(x + y, p),
           "sub": lambda x, y: oracle.o_mod(x - y, p)}
    fn = ops[op]
    lines = [f"# field: {backend.value}", f"# op: {op}"]
    if backend is Backend.GENERIC:
        lines += [f"# modulus: {p:x}", f"# bits: {bits}"]
    edge = [(0, 0), (p - 1, 1), (p - 1, p - 1), (1, p - 1)]
    for i in range(count):
        x, y = edge[i] if i < len(edge) else (rng.randrange(p), rng.randrange(p))
        lines.append(f"{_h(x)} {_h(y)} {_h(fn(x, y))}")
    return "\n".join(lines) + "\n"


def point_vectors(curve_spec: str, count: int, seed: int = 0, mode: str = "paper") -> str:
    c = load_curve(curve_spec)
    if c.base is None:
        raise ValueError(f"curve {c.name} has no base point")
    oc = c.oracle()
    P = c.base.ints()
    rng = random.Random(seed)
    lines = [f"# curve: {curve_spec}", f"# mode: {mode}"]
    fixed = [1, 2, 3]
    for i in range(count):
        k = fixed[i] if i < len(fixed) else rng.getrandbits(c.bits) | 1
        q = oracle.o_scalar_mul(k, P, oc)
        lines.append(" ".join(_h(v) for v in (k, *P, *q)))
    return "\n".join(lines) + "\n"
