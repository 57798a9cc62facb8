import pytest

from edccsim.curves import (
    CURVE_DIR_ENV, dump_curve, ed25519, load_curve, p256e, parse_curve_text, toy_curve,
)
from edccsim.group import NotOnCurveError


@pytest.mark.parametrize("name", ["ed25519", "p256e", "toy8", "toy16", "toy32"])
def test_dump_parse_roundtrip(name, tmp_path):
    c = load_curve(name)
    path = tmp_path / f"{name}.curve"
    path.write_text(dump_curve(c))
    c2 = load_curve(str(path))
    assert (c2.field, c2.a, c2.d, c2.base) == (c.field, c.a, c.d, c.base)


def test_env_dir(tmp_path, monkeypatch):
    (tmp_path / "mine.curve").write_text(dump_curve(toy_curve(16)).replace("toy16", "mine"))
    monkeypatch.setenv(CURVE_DIR_ENV, str(tmp_path))
    assert load_curve("mine").name == "mine"


def test_builtins_cached():
    assert ed25519() is ed25519() and p256e() is load_curve("p256e")


def test_toy_curves_fit_width():
    for bits in (8, 16, 32):
        c = toy_curve(bits)
        assert c.bits == bits and c.field.p.to_int() < 2**bits and c.complete


@pytest.mark.parametrize("text,msg", [
    ("p = 7\na = 1\nd = 3\n", "missing backend"),
    ("backend = nope\np = 7\na = 1\nd = 3\n", "unknown backend"),
    ("backend = generic\nbits = 8\np = fb\na = 2\nd = 3\nbase_x = 1\n", "go together"),
    ("backend generic\n", "key = value"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ValueError, match=msg):
        parse_curve_text(text)


def test_base_checked():
    c = toy_curve(8)
    text = dump_curve(c).replace(f"base_y = {c.base.y.hex()}", f"base_y = {c.base.y.to_int() + 1:x}")
    with pytest.raises(NotOnCurveError):
        parse_curve_text(text)


def test_unknown_name():
    with pytest.raises(ValueError, match="unknown curve"):
        load_curve("secp256k1")
