import json

import pytest

from edccsim import oracle
from edccsim.cli import format_value, main, parse_text, table2_rows
from edccsim.curves import dump_curve, ed25519, toy_curve
from edccsim.vectors import modular_vectors


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pm_defaults_random_msb_scalar(capsys):
    k = f"{(1 << 255) | 0x1234abcd:x}"
    code, out, _ = run(capsys, "pm", "--scalar", k, "--output", "json")
    d = json.loads(out)
    assert code == 0 and d["latency_cycles"] == 164730
    B = ed25519().base.ints()
    assert (int(d["result_x_hex"], 16), int(d["result_y_hex"], 16)) == \
        oracle.o_scalar_mul(int(k, 16), B, ed25519().oracle())


def test_pm_scalar_one_returns_input(capsys):
    code, out, _ = run(capsys, "pm", "--scalar", "1", "--output", "json")
    d = json.loads(out)
    assert d["result_x_hex"] == ed25519().base.x.hex()
    assert d["result_y_hex"] == ed25519().base.y.hex()


@pytest.mark.parametrize("cmd", [
    ["pm", "--scalar", "abc", "--curve", "toy16"],
    ["point-op", "--curve", "toy16"],
    ["mod-mul", "5", "7", "--curve", "p256e"],
])
def test_json_text_roundtrip(capsys, cmd):
    _, text, _ = run(capsys, *cmd)
    _, js, _ = run(capsys, *cmd, "--output", "json")
    parsed, d = parse_text(text), json.loads(js)
    assert list(parsed) == list(d)
    assert all(parsed[k] == format_value(v) for k, v in d.items())


def test_json_numeric_keys_carry_units(capsys):
    _, js, _ = run(capsys, "pm", "--scalar", "3", "--curve", "toy8", "--output", "json")
    for k, v in json.loads(js).items():
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            assert k in {"iterations"} or k.endswith(("_cycles", "_mhz", "_s", "_bps", "_bits")), k


def test_point_op_census(capsys):
    code, out, _ = run(capsys, "point-op", "--output", "json")
    d = json.loads(out)
    assert d["latency_cycles"] == 646
    assert (d["issued_mod_mul"], d["issued_mod_sqr"], d["issued_mod_add"], d["issued_mod_sub"]) == (13, 1, 2, 2)


def test_point_op_other(capsys):
    c = toy_curve(16)
    oc = c.oracle()
    Q = oracle.o_scalar_mul(5, c.base.ints(), oc)
    code, out, _ = run(capsys, "point-op", "--curve", "toy16", "--other", f"{Q[0]:x},{Q[1]:x}", "--output", "json")
    d = json.loads(out)
    assert (int(d["result_x_hex"], 16), int(d["result_y_hex"], 16)) == oracle.o_scalar_mul(6, c.base.ints(), oc)


def test_mod_mul(capsys):
    code, out, _ = run(capsys, "mod-mul", "7fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffec", "2", "--output", "json")
    d = json.loads(out)
    assert int(d["product_hex"], 16) == 2**255 - 21 and d["latency_cycles"] == 129


@pytest.mark.parametrize("mult,cycles", [("radix2", 257), ("schoolbook", 257)])
def test_mod_mul_multiplier_flag(capsys, mult, cycles):
    _, out, _ = run(capsys, "mod-mul", "3", "4", "--multiplier", mult, "--output", "json")
    assert json.loads(out)["latency_cycles"] == cycles


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "pm", "--scalar", "xyz")[0] == 2
    assert run(capsys, "pm", "--scalar", "1", "--point", "1,2")[0] == 3
    assert run(capsys, "pm", "--scalar", "1", "--point", "nonsense")[0] == 2
    assert run(capsys, "pm", "--scalar", "1", "--curve", "nope")[0] == 2
    assert run(capsys, "mod-mul", "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff", "1")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.vec"))[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["pm"])
    assert e.value.code == 2


def test_verify(capsys, tmp_path):
    f = tmp_path / "v.vec"
    f.write_text(modular_vectors("pseudo25519", 20, seed=1))
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 0 and out.strip() == "20 passed, 0 failed"
    lines = f.read_text().splitlines()
    x, y, z = lines[-1].split()
    lines[-1] = f"{x} {y} {(int(z, 16) + 1) % (2**255 - 19):064x}"
    f.write_text("\n".join(lines) + "\n")
    code, out, err = run(capsys, "verify", str(f))
    assert code == 1 and out.strip() == "19 passed, 1 failed" and "line 22" in err
    f.write_text("")
    assert run(capsys, "verify", str(f))[:2] == (0, "0 passed, 0 failed\n")
    f.write_text("# field: pseudo25519\nnot hex at all\n")
    assert run(capsys, "verify", str(f))[0] == 2


def test_gen_vectors_then_verify(capsys, tmp_path):
    for kind, curve in [("mul", "ed25519"), ("add", "p256e"), ("sub", "toy32"), ("point", "toy8")]:
        out = tmp_path / f"{kind}.vec"
        assert run(capsys, "gen-vectors", "--kind", kind, "--curve", curve, "--count", "12", "--out", str(out))[0] == 0
        code, text, _ = run(capsys, "verify", str(out))
        assert code == 0 and text.strip() == "12 passed, 0 failed"


def test_curve_file(capsys, tmp_path):
    f = tmp_path / "t.curve"
    f.write_text(dump_curve(toy_curve(16)))
    code, out, _ = run(capsys, "pm", "--scalar", "ff", "--curve", str(f), "--output", "json")
    assert code == 0 and json.loads(out)["latency_cycles"] == 15 * 46


def test_table2_rows():
    rows = {r["operation"]: r for r in table2_rows(117.809)}
    assert rows["modular_multiplication"]["latency_cycles"] == 129
    assert rows["point_operation"]["latency_cycles"] == 646
    assert rows["point_multiplication"]["latency_cycles"] == 164730
    assert rows["point_operation"]["time_s"] == pytest.approx(5.48e-6, rel=1e-2)
    assert rows["point_multiplication"]["throughput_bps"] == pytest.approx(183.38e3, rel=1e-2)


def test_table2_cycles_frequency_independent():
    a = [r["latency_cycles"] for r in table2_rows(117.809)]
    b = [r["latency_cycles"] for r in table2_rows(50.0)]
    assert a == b


def test_table2_output(capsys):
    code, out, _ = run(capsys, "table2")
    assert code == 0
    assert "5.483 us" in out and "1.398 ms" in out and "183.1 kbps" in out and "46.69 Mbps" in out
    assert "1.095 us" in out and "15.832 ns" in out
    _, js, _ = run(capsys, "table2", "--output", "json")
    assert json.loads(js)["paper_period_note"] is True
    _, js, _ = run(capsys, "table2", "--output", "json", "--clock-mhz", "100")
    d = json.loads(js)
    assert d["paper_period_note"] is False
    assert d["rows"][0]["time_s"] == pytest.approx(1.29e-6)
