"""Freeze reference-side fixtures under tests/fixtures/.

    python3 scripts/freeze_fixtures.py

Writes ed25519_kB.json (k*B for k = 1..8, reference arithmetic only) and a
small set of vector files. Re-running is deterministic.
"""
import json
from pathlib import Path

from edccsim import oracle
from edccsim.curves import ED25519_ORDER, ed25519
from edccsim.vectors import modular_vectors, point_vectors

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    c = ed25519()
    oc = c.oracle()
    B = c.base.ints()
    assert oracle.o_is_prime(ED25519_ORDER)
    assert oracle.o_scalar_mul(ED25519_ORDER, B, oc) == (0, 1)
    table = {
        "curve": "ed25519",
        "order_hex": f"{ED25519_ORDER:x}",
        "multiples": [
            {"k": k, "x": f"{x:064x}", "y": f"{y:064x}"}
            for k in range(1, 9)
            for x, y in [oracle.o_scalar_mul(k, B, oc)]
        ],
    }
    (OUT / "ed25519_kB.json").write_text(json.dumps(table, indent=1) + "\n")
    (OUT / "mul_25519.vec").write_text(modular_vectors("pseudo25519", 64, seed=1))
    (OUT / "mul_p256.vec").write_text(modular_vectors("fast_p256", 64, seed=2))
    (OUT / "pm_toy16.vec").write_text(point_vectors("toy16", 16, seed=3))
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
