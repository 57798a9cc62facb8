"""Measured vs closed-form cycle counts across datapath widths and multipliers.

    python3 scripts/cycle_formula_sweep.py

Group op:  L*5 + 1 where L = multiplier steps + 1   (radix-4: 5m/2 + 6)
PM:        (m - 1) * group op
"""
import random

from edccsim.curves import load_curve
from edccsim.group import to_projective, unified_point_op
from edccsim.ledger import CycleLedger
from edccsim.scalar_mul import point_multiply

STEPS = {"radix4": lambda m: m // 2, "radix2": lambda m: m, "schoolbook": lambda m: m}


def main():
    rng = random.Random(0)
    print(f"{'curve':<9}{'mult':<12}{'op':>7}{'op_pred':>9}{'pm':>10}{'pm_pred':>10}")
    for name in ("toy8", "toy16", "toy32", "ed25519"):
        c = load_curve(name)
        m = c.bits
        for mult, steps in STEPS.items():
            led = CycleLedger(trace=None)
            B = to_projective(c.base)
            unified_point_op(B, B, c, led, mult)
            op_pred = 5 * (steps(m) + 1) + 1
            pm = point_multiply(rng.getrandbits(m), c.base, c, multiplier=mult, trace=False).cycles
            pm_pred = (m - 1) * op_pred
            flag = "" if (led.total, pm) == (op_pred, pm_pred) else "  MISMATCH"
            print(f"{name:<9}{mult:<12}{led.total:>7}{op_pred:>9}{pm:>10}{pm_pred:>10}{flag}")


if __name__ == "__main__":
    main()
