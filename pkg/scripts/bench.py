"""Wall-clock cost of the model itself (not the modelled hardware).

    python3 scripts/bench.py
"""
import random
import timeit

from edccsim import oracle
from edccsim.alu import FIELD_25519, FIELD_P256, FieldElement, booth_multiply, mod_add, mod_mul
from edccsim.curves import ed25519
from edccsim.group import to_projective, unified_point_op
from edccsim.scalar_mul import point_multiply
from edccsim.words import Word256


def per_call(fn, n):
    fn()  # warm the jit
    return min(timeit.repeat(fn, number=n, repeat=3)) / n


def main():
    rng = random.Random(0)
    c = ed25519()
    A, B = Word256.from_int(rng.getrandbits(256)), Word256.from_int(rng.getrandbits(256))
    rows = [("booth_multiply", per_call(lambda: booth_multiply(A, B), 2000))]
    for f in (FIELD_P256, FIELD_25519):
        x, y = (FieldElement.from_int(f, rng.randrange(f.p.to_int())) for _ in range(2))
        rows.append((f"mod_mul {f.name}", per_call(lambda: mod_mul(x, y), 2000)))
        rows.append((f"mod_add {f.name}", per_call(lambda: mod_add(x, y), 2000)))
    P = to_projective(c.base)
    rows.append(("unified_point_op", per_call(lambda: unified_point_op(P, P, c), 200)))
    k = rng.getrandbits(256)
    rows.append(("point_multiply", per_call(lambda: point_multiply(k, c.base, c, trace=False), 3)))
    rows.append(("oracle scalar_mul", per_call(lambda: oracle.o_scalar_mul(k, c.base.ints(), c.oracle()), 3)))
    for name, t in rows:
        print(f"{name:<22}{t * 1e6:>12.1f} us")


if __name__ == "__main__":
    main()
