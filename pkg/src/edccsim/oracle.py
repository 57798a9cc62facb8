"""Reference arithmetic on plain Python integers.

Nothing here imports the datapath modules: this is the independent side of
every cross-check. Points are ``(x, y)`` int tuples, curves are
``OracleCurve(p, a, d)``.
"""
from __future__ import annotations

import random
from typing import NamedTuple


class OracleCurve(NamedTuple):
    p: int
    a: int
    d: int


def o_mod(x: int, p: int) -> int:
    return x % p


def o_mulmod(x: int, y: int, p: int) -> int:
    return (x * y) % p


def o_invmod(x: int, p: int) -> int:
    """Fermat inverse x^(p-2) mod p."""
    if x % p == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(x, p - 2, p)


def o_qr(x: int, p: int) -> bool:
    """Euler criterion: True iff x is a nonzero square mod p."""
    x %= p
    return x != 0 and pow(x, (p - 1) // 2, p) == 1


def o_sqrt(x: int, p: int) -> int | None:
    """Smallest square root of x mod p (Tonelli-Shanks), or None."""
    x %= p
    if x == 0:
        return 0
    if not o_qr(x, p):
        return None
    if p % 4 == 3:
        r = pow(x, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while o_qr(z, p):
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def o_is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic above."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def o_on_curve(P: tuple[int, int], c: OracleCurve) -> bool:
    x, y = P
    p = c.p
    if not (0 <= x < p and 0 <= y < p):
        return False
    x2, y2 = x * x % p, y * y % p
    return (c.a * x2 + y2) % p == (1 + c.d * x2 * y2) % p


def o_affine_add(P: tuple[int, int], Q: tuple[int, int], c: OracleCurve) -> tuple[int, int]:
    """Twisted Edwards affine addition (the unified law with Z1 = Z2 = 1)."""
    p, a, d = c
    x1, y1 = P
    x2, y2 = Q
    t = d * x1 * x2 * y1 * y2 % p
    den_x = (1 + t) % p
    den_y = (1 - t) % p
    if den_x == 0 or den_y == 0:
        raise ZeroDivisionError("exceptional pair: the curve is not complete")
    x3 = (x1 * y2 + y1 * x2) * o_invmod(den_x, p) % p
    y3 = (y1 * y2 - a * x1 * x2) * o_invmod(den_y, p) % p
    return x3, y3


def o_scalar_mul(k: int, P: tuple[int, int], c: OracleCurve) -> tuple[int, int]:
    """MSB-first double-and-add from the identity over every bit of k."""
    if k < 0:
        raise ValueError("negative scalar")
    T = (0, 1)
    for i in range(k.bit_length() - 1, -1, -1):
        T = o_affine_add(T, T, c)
        if (k >> i) & 1:
            T = o_affine_add(T, P, c)
    return T


def o_neg(P: tuple[int, int], c: OracleCurve) -> tuple[int, int]:
    return (-P[0]) % c.p, P[1]


def o_random_point(c: OracleCurve, rng: random.Random) -> tuple[int, int]:
    """Uniform-ish curve point: random y, solve for x (random sign)."""
    p, a, d = c
    while True:
        y = rng.randrange(p)
        # x^2 = (1 - y^2) / (a - d y^2)
        y2 = y * y % p
        den = (a - d * y2) % p
        if den == 0:
            continue
        x = o_sqrt((1 - y2) * o_invmod(den, p), p)
        if x is None:
            continue
        if rng.getrandbits(1):
            x = (-x) % p
        return x, y


def o_recover_x(y: int, c: OracleCurve, odd: bool = False) -> int | None:
    """x with the given parity for a point with ordinate y, or None."""
    p, a, d = c
    y2 = y * y % p
    den = (a - d * y2) % p
    if den == 0:
        return None
    x = o_sqrt((1 - y2) * o_invmod(den, p), p)
    if x is None:
        return None
    if (x & 1) != odd:
        x = (-x) % p
    return x
