"""Closed-form expected values for regularity of cubic circulant edge
ideals.

These are pure arithmetic in (n, a, t): they never call the computational
engine, so an engine bug cannot leak into the expectations.  Each function
also reports which case of the closed form fired, for human audit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ExpectedValue:
    quantity: str
    n: int
    a: int
    t: int | None
    value: int
    formula_case: str


def expected_im(n: int) -> int:
    """Induced matching number of a connected cubic circulant C_{2n}(a,n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return n // 2


def _check_connected_params(n: int, a: int) -> None:
    if a not in (1, 2):
        raise ValueError(f"connected cubic circulants have a in {{1,2}}, got {a}")
    if not 1 <= a < n:
        raise ValueError(f"need 1 <= a < n, got a={a}, n={n}")
    if a == 2 and n % 2 == 0:
        raise ValueError(f"C_{2*n}(2,{n}) is disconnected for even n")


def expected_reg_base(n: int, a: int) -> ExpectedValue:
    """Regularity of I(C_{2n}(a,n)) for the connected graphs, t = 1."""
    _check_connected_params(n, a)
    im = expected_im(n)
    if n <= 4:
        return ExpectedValue("reg_base", n, a, 1, im + 1, "n <= 4")
    if a == 1 and n % 4 == 1:
        return ExpectedValue("reg_base", n, a, 1, im + 2, "a = 1, n = 4k+1")
    if a == 2 and n % 4 == 3:
        return ExpectedValue("reg_base", n, a, 1, im + 2, "a = 2, n = 4k+3")
    return ExpectedValue("reg_base", n, a, 1, im + 1, "otherwise")


def expected_reg_power(n: int, a: int, t: int) -> ExpectedValue:
    """Regularity of I(C_{2n}(a,n))^t, connected case, t >= 2."""
    _check_connected_params(n, a)
    if t < 2:
        raise ValueError("t must be >= 2; use expected_reg_base for t = 1")
    return ExpectedValue("reg_power", n, a, t, 2 * t - 1 + n // 2,
                         "2t - 1 + floor(n/2)")


def expected_reg_general(n: int, a: int, t: int) -> ExpectedValue:
    """Regularity of powers and symbolic powers of an arbitrary cubic
    circulant C_{2n}(a,n) for t >= 2, via d = gcd(a, 2n)."""
    if not 1 <= a <= n - 1:
        raise ValueError(f"need 1 <= a <= n-1, got a={a}, n={n}")
    if t < 2:
        raise ValueError("t must be >= 2")
    d = math.gcd(a, 2 * n)
    if (2 * n) // d % 2 == 0:
        if (n // d) % 4 != 1:
            return ExpectedValue(
                "reg_general", n, a, t, d * (n // (2 * d)) + 2 * t - 1,
                "2n/d even, n/d != 1 mod 4")
        return ExpectedValue(
            "reg_general", n, a, t, d * (n // (2 * d)) + d + 2 * t - 2,
            "2n/d even, n/d = 1 mod 4")
    q = (2 * n) // d
    if q == 3:
        return ExpectedValue(
            "reg_general", n, a, t, d // 2 + 2 * t - 1, "2n/d = 3")
    if q % 4 != 3:
        return ExpectedValue(
            "reg_general", n, a, t, (d // 2) * (n // d) + 2 * t - 1,
            "2n/d odd, 2n/d != 3 mod 4")
    return ExpectedValue(
        "reg_general", n, a, t, (d // 2) * (n // d) + d // 2 + 2 * t - 2,
        "2n/d odd, 2n/d = 3 mod 4")
