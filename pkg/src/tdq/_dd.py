"""Double-double ("dd") arithmetic on (hi, lo) float pairs.

Error-free transforms per Dekker and Knuth; a dd value carries ~31
significant decimal digits.  Used to sum alternating series whose terms
grow like e^{x^2} before cancelling down to O(1): accumulating in plain
binary64 would lose up to 16 digits to cancellation, dd keeps the noise
near 1e-32 * max|term|.

Only the handful of operations the series kernels need are provided.
"""

from __future__ import annotations

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a: float, b: float) -> tuple[float, float]:
    """a + b as (sum, exact rounding error)."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """two_sum under the precondition |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def two_prod(a: float, b: float) -> tuple[float, float]:
    """a * b as (product, exact rounding error)."""
    p = a * b
    ca = _SPLIT * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLIT * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s1, s2 = two_sum(x[0], y[0])
    t1, t2 = two_sum(x[1], y[1])
    s2 += t1
    s1, s2 = quick_two_sum(s1, s2)
    s2 += t2
    return quick_two_sum(s1, s2)


def dd_mul(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    p1, p2 = two_prod(x[0], y[0])
    p2 += x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p1, p2)


def dd_mul_f(x: tuple[float, float], b: float) -> tuple[float, float]:
    p1, p2 = two_prod(x[0], b)
    p2 += x[1] * b
    return quick_two_sum(p1, p2)


def dd_div(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    q1 = x[0] / y[0]
    r = dd_add(x, dd_mul_f(y, -q1))
    q2 = r[0] / y[0]
    r = dd_add(r, dd_mul_f(y, -q2))
    q3 = r[0] / y[0]
    s1, s2 = quick_two_sum(q1, q2)
    return dd_add((s1, s2), (q3, 0.0))


def dd_div_f(x: tuple[float, float], b: float) -> tuple[float, float]:
    q1 = x[0] / b
    p1, p2 = two_prod(q1, b)
    q2 = ((x[0] - p1) + (x[1] - p2)) / b
    return quick_two_sum(q1, q2)


def dd_npow(x: tuple[float, float], n: int) -> tuple[float, float]:
    """x**n for a small non-negative integer n."""
    r = (1.0, 0.0)
    for _ in range(n):
        r = dd_mul(r, x)
    return r


# Constants beyond binary64 precision.
DD_PI = (3.141592653589793, 1.2246467991473532e-16)
DD_EULER_GAMMA = (0.5772156649015329, -4.942915152430645e-18)
