"""Exact integer matrices and polynomials.

Everything in this module computes over Python's arbitrary-precision
integers (with short excursions into fractions.Fraction where a remainder
sequence needs division).  Floating point never enters: determinants use the
Bareiss fraction-free elimination, characteristic polynomials use the
Faddeev-LeVerrier recurrence (whose divisions are exact for integer input),
and polynomial division/square roots assert exactness instead of rounding.

Matrices are immutable tuples of tuples of ints, polynomials are tuples of
int coefficients in ascending degree order, trimmed of trailing zeros (the
zero polynomial is the empty tuple).  Both representations hash and compare
structurally, which the classifier relies on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = [
    "IntMatrix",
    "IntPoly",
    "freeze_matrix",
    "identity_matrix",
    "zero_matrix",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_mul",
    "mat_pow",
    "transpose",
    "trace",
    "is_zero_matrix",
    "first_negative_entry",
    "block_matrix",
    "bareiss_det",
    "char_poly",
    "poly_trim",
    "poly_degree",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_eval_int",
    "poly_eval_float",
    "poly_eval_matrix",
    "poly_derivative",
    "poly_div_exact",
    "poly_gcd",
    "poly_sqrt_monic",
    "render_poly",
]

IntMatrix = tuple[tuple[int, ...], ...]
IntPoly = tuple[int, ...]


def _check_entry(v: object) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"matrix entries must be plain ints, got {v!r}")
    return v


def freeze_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate a rectangular integer matrix and freeze it to nested tuples."""
    frozen = tuple(tuple(_check_entry(v) for v in row) for row in rows)
    if frozen and any(len(row) != len(frozen[0]) for row in frozen):
        raise ValueError("matrix rows have unequal lengths")
    return frozen


def identity_matrix(r: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def zero_matrix(r: int, c: int | None = None) -> IntMatrix:
    if c is None:
        c = r
    return tuple((0,) * c for _ in range(r))


def mat_add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: int, a: IntMatrix) -> IntMatrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shapes do not compose")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    if k < 0:
        raise ValueError("negative matrix powers are not defined here")
    result = identity_matrix(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base_needed = k >> 1
        if base_needed:
            base = mat_mul(base, base)
        k = base_needed
    return result


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


def trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def is_zero_matrix(a: IntMatrix) -> bool:
    return all(all(v == 0 for v in row) for row in a)


def first_negative_entry(a: IntMatrix) -> tuple[int, int] | None:
    """Row-major position of the first negative entry, or None."""
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            if v < 0:
                return (i, j)
    return None


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a matrix from a grid of conforming blocks."""
    rows: list[tuple[int, ...]] = []
    for block_row in blocks:
        heights = {len(b) for b in block_row}
        if len(heights) != 1:
            raise ValueError("blocks in one row must have equal heights")
        for i in range(heights.pop()):
            rows.append(tuple(v for b in block_row for v in b[i]))
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError("block rows produce unequal widths")
    return tuple(rows)


def bareiss_det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination, exact over Z."""
    r = len(m)
    if r == 0:
        return 1
    if any(len(row) != r for row in m):
        raise ValueError("determinant requires a square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(r - 1):
        if a[k][k] == 0:
            for i in range(k + 1, r):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[r - 1][r - 1]


def char_poly(m: IntMatrix) -> IntPoly:
    """Monic characteristic polynomial det(xI - m), ascending coefficients.

    Uses the Faddeev-LeVerrier recurrence M_{k+1} = m (M_k + c_k I),
    c_k = -trace(M_k)/k, whose divisions are exact for integer matrices.
    """
    r = len(m)
    if r == 0:
        return (1,)
    if any(len(row) != r for row in m):
        raise ValueError("characteristic polynomial requires a square matrix")
    coeffs = [0] * (r + 1)
    coeffs[r] = 1
    mk = m
    c_prev = 0
    for k in range(1, r + 1):
        if k > 1:
            shifted = tuple(
                tuple(v + (c_prev if i == j else 0) for j, v in enumerate(row))
                for i, row in enumerate(mk)
            )
            mk = mat_mul(m, shifted)
        q, rem = divmod(-trace(mk), k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[r - k] = q
        c_prev = q
    return tuple(coeffs)


# -- polynomials ---------------------------------------------------------


def poly_trim(p: Sequence[int]) -> IntPoly:
    coeffs = list(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_degree(p: Sequence[int]) -> int:
    """Degree, with the zero polynomial reported as -1."""
    return len(poly_trim(p)) - 1


def poly_add(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    size = max(len(p), len(q))
    padded_p = list(p) + [0] * (size - len(p))
    padded_q = list(q) + [0] * (size - len(q))
    return poly_trim([a + b for a, b in zip(padded_p, padded_q)])


def poly_sub(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    return poly_add(p, [-c for c in q])


def poly_mul(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    p = poly_trim(p)
    q = poly_trim(q)
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def poly_eval_int(p: Sequence[int], x: int) -> int:
    result = 0
    for c in reversed(p):
        result = result * x + c
    return result


def poly_eval_float(p: Sequence[int], x: float) -> float:
    result = 0.0
    for c in reversed(p):
        result = result * x + c
    return result


def poly_eval_matrix(p: Sequence[int], m: IntMatrix) -> IntMatrix:
    """Evaluate p at a square matrix (Horner, exact)."""
    r = len(m)
    result = zero_matrix(r)
    ident = identity_matrix(r)
    for c in reversed(p):
        result = mat_add(mat_mul(result, m), mat_scale(c, ident))
    return result


def poly_derivative(p: Sequence[int]) -> IntPoly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_div_exact(p: Sequence[int], d: Sequence[int]) -> IntPoly:
    """Quotient p/d for a monic divisor, raising if the division has remainder."""
    p = poly_trim(p)
    d = poly_trim(d)
    if not d or d[-1] != 1:
        raise ValueError("exact division requires a monic divisor")
    if not p:
        return ()
    if len(p) < len(d):
        raise ValueError("division is not exact: degree of dividend too small")
    k = len(d) - 1
    work = list(p)
    out = [0] * (len(p) - k)
    for i in range(len(out) - 1, -1, -1):
        coef = work[i + k]
        out[i] = coef
        if coef:
            for j in range(k + 1):
                work[i + j] -= coef * d[j]
    if any(work[:k]):
        raise ValueError("division is not exact")
    return poly_trim(out)


def _fraction_poly_mod(
    a: list[Fraction], b: list[Fraction]
) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    """Greatest common divisor over Q, returned primitive over Z, positive lead."""
    a = [Fraction(c) for c in poly_trim(p)]
    b = [Fraction(c) for c in poly_trim(q)]
    while b:
        a, b = b, _fraction_poly_mod(a, b)
    if not a:
        return ()
    denom = 1
    for c in a:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in a]
    content = 0
    for c in ints:
        content = gcd(content, c)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def poly_sqrt_monic(p: Sequence[int]) -> IntPoly:
    """The monic integer square root of a monic perfect square polynomial."""
    p = poly_trim(p)
    if not p or p[-1] != 1 or (len(p) - 1) % 2 != 0:
        raise ValueError("polynomial square root requires a monic even-degree input")
    half = (len(p) - 1) // 2
    q = [0] * (half + 1)
    q[half] = 1
    for i in range(half - 1, -1, -1):
        # Coefficient of x^(half+i) in q*q is 2*q_i + sum of inner products.
        inner = sum(
            q[a] * q[half + i - a]
            for a in range(i + 1, half)
            if 0 <= half + i - a < half
        )
        num = p[half + i] - inner
        quotient, rem = divmod(num, 2)
        if rem:
            raise ValueError("polynomial is not a perfect square")
        q[i] = quotient
    result = poly_trim(q)
    if poly_mul(result, result) != p:
        raise ValueError("polynomial is not a perfect square")
    return result


def render_poly(p: Sequence[int], var: str = "x") -> str:
    """Human-readable form, leading term first: 'x^4 - 6x^3 + 10x^2 - 4x'."""
    p = poly_trim(p)
    if not p:
        return "0"
    parts: list[str] = []
    for degree in range(len(p) - 1, -1, -1):
        c = p[degree]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if degree == 0:
            body = str(mag)
        else:
            power = var if degree == 1 else f"{var}^{degree}"
            body = power if mag == 1 else f"{mag}{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
