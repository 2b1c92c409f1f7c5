"""2x2 matrix kernels shared by the exact and the mod-p evaluators.

A matrix is the row-major tuple (a11, a12, a21, a22); entries may be ints or Fractions.
"""
from fractions import Fraction

Mat2 = tuple[int | Fraction, int | Fraction, int | Fraction, int | Fraction]

IDENTITY: Mat2 = (1, 0, 0, 1)


def companion(trace, det=1) -> Mat2:
    """[[0, 1], [-det, trace]]: the matrix whose powers carry the Chebyshev (det 1) or Dickson sequences."""
    return 0, 1, -det, trace


def mat_mul(x: Mat2, y: Mat2, modulus: int = None) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    product = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    if modulus:
        return tuple(v % modulus for v in product)
    return product


def mat_pow(m: Mat2, n: int, modulus: int = None) -> Mat2:
    """m^n by left-to-right binary exponentiation."""
    if n < 0:
        raise ValueError(f'negative exponent {n}')
    result = IDENTITY
    for bit in bin(n)[2:]:
        result = mat_mul(result, result, modulus)
        if bit == '1':
            result = mat_mul(result, m, modulus)
    return result


def trace(m: Mat2):
    return m[0] + m[3]
