"""2x2 integer matrices as tuples ((a, b), (c, d)) acting by Mobius maps."""

from __future__ import annotations

from fractions import Fraction

from .exact import INF, Rational, as_pair, reduce

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
T: Matrix = ((1, 1), (0, 1))
S: Matrix = ((0, -1), (1, 0))


def mat(a: int, b: int, c: int, d: int) -> Matrix:
    return ((a, b), (c, d))


def mul(x: Matrix, y: Matrix) -> Matrix:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def det(x: Matrix) -> int:
    (a, b), (c, d) = x
    return a * d - b * c


def inv(x: Matrix) -> Matrix:
    """Inverse of a determinant-one matrix."""
    (a, b), (c, d) = x
    if a * d - b * c != 1:
        raise ValueError("inverse requires determinant 1")
    return ((d, -b), (-c, a))


def power(x: Matrix, k: int) -> Matrix:
    if k < 0:
        return power(inv(x), -k)
    out = IDENTITY
    for _ in range(k):
        out = mul(out, x)
    return out


def is_projective_identity(x: Matrix) -> bool:
    return x in (IDENTITY, ((-1, 0), (0, -1)))


def canonical(x: Matrix) -> Matrix:
    """Representative of +-x with the first non-zero entry positive."""
    (a, b), (c, d) = x
    for v in (a, b, c, d):
        if v:
            return x if v > 0 else ((-a, -b), (-c, -d))
    return x


def act(x: Matrix, z: Rational) -> Rational:
    """Mobius action on the extended rationals."""
    (a, b), (c, d) = x
    p, q = as_pair(z)
    return reduce(a * p + b * q, c * p + d * q)


def act_vector(x: Matrix, v: tuple[int, int]) -> tuple[int, int]:
    (a, b), (c, d) = x
    p, q = v
    return (a * p + b * q, c * p + d * q)


def in_gamma0(x: Matrix, n: int) -> bool:
    return det(x) == 1 and x[1][0] % n == 0


def to_json(x: Matrix) -> list[list[int]]:
    return [list(x[0]), list(x[1])]
