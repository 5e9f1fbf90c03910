"""Independent oracles and random samplers shared by the test modules.

Nothing here calls the code paths it is used to check: the characteristic
polynomial oracle is a Laplace expansion, orbit closure is plain integer
iteration, and random matrices come from a seeded ``random.Random``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from soldyn.exactlin import Polynomial, RatMatrix


def cofactor_det(rows):
    """Laplace expansion along the first row; entries may be Polynomials."""
    n = len(rows)
    if n == 0:
        return Polynomial([1])
    if n == 1:
        return rows[0][0]
    total = Polynomial()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_charpoly(m: RatMatrix) -> Polynomial:
    x = Polynomial.x()
    rows = [
        [(x if i == j else Polynomial()) - Polynomial([m[i, j]]) for j in range(m.dim)]
        for i in range(m.dim)
    ]
    return cofactor_det(rows)


def matrix_power_direct(m: RatMatrix, k: int) -> RatMatrix:
    out = RatMatrix.identity(m.dim)
    for _ in range(k):
        out = out * m
    return out


def int_rows(m: RatMatrix):
    return [[int(x) for x in row] for row in m.rows]


def orbit_closes(a, v, steps: int) -> bool:
    """Does ``a^k v == v`` for some 1 <= k <= steps (integer arithmetic)?"""
    r = len(v)
    x = v
    for _ in range(steps):
        x = tuple(sum(a[i][j] * x[j] for j in range(r)) for i in range(r))
        if x == v:
            return True
    return False


def brute_force_ergodic(m: RatMatrix, height: int, steps: int) -> bool:
    """No nonzero integer vector of height <= ``height`` has an orbit that
    closes within ``steps`` steps."""
    a = int_rows(m)
    for v in itertools.product(range(-height, height + 1), repeat=m.dim):
        if any(v) and orbit_closes(a, v, steps):
            return False
    return True


# ---------------------------------------------------------------------------
# samplers


def random_int_matrix(rng: random.Random, r: int, lo: int = -3, hi: int = 3) -> RatMatrix:
    return RatMatrix([[rng.randint(lo, hi) for _ in range(r)] for _ in range(r)])


def random_invertible_int(rng: random.Random, r: int, lo: int = -3, hi: int = 3) -> RatMatrix:
    while True:
        m = random_int_matrix(rng, r, lo, hi)
        if m.det() != 0:
            return m


def random_invertible_rational(rng: random.Random, r: int) -> RatMatrix:
    while True:
        m = RatMatrix(
            [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(r)] for _ in range(r)]
        )
        if m.det() != 0:
            return m


def random_unimodular(rng: random.Random, r: int, steps: int = 6) -> RatMatrix:
    """Product of random elementary and signed permutation matrices."""
    m = RatMatrix.identity(r)
    for _ in range(steps):
        if r > 1 and rng.random() < 0.7:
            i, j = rng.sample(range(r), 2)
            e = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
            e[i][j] = rng.choice([-2, -1, 1, 2])
            m = m * RatMatrix(e)
        else:
            perm = list(range(r))
            rng.shuffle(perm)
            signs = [rng.choice([-1, 1]) for _ in range(r)]
            m = m * RatMatrix([[signs[i] if perm[i] == j else 0 for j in range(r)] for i in range(r)])
    return m


def conjugate(m: RatMatrix, p: RatMatrix) -> RatMatrix:
    return p * m * p.inverse()


def random_unitriangular(rng: random.Random, r: int, lo: int = -2, hi: int = 2) -> RatMatrix:
    return RatMatrix([[1 if i == j else (rng.randint(lo, hi) if j > i else 0) for j in range(r)] for i in range(r)])


def companion(coeffs) -> RatMatrix:
    """Companion matrix of the monic polynomial with lower coefficients
    ``coeffs`` (constant term first)."""
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -Fraction(coeffs[i])
    return RatMatrix(rows)
