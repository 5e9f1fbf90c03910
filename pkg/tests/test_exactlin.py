import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cofactor_charpoly, random_int_matrix, random_invertible_rational
from soldyn.errors import NotInvariant, NotInvertible, ParseError
from soldyn.exactlin import (
    Polynomial,
    RatMatrix,
    Subspace,
    charpoly,
    commutator,
    invariant_core,
    kernel,
    poly_gcd,
    primitive_integer_vec,
    quotient_action,
    restrict_action,
    rref,
    spin,
    to_rat,
)

small = st.integers(-4, 4)


def matrices(r_min=1, r_max=4):
    return st.integers(r_min, r_max).flatmap(
        lambda r: st.lists(st.lists(small, min_size=r, max_size=r), min_size=r, max_size=r)
    ).map(RatMatrix)


def rect(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


# ---------------------------------------------------------------------------
# scalars and polynomials


def test_to_rat_refuses_floats():
    with pytest.raises(ParseError):
        to_rat(0.5)
    with pytest.raises(ParseError):
        to_rat(True)
    assert to_rat("3/6") == Fraction(1, 2)


def test_primitive_integer_vec():
    assert primitive_integer_vec([Fraction(-1, 2), Fraction(3, 4)]) == (2, -3)
    assert primitive_integer_vec([0, Fraction(6), Fraction(-9)]) == (0, 2, -3)


def test_polynomial_str_and_eval():
    p = Polynomial([-1, -1, 1])
    assert str(p) == "x^2 - x - 1"
    assert p(2) == 1
    assert p.degree == 2 and Polynomial().degree == -1


@given(st.lists(small, max_size=5), st.lists(small, min_size=1, max_size=4))
def test_polynomial_divmod(a, b):
    a, b = Polynomial(a), Polynomial(b)
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.lists(small, max_size=4), st.lists(small, max_size=4), st.lists(small, min_size=1, max_size=3))
def test_poly_gcd_divides_both(a, b, c):
    c = Polynomial(c)
    if c.is_zero():
        return
    a, b = Polynomial(a) * c, Polynomial(b) * c
    g = poly_gcd(a, b)
    if a.is_zero() and b.is_zero():
        return
    assert g.divides(a) and g.divides(b)
    assert c.monic().divides(g) or c.degree == 0


# ---------------------------------------------------------------------------
# matrices


def test_inverse_and_singular():
    m = RatMatrix([[2, 1], [1, 1]])
    assert (m * m.inverse()).is_identity()
    assert m ** -2 == (m * m).inverse()
    with pytest.raises(NotInvertible):
        RatMatrix([[1, 2], [2, 4]]).inverse()


@settings(max_examples=60)
@given(matrices(1, 4))
def test_det_matches_sympy(m):
    assert m.det() == sympy.Matrix(m.tolist()).det()


def test_commutator_of_commuting_is_identity():
    assert commutator(RatMatrix.diag(2, 3), RatMatrix.diag(5, 7)).is_identity()


# ---------------------------------------------------------------------------
# rref and kernels


def test_rref_full_rank_example():
    s, rank = rref([[2, 4], [1, 3]])
    assert rank == 2 and s.is_full()


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda c: st.integers(1, 4).flatmap(lambda r: rect(r, c))))
def test_rref_idempotent_and_scramble_invariant(rows):
    s, rank = rref(rows)
    s2, rank2 = rref([list(b) for b in s.basis], len(rows[0]))
    assert (s, rank) == (s2, rank2)
    rng = random.Random(len(rows))
    scrambled = [list(r) for r in rows]
    rng.shuffle(scrambled)
    combo = [scrambled[0][j] + 2 * scrambled[-1][j] for j in range(len(rows[0]))]
    if len(scrambled) > 1:
        scrambled[0] = combo
    s3, _ = rref(scrambled + [[x * 3 for x in rows[0]]])
    assert s3 == s
    assert rank == sympy.Matrix(rows).rank()


def test_rank_nullity_200():
    rng = random.Random(7)
    for _ in range(200):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        _, rank = rref(m, cols)
        k = kernel(m, cols)
        assert rank + k.dim == cols
        for v in k.basis:
            assert all(sum(Fraction(r[j]) * v[j] for j in range(cols)) == 0 for r in m)


# ---------------------------------------------------------------------------
# charpoly


def test_charpoly_golden(golden):
    assert str(charpoly(golden)) == "x^2 - x - 1"


def test_charpoly_vs_cofactor_random():
    rng = random.Random(11)
    for _ in range(150):
        m = random_int_matrix(rng, rng.randint(1, 4))
        assert charpoly(m) == cofactor_charpoly(m)
    for _ in range(30):
        m = random_invertible_rational(rng, rng.randint(1, 4))
        assert charpoly(m) == cofactor_charpoly(m)


@settings(max_examples=50)
@given(matrices(1, 4))
def test_charpoly_cayley_hamilton_and_sympy(m):
    p = charpoly(m)
    assert p(m).is_zero()
    x = sympy.Symbol("x")
    ref = sympy.Matrix(m.tolist()).charpoly(x).all_coeffs()[::-1]
    assert list(p.coeffs) == [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in ref]


# ---------------------------------------------------------------------------
# subspaces


def test_subspace_ops():
    a = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    assert (a & b) == Subspace.span([[0, 1, 0]], 3)
    assert (a + b).is_full()
    assert a.annihilator() == Subspace.span([[0, 0, 1]], 3)
    assert [0, 5, 0] in a and [0, 0, 1] not in a
    assert Subspace.zero(3) < a <= a
    v = (Fraction(3), Fraction(-2), Fraction(0))
    assert a.embed(a.coordinates(v)) == v
    assert a.project((1, 2, 7)) == (7,)
    assert a.project(a.lift((7,))) == (7,)


@settings(max_examples=60)
@given(rect(2, 3), rect(2, 3))
def test_intersection_and_sum_dimensions(u, v):
    a, b = Subspace.span(u, 3), Subspace.span(v, 3)
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b) <= a and (a & b) <= b


def test_image_preimage():
    m = RatMatrix([[0, 1], [0, 0]])
    line = Subspace.span([[1, 0]], 2)
    assert line.image(m).is_zero()
    assert line.preimage(m).is_full()
    assert line.is_invariant(m)


def test_spin():
    s = spin([[1, 0, 0]], [RatMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])], 3)
    assert s.is_full()


def test_invariant_core_examples():
    swap = RatMatrix([[0, 1], [1, 0]])
    assert invariant_core(Subspace.span([[1, 0]], 2), [swap]).is_zero()
    assert invariant_core(Subspace.span([[1, 1]], 2), [swap]) == Subspace.span([[1, 1]], 2)


def _pivot_pattern_subspaces(r, values=(-1, 0, 1)):
    """All RREF subspaces of Q^r whose free entries lie in ``values``."""
    out = {Subspace.zero(r)}
    for k in range(1, r + 1):
        for pivots in itertools.combinations(range(r), k):
            free = [(i, j) for i in range(k) for j in range(r) if j > pivots[i] and j not in pivots]
            for vals in itertools.product(values, repeat=len(free)):
                rows = [[0] * r for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), x in zip(free, vals):
                    rows[i][j] = x
                out.add(Subspace.span(rows, r))
    return out


def test_invariant_core_exhaustive_r3():
    rng = random.Random(5)
    subspaces = {r: _pivot_pattern_subspaces(r) for r in (1, 2, 3)}
    pool = [
        RatMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]]),
        RatMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        RatMatrix([[1, 0], [1, 1]]),
        RatMatrix([[1, 0], [0, -1]]),
    ]
    for _ in range(40):
        r = rng.randint(1, 3)
        gens = [m for m in pool if m.dim == r] or [RatMatrix.identity(r)]
        gens = gens + [RatMatrix.diag(*[rng.choice([1, 2]) for _ in range(r)])]
        seed = Subspace.span([[rng.randint(-1, 1) for _ in range(r)] for _ in range(rng.randint(0, r))], r)
        core = invariant_core(seed, gens)
        assert core <= seed and all(core.is_invariant(m) for m in gens)
        for s in subspaces[r]:
            if s <= seed and all(s.is_invariant(m) for m in gens):
                assert s <= core


def test_restrict_and_quotient_charpoly_multiplicative():
    rng = random.Random(3)
    m = RatMatrix([[2, 1, 0], [0, 3, 1], [0, 0, 5]])
    v = Subspace.span([[1, 0, 0], [0, 1, 0]], 3)
    assert charpoly(restrict_action(m, v)) * charpoly(quotient_action(m, v)) == charpoly(m)
    with pytest.raises(NotInvariant):
        restrict_action(m, Subspace.span([[0, 0, 1]], 3))
    for _ in range(50):
        p = random_invertible_rational(rng, 3)
        mm = p * m * p.inverse()
        vv = Subspace.span([p.apply(b) for b in v.basis], 3)
        assert charpoly(restrict_action(mm, vv)) * charpoly(quotient_action(mm, vv)) == charpoly(mm)
