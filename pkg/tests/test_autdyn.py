import itertools
import random

import pytest

from helpers import orbit_closes, random_invertible_int, random_invertible_rational
from soldyn.autdyn import (
    analyze_auto,
    ergodic_distal_split,
    finite_orbit_subspace_auto,
    is_distal_auto,
    is_ergodic_auto,
    torus_validate,
)
from soldyn.cyclo import is_quasi_unipotent, order_set, root_of_unity_eigenvalue
from soldyn.errors import NotInvertible
from soldyn.exactlin import RatMatrix, Subspace, charpoly, primitive_integer_vec, quotient_action, restrict_action, spin
from soldyn.groupdyn import GenSet, vector_orbit


def test_basic_verdicts(golden, rot4, unip, diag21):
    assert is_ergodic_auto(golden) and not is_distal_auto(golden)
    assert is_distal_auto(rot4) and not is_ergodic_auto(rot4)
    assert is_distal_auto(unip) and not is_ergodic_auto(unip)
    assert not is_ergodic_auto(diag21) and not is_distal_auto(diag21)


def test_singular_rejected():
    with pytest.raises(NotInvertible):
        is_ergodic_auto(RatMatrix([[1, 2], [2, 4]]))
    with pytest.raises(NotInvertible):
        ergodic_distal_split(RatMatrix.zero(2))


def test_torus_validate(golden):
    assert torus_validate(golden)
    assert not torus_validate(RatMatrix.diag(2, 1))
    assert not torus_validate(RatMatrix([["1/2", 0], [0, 2]]))


def test_split_diag21(diag21):
    s = ergodic_distal_split(diag21)
    assert s.distal_part == Subspace.span([[0, 1]], 2)
    assert s.ergodic_part_dim == 1


def test_split_needs_several_steps():
    # rotation on top of an expanding line: W is the rotation plane only
    # after passing to the quotient by the first layer.
    m = RatMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 3]])
    s = ergodic_distal_split(m)
    assert s.distal_part.dim == 2
    assert all(a <= b for a, b in zip(s.chain, s.chain[1:]))


def test_analyze_auto_fields(rot4, golden):
    v = analyze_auto(rot4)
    assert v.root_of_unity_witness == 4 and v.distal and not v.ergodic
    assert v.unipotence_exponent is not None
    assert rot4 ** v.unipotence_exponent == RatMatrix.identity(2)
    g = analyze_auto(golden)
    assert g.ergodic and g.root_of_unity_witness is None and g.unipotence_exponent is None


def _corpus(seed, n=300, r_max=3):
    rng = random.Random(seed)
    return [random_invertible_int(rng, rng.randint(1, r_max)) for _ in range(n)]


def test_exclusivity_300():
    for m in _corpus(21, r_max=4):
        assert not (is_ergodic_auto(m) and is_distal_auto(m))
        assert is_ergodic_auto(m) == finite_orbit_subspace_auto(m).is_zero()
        assert is_ergodic_auto(m) == (ergodic_distal_split(m).distal_part.is_zero())
        assert is_distal_auto(m) == is_quasi_unipotent(m)
        assert is_ergodic_auto(m) == (root_of_unity_eigenvalue(m) is None)


def test_finite_orbit_subspace_sound():
    """Every primitive integer vector of a W basis has a finite orbit, and
    W is invariant; it is zero exactly in the ergodic case."""
    for m in _corpus(22, 120) + [random_invertible_rational(random.Random(k), 3) for k in range(20)]:
        w = finite_orbit_subspace_auto(m)
        assert w.is_invariant(m)
        assert w.is_zero() == is_ergodic_auto(m)
        g = GenSet.of(m)
        for b in w.basis:
            orbit = vector_orbit(g, b)
            assert orbit is not None and len(orbit) <= order_set(m.dim).exponent_M
        if m.is_integral() and not w.is_zero():
            a = [[int(x) for x in row] for row in m.rows]
            v = primitive_integer_vec(w.basis[0])
            assert orbit_closes(a, tuple(int(x) for x in v), order_set(m.dim).exponent_M)


def test_finite_orbit_subspace_is_maximal():
    """Every small integer vector whose orbit closes lies in W."""
    for m in _corpus(23, 150):
        w = finite_orbit_subspace_auto(m)
        a = [[int(x) for x in row] for row in m.rows]
        M = order_set(m.dim).exponent_M
        for v in itertools.product(range(-2, 3), repeat=m.dim):
            if any(v) and orbit_closes(a, v, M):
                assert v in w


def test_split_properties_random():
    for m in _corpus(24, 150):
        s = ergodic_distal_split(m)
        v = s.distal_part
        for a, b in zip(s.chain, s.chain[1:]):
            assert a < b
        if v.dim:
            assert is_quasi_unipotent(restrict_action(m, v))
        if not v.is_full():
            assert root_of_unity_eigenvalue(quotient_action(m, v)) is None
        if 0 < v.dim < m.dim:
            assert charpoly(restrict_action(m, v)) * charpoly(quotient_action(m, v)) == charpoly(m)


def test_conjugation_invariance_of_verdicts():
    rng = random.Random(25)
    for m in _corpus(25, 60):
        p = random_invertible_rational(rng, m.dim)
        c = p * m * p.inverse()
        a, b = analyze_auto(m), analyze_auto(c)
        assert (a.ergodic, a.distal, a.root_of_unity_witness, a.unipotence_exponent) == (
            b.ergodic,
            b.distal,
            b.root_of_unity_witness,
            b.unipotence_exponent,
        )
        assert a.split.ergodic_part_dim == b.split.ergodic_part_dim
        assert ergodic_distal_split(c).distal_part == Subspace.span(
            [p.apply(v) for v in a.split.distal_part.basis], m.dim
        )


def test_ergodic_quotients_stay_ergodic():
    """Quotients of an ergodic automorphism by spun invariant subspaces are
    ergodic. Samples are block triangular, conjugated, so that proper
    invariant subspaces exist."""
    rng = random.Random(26)
    checked = 0
    while checked < 40:
        ra, rb = rng.randint(1, 2), rng.randint(1, 2)
        a, b = random_invertible_int(rng, ra), random_invertible_int(rng, rb)
        r = ra + rb
        rows = [[0] * r for _ in range(r)]
        for i in range(ra):
            for j in range(ra):
                rows[i][j] = a[i, j]
            for j in range(ra, r):
                rows[i][j] = rng.randint(-2, 2)
        for i in range(rb):
            for j in range(rb):
                rows[ra + i][ra + j] = b[i, j]
        p = random_invertible_rational(rng, r)
        m = p * RatMatrix(rows) * p.inverse()
        if not is_ergodic_auto(m):
            continue
        seeds = [p.apply([rng.randint(-3, 3) if i < ra else 0 for i in range(r)]), [rng.randint(-3, 3) for _ in range(r)]]
        for seed in seeds:
            v = spin([seed], [m], r)
            if 0 < v.dim < r:
                checked += 1
                assert is_ergodic_auto(quotient_action(m, v))
                assert is_ergodic_auto(restrict_action(m, v))
