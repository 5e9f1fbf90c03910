"""Single automorphisms of B_r (and of T^r through their integer lifts).

An automorphism is handled through its dual matrix on Q^r. It is ergodic
iff no eigenvalue is a root of unity, and distal iff it is quasi-unipotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import finite_order_kernel_poly, quasi_unipotent_exponent, root_of_unity_eigenvalue
from .errors import NotInvertible
from .exactlin import RatMatrix, Subspace, kernel, quotient_action


def _require_invertible(m: RatMatrix) -> None:
    if m.det() == 0:
        raise NotInvertible("an automorphism needs an invertible dual matrix")


@dataclass(frozen=True)
class SplitReport:
    """Ascending chain ``V_1 < V_2 < ... < V_n`` of invariant subspaces.

    The matrix is quasi-unipotent on ``V_n`` (the distal part) and has no
    root-of-unity eigenvalue on ``Q^r / V_n`` (the ergodic part).
    """

    chain: tuple
    ambient_dim: int

    @property
    def distal_part(self) -> Subspace:
        return self.chain[-1] if self.chain else Subspace.zero(self.ambient_dim)

    @property
    def ergodic_part_dim(self) -> int:
        return self.ambient_dim - self.distal_part.dim


@dataclass(frozen=True)
class AutoVerdict:
    ergodic: bool
    distal: bool
    root_of_unity_witness: int | None
    unipotence_exponent: int | None
    split: SplitReport = field(repr=False)


def is_ergodic_auto(m: RatMatrix) -> bool:
    """True iff no root of unity is an eigenvalue of ``m``.

    ``root_of_unity_eigenvalue(m)`` gives the offending order on False.
    """
    _require_invertible(m)
    return root_of_unity_eigenvalue(m) is None


def is_distal_auto(m: RatMatrix) -> bool:
    """True iff ``m`` is quasi-unipotent; the certificate is
    ``quasi_unipotent_exponent(m)``."""
    _require_invertible(m)
    return quasi_unipotent_exponent(m) is not None


def finite_orbit_subspace_auto(m: RatMatrix) -> Subspace:
    """Vectors with a finite orbit under ``m``: ``ker(m^M - I)``.

    Computed as the kernel of the cyclotomic part of the characteristic
    polynomial evaluated at ``m``, which has the same kernel.
    """
    if m.dim == 0:
        return Subspace.zero(0)
    return kernel(finite_order_kernel_poly(m)(m))


def ergodic_distal_split(m: RatMatrix) -> SplitReport:
    _require_invertible(m)
    r = m.dim
    chain = []
    current = Subspace.zero(r)
    while not current.is_full():
        q = quotient_action(m, current)
        fin = finite_orbit_subspace_auto(q)
        if fin.is_zero():
            break
        current = Subspace.span(current.basis + tuple(current.lift(b) for b in fin.basis), r)
        chain.append(current)
    return SplitReport(tuple(chain), r)


def torus_validate(m: RatMatrix) -> bool:
    """Integer entries and determinant +-1: an automorphism of T^r."""
    return m.is_integral() and abs(m.det()) == 1


def analyze_auto(m: RatMatrix) -> AutoVerdict:
    _require_invertible(m)
    witness = root_of_unity_eigenvalue(m)
    exponent = quasi_unipotent_exponent(m)
    return AutoVerdict(
        ergodic=witness is None,
        distal=exponent is not None,
        root_of_unity_witness=witness,
        unipotence_exponent=exponent,
        split=ergodic_distal_split(m),
    )
