"""Roots of unity in the spectrum of rational matrices.

An eigenvalue of an r x r rational matrix that is a root of unity of exact
order n has its whole Galois orbit in the spectrum, so phi(n) <= r. The
finitely many such n drive every test below.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import lcm

from .exactlin import Polynomial, RatMatrix, charpoly


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _primes_upto(n: int) -> list:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


@dataclass(frozen=True)
class OrderSet:
    """Possible root-of-unity orders in dimension ``r``.

    ``exponent_M`` kills every finite-order element of GL(r, Q);
    ``minkowski_B`` is a multiple of the order of every finite subgroup.
    """

    r: int
    orders: tuple
    exponent_M: int
    minkowski_B: int


def minkowski_bound(r: int) -> int:
    bound = 1
    for p in _primes_upto(r + 1):
        e, q = 0, 1
        while r // (q * (p - 1)):
            e += r // (q * (p - 1))
            q *= p
        bound *= p**e
    return bound


@lru_cache(maxsize=None)
def order_set(r: int) -> OrderSet:
    if r < 0:
        raise ValueError("dimension must be non-negative")
    # phi(n) >= sqrt(n/2), so nothing past 2r^2 qualifies
    orders = tuple(n for n in range(1, 2 * r * r + 2) if euler_phi(n) <= r)
    if r == 0:
        return OrderSet(0, (), 1, 1)
    return OrderSet(r, orders, reduce(lcm, orders, 1), minkowski_bound(r))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Polynomial:
    """n-th cyclotomic polynomial: x^n - 1 divided by Phi_d for d | n, d < n."""
    if n < 1:
        raise ValueError("n must be positive")
    p = Polynomial.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            q, rem = divmod(p, cyclotomic_poly(d))
            assert rem.is_zero()
            p = q
    return p


def cyclotomic_orders(poly: Polynomial, r: int | None = None) -> tuple:
    """Orders n (with phi(n) <= deg) such that Phi_n divides ``poly``."""
    r = poly.degree if r is None else r
    return tuple(n for n in order_set(r).orders if cyclotomic_poly(n).divides(poly))


def cyclotomic_part(poly: Polynomial, r: int | None = None) -> Polynomial:
    """Squarefree product of the Phi_n dividing ``poly``.

    Equals gcd(poly, x^M - 1) for M = exponent_M(r): x^M - 1 is squarefree
    and its factors of degree > r cannot divide a degree-r polynomial.
    """
    out = Polynomial([1])
    for n in cyclotomic_orders(poly, r):
        out = out * cyclotomic_poly(n)
    return out


def root_of_unity_eigenvalue(m: RatMatrix) -> int | None:
    """Smallest order of a root of unity in the spectrum of ``m``."""
    if m.dim == 0:
        return None
    orders = cyclotomic_orders(charpoly(m), m.dim)
    return orders[0] if orders else None


def quasi_unipotent_exponent(m: RatMatrix) -> int | None:
    """``M(r)`` if ``m^M(r)`` is unipotent, else None.

    Decided on the characteristic polynomial: ``m`` is quasi-unipotent iff
    dividing out cyclotomic factors leaves a constant.
    """
    r = m.dim
    M = order_set(r).exponent_M
    p = charpoly(m)
    for n in order_set(r).orders:
        phi = cyclotomic_poly(n)
        while p.degree >= phi.degree:
            q, rem = divmod(p, phi)
            if not rem.is_zero():
                break
            p = q
    return M if p.is_constant() else None


def is_quasi_unipotent(m: RatMatrix) -> bool:
    return quasi_unipotent_exponent(m) is not None


def finite_order_kernel_poly(m: RatMatrix) -> Polynomial:
    """Polynomial ``c`` with ``ker c(m) = ker(m^M - I)``, degree <= r."""
    return cyclotomic_part(charpoly(m), m.dim)


def has_finite_order(m: RatMatrix) -> bool:
    """True iff ``m^M(r) = I``, i.e. ``m`` has finite order."""
    if m.dim == 0:
        return True
    return finite_order_kernel_poly(m)(m).is_zero()
