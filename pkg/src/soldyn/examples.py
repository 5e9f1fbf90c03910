"""Explicit constructions used as fixtures, acceptance cases and CLI examples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .exactlin import RatMatrix, qvec, unit_vec
from .groupdyn import GenSet


def golden_mean() -> RatMatrix:
    return RatMatrix([[1, 1], [1, 0]])


def rotation4() -> RatMatrix:
    return RatMatrix([[0, -1], [1, 0]])


def unipotent2() -> RatMatrix:
    return RatMatrix([[1, 1], [0, 1]])


def heisenberg_pair() -> tuple:
    """Generators of the integer Heisenberg group (class 2)."""
    return (
        RatMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        RatMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
    )


def tower_alpha(k: int) -> RatMatrix:
    """The unipotent map ``(x_1, ..., x_k) -> (x_1 x_2 ... x_k, x_2 ... x_k, ..., x_k)``
    on T^k, written as its k x k coordinate matrix: ones on and above the
    diagonal."""
    if k < 1:
        raise ValueError("k must be positive")
    return RatMatrix([[1 if j >= i else 0 for j in range(k)] for i in range(k)])


def gamma_plus_lift(a: RatMatrix, w: Sequence) -> RatMatrix:
    """``(q, q_{n+1}) -> (a q + w q_{n+1}, q_{n+1})`` on Q^{n+1}.

    The last coordinate is always fixed, so every lift has eigenvalue 1.
    """
    n = a.dim
    w = qvec(w)
    if len(w) != n:
        raise ParseError(f"translation has length {len(w)}, expected {n}")
    if a.det() == 0:
        raise ParseError("base matrix must be invertible")
    rows = [list(a.rows[i]) + [w[i]] for i in range(n)]
    rows.append([Fraction(0)] * n + [Fraction(1)])
    return RatMatrix(rows)


def gamma_plus_genset(base: GenSet, translations: Sequence[Sequence]) -> GenSet:
    """Finitely generated piece of the semidirect product of ``base`` with
    its translations, acting on Q^{n+1}.

    Generators: lifts of the base generators with zero translation, then
    pure translations.
    """
    n = base.dim
    translations = [qvec(t) for t in translations]
    if not any(any(x != 0 for x in t) for t in translations):
        raise ParseError("at least one nonzero translation is required")
    ident = RatMatrix.identity(n)
    gens = [gamma_plus_lift(a, [0] * n) for a in base.gens]
    gens += [gamma_plus_lift(ident, t) for t in translations]
    labels = [f"{base.label(i + 1)}+" for i in range(len(base.gens))]
    labels += [f"t{i + 1}" for i in range(len(translations))]
    mode = "torus" if base.mode == "torus" and all(x.denominator == 1 for t in translations for x in t) else "solenoid"
    return GenSet(n + 1, tuple(gens), mode, tuple(labels))


# ---------------------------------------------------------------------------
# named examples for the CLI

BASES = {
    "golden": lambda: GenSet.of(golden_mean(), mode="torus", labels=("golden",)),
    "rotation4": lambda: GenSet.of(rotation4(), mode="torus", labels=("rot4",)),
    "unipotent": lambda: GenSet.of(unipotent2(), mode="torus", labels=("u",)),
    "doubling": lambda: GenSet.of([[2]], labels=("x2",)),
}


def parse_translation(token: str, n: int) -> tuple:
    """``e2`` is the second unit vector; otherwise comma-free ``p/q;p/q``."""
    token = token.strip()
    if token.startswith("e") and token[1:].isdigit():
        i = int(token[1:])
        if not 1 <= i <= n:
            raise ParseError(f"unit vector {token} out of range for dimension {n}")
        return unit_vec(n, i - 1)
    parts = token.split(";")
    if len(parts) != n:
        raise ParseError(f"translation {token!r} needs {n} entries")
    return qvec(parts)


def build_example(name: str, k: int = 3, base: str = "golden", translations: str = "e1,e2") -> GenSet:
    if name == "tower":
        return GenSet.of(tower_alpha(k), mode="torus", labels=(f"alpha{k}",))
    if name == "gamma-plus":
        if base not in BASES:
            raise ParseError(f"unknown base {base!r}; choose from {sorted(BASES)}")
        b = BASES[base]()
        ts = [parse_translation(t, b.dim) for t in translations.split(",") if t.strip()]
        return gamma_plus_genset(b, ts)
    if name == "two-diagonal":
        return GenSet.of(RatMatrix.diag(2, 1), RatMatrix.diag(1, 2), labels=("a", "b"))
    if name == "heisenberg":
        return GenSet.of(*heisenberg_pair(), mode="torus", labels=("x", "y"))
    if name in BASES:
        return BASES[name]()
    raise ParseError(f"unknown example {name!r}")


EXAMPLE_NAMES = ("tower", "gamma-plus", "two-diagonal", "heisenberg") + tuple(BASES)
