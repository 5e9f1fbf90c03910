"""Finitely generated groups of automorphisms of B_r.

A group is given by invertible dual matrices on Q^r. The central object is
W, the subspace of characters whose orbit under the whole group is finite:
the group is ergodic iff W = 0, and it is distal iff iterating W through
successive quotients exhausts Q^r.

Orbit and closure searches are capped by Minkowski's bound on finite
subgroups of GL(r, Q) unless a cap is passed explicitly.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .autdyn import finite_orbit_subspace_auto, torus_validate
from .cyclo import has_finite_order, order_set
from .errors import (
    CapsExhausted,
    NoFiniteAlphaOrbit,
    NormalizationSuspect,
    NotInvertible,
    NotNilpotent,
    ParseError,
)
from .exactlin import (
    QVec,
    RatMatrix,
    Subspace,
    invariant_core,
    is_zero_vec,
    primitive_integer_vec,
    quotient_action,
    restrict_action,
    spin,
    unit_vec,
)

log = logging.getLogger(__name__)

MODES = ("torus", "solenoid")

# hard ceiling on closure enumerations, independent of the Minkowski cap
MAX_ELEMENTS = 200_000


@dataclass(frozen=True)
class GenSet:
    """Generators of a group of automorphisms, as dual matrices."""

    dim: int
    gens: tuple
    mode: str = "solenoid"
    labels: tuple | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParseError(f"unknown mode {self.mode!r}")
        if not self.gens:
            raise ParseError("a generating set needs at least one generator")
        object.__setattr__(self, "gens", tuple(self.gens))
        for i, g in enumerate(self.gens):
            if g.dim != self.dim:
                raise ParseError(f"generator {i + 1} has dimension {g.dim}, expected {self.dim}")
            if g.det() == 0:
                raise NotInvertible(f"generator {i + 1} is singular")
            if self.mode == "torus" and not torus_validate(g):
                raise ParseError(f"generator {i + 1} is not an integer unimodular matrix")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(self.gens):
                raise ParseError("one label per generator expected")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, *gens, mode="solenoid", labels=None) -> "GenSet":
        mats = [g if isinstance(g, RatMatrix) else RatMatrix(g) for g in gens]
        return cls(mats[0].dim, tuple(mats), mode, labels)

    @cached_property
    def inverses(self) -> tuple:
        return tuple(g.inverse() for g in self.gens)

    @property
    def letters(self) -> tuple:
        """Signed 1-based generator indices in BFS tie-break order."""
        out = []
        for i in range(1, len(self.gens) + 1):
            out += [i, -i]
        return tuple(out)

    def letter_matrix(self, letter: int) -> RatMatrix:
        return self.gens[letter - 1] if letter > 0 else self.inverses[-letter - 1]

    def label(self, i: int) -> str:
        return self.labels[i - 1] if self.labels else f"g{i}"

    def evaluate(self, letters: Sequence[int]) -> RatMatrix:
        m = RatMatrix.identity(self.dim)
        for a in letters:
            m = m * self.letter_matrix(a)
        return m

    def word(self, letters: Sequence[int]) -> "Word":
        return Word(tuple(letters), self.evaluate(letters))

    def restrict(self, s: Subspace) -> "GenSet":
        """Action on an invariant subspace, in its echelon basis."""
        return GenSet(s.dim, tuple(restrict_action(g, s) for g in self.gens), "solenoid", self.labels)

    def quotient(self, s: Subspace) -> "GenSet":
        """Action on Q^r / s, in non-pivot coordinates."""
        return GenSet(
            self.dim - s.dim, tuple(quotient_action(g, s) for g in self.gens), "solenoid", self.labels
        )

    def with_generator(self, a: RatMatrix, label: str | None = None) -> "GenSet":
        labels = None
        if self.labels is not None:
            labels = self.labels + (label or f"g{len(self.gens) + 1}",)
        mode = self.mode if torus_validate(a) else "solenoid"
        return GenSet(self.dim, self.gens + (a,), mode, labels)


def _inverse_letters(letters: Sequence[int]) -> tuple:
    return tuple(-a for a in reversed(letters))


def free_reduce(letters: Sequence[int]) -> tuple:
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A group element named by signed generator indices."""

    letters: tuple
    matrix: RatMatrix = field(compare=False)

    def name(self, genset: GenSet | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for a in self.letters:
            base = genset.label(abs(a)) if genset is not None else f"g{abs(a)}"
            parts.append(base if a > 0 else f"{base}^-1")
        return "*".join(parts)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(_inverse_letters(self.letters), self.matrix.inverse())

    def __mul__(self, other: "Word") -> "Word":
        return Word(free_reduce(self.letters + other.letters), self.matrix * other.matrix)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(free_reduce(self.letters * k), self.matrix**k)


def word_commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``."""
    return x.inverse() * y.inverse() * x * y


# ---------------------------------------------------------------------------
# orbits and closures


def vector_orbit(g: GenSet, v: Sequence, cap: int | None = None) -> list | None:
    """Orbit of ``v`` under the group, or None once it exceeds ``cap``."""
    if cap is None:
        cap = order_set(g.dim).minkowski_B
    start = tuple(Fraction(x) for x in v)
    seen = {start}
    orbit = [start]
    queue = deque([start])
    mats = g.gens + g.inverses
    while queue:
        x = queue.popleft()
        for m in mats:
            y = m.apply(x)
            if y not in seen:
                seen.add(y)
                orbit.append(y)
                if len(orbit) > cap:
                    return None
                queue.append(y)
    return orbit


@dataclass(frozen=True)
class FiniteImage:
    """Closure of the generators acting on an invariant subspace."""

    elements: tuple  # restricted matrices, BFS order, identity first
    words: tuple  # letters reaching each element

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class InfiniteImage:
    """An element acting with infinite order on the subspace."""

    witness: Word
    explored: int


def group_image_finite_on(
    g: GenSet, s: Subspace, cap: int | None = None, max_elements: int = MAX_ELEMENTS
):
    """Decide whether the group acts on ``s`` through a finite group.

    Every finite-order element of GL(d, Q) satisfies ``x^M(d) = I``, so the
    first element seen that fails this is an infinite-order witness. If the
    closure completes first, the image is finite. Past the Minkowski cap the
    image is certainly infinite and a witness exists (a finitely generated
    torsion subgroup of GL(d, Q) is finite); enumeration continues to find
    it, up to ``max_elements``.
    """
    if cap is None:
        cap = order_set(s.dim).minkowski_B
    if s.dim == 0:
        return FiniteImage((RatMatrix.identity(0),), ((),))
    restricted = [(a, restrict_action(g.letter_matrix(a), s)) for a in g.letters]
    ident = RatMatrix.identity(s.dim)
    seen = {ident: ()}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for a, m in restricted:
            y = x * m
            if y in seen:
                continue
            letters = seen[x] + (a,)
            if not has_finite_order(y):
                return InfiniteImage(g.word(letters), len(seen))
            seen[y] = letters
            order.append(y)
            if len(seen) == cap + 1:
                log.info("closure passed Minkowski cap %d; searching for a witness", cap)
            if len(seen) > max_elements:
                raise CapsExhausted(
                    "closure exceeded max_elements without an infinite-order witness",
                    [f"explored {len(seen)} elements on a {s.dim}-dimensional subspace"],
                )
            queue.append(y)
    return FiniteImage(tuple(order), tuple(seen[x] for x in order))


@dataclass(frozen=True)
class FiniteOrbitSpace:
    """W together with the finite image of the group on W and the words
    used to cut it down."""

    subspace: Subspace
    image: FiniteImage
    cuts: tuple


def finite_orbit_subspace_group(g: GenSet, cap: int | None = None) -> FiniteOrbitSpace:
    """Largest invariant subspace on which the group acts finitely.

    Start from the common finite-orbit space of the generators, and cut by
    ``ker(w^M - I)`` for each infinite-order witness ``w`` until the image
    is finite. Every cut keeps all finite-orbit vectors and strictly lowers
    the dimension.
    """
    s = Subspace.full(g.dim)
    for m in g.gens:
        s = s & finite_orbit_subspace_auto(m)
    s = invariant_core(s, g.gens)
    cuts = []
    while True:
        res = group_image_finite_on(g, s, cap)
        if isinstance(res, FiniteImage):
            return FiniteOrbitSpace(s, res, tuple(cuts))
        w = res.witness
        cuts.append(w)
        log.debug("cutting W by %s (dim %d)", w.name(g), s.dim)
        s = invariant_core(s & finite_orbit_subspace_auto(w.matrix), g.gens)


def is_ergodic_group(g: GenSet, cap: int | None = None) -> bool:
    return finite_orbit_subspace_group(g, cap).subspace.is_zero()


def finite_orbit_character(g: GenSet, cap: int | None = None):
    """A nonzero character with finite orbit, and that orbit; None when the
    group is ergodic. The character is a primitive integer vector, so it is
    a genuine character in torus mode too."""
    w = finite_orbit_subspace_group(g, cap).subspace
    if w.is_zero():
        return None
    chi = tuple(Fraction(x) for x in primitive_integer_vec(w.basis[0]))
    orbit = vector_orbit(g, chi, cap)
    assert orbit is not None, "vector inside W must have a finite orbit"
    return chi, orbit


# ---------------------------------------------------------------------------
# structure series


@dataclass(frozen=True)
class LayerCertificate:
    """``kind`` is "finite" (the image on the layer is ``image``) or
    "stalled" (the quotient by ``below`` has W = 0)."""

    kind: str
    below: Subspace
    image: FiniteImage | None = None

    @property
    def order(self) -> int | None:
        return self.image.order if self.image is not None else None


@dataclass(frozen=True)
class SeriesReport:
    """Ascending chain ``0 < S_1 < ... < S_n`` of invariant subspaces.

    This is the dual of the descending chain of closed connected invariant
    subgroups ``B_r = K_0 > K_1 > ... `` with ``S_i`` the annihilator of
    ``K_i``.
    """

    chain: tuple
    layers: tuple

    @property
    def finite_layers(self) -> int:
        return sum(1 for c in self.layers if c.kind == "finite")


@dataclass(frozen=True)
class GroupVerdict:
    ergodic: bool
    distal: bool
    W: Subspace
    series: SeriesReport
    character: tuple | None = None
    orbit_size: int | None = None


def distal_series_group(g: GenSet, cap: int | None = None) -> GroupVerdict:
    r = g.dim
    current = Subspace.zero(r)
    chain, layers = [], []
    first_w = None
    while not current.is_full():
        q = g.quotient(current)
        w = finite_orbit_subspace_group(q, cap)
        if first_w is None:
            first_w = w.subspace
        if w.subspace.is_zero():
            layers.append(LayerCertificate("stalled", current))
            break
        layers.append(LayerCertificate("finite", current, w.image))
        current = Subspace.span(current.basis + tuple(current.lift(b) for b in w.subspace.basis), r)
        chain.append(current)
    if first_w is None:
        first_w = Subspace.zero(r)
    character = orbit_size = None
    if not first_w.is_zero():
        character = tuple(Fraction(x) for x in primitive_integer_vec(first_w.basis[0]))
        orbit = vector_orbit(g, character, cap)
        orbit_size = len(orbit) if orbit is not None else None
    return GroupVerdict(
        ergodic=first_w.is_zero() and r > 0,
        distal=current.is_full(),
        W=first_w,
        series=SeriesReport(tuple(chain), tuple(layers)),
        character=character,
        orbit_size=orbit_size,
    )


# ---------------------------------------------------------------------------
# nilpotency


@dataclass(frozen=True)
class LowerCentralSeries:
    """``levels[i]`` generates (an approximation of) gamma_i: the input
    generators for i = 0 and the nontrivial left-normed commutators of
    weight i + 1 after that. The last level is followed by the trivial
    group, so ``nilpotency_class == len(levels)`` (0 for a trivial group).
    """

    genset: GenSet
    levels: tuple

    @property
    def nilpotency_class(self) -> int:
        return len(self.levels)

    def level_genset(self, i: int) -> GenSet | None:
        """Group generated by level ``i``, None when that level is trivial.

        Generator ``j`` of the returned set is the word ``levels[i][j]``.
        """
        if i >= len(self.levels):
            return None
        return GenSet(self.genset.dim, tuple(w.matrix for w in self.levels[i]))


def verify_nilpotent(g: GenSet, class_cap: int | None = None) -> LowerCentralSeries:
    """Lower central series via left-normed generator commutators.

    gamma_{c+1} is the normal closure of the weight c+1 left-normed
    commutators of the generators, so once those are all trivial the group
    is nilpotent of class <= c. Raises NotNilpotent past ``class_cap``
    (default: the dimension).
    """
    if class_cap is None:
        class_cap = max(g.dim, 1)
    base = [g.word((i,)) for i in range(1, len(g.gens) + 1)]
    base = [w for w in base if not w.matrix.is_identity()]
    levels = []
    prev = base
    weight = 1
    while prev:
        if weight > class_cap:
            raise NotNilpotent(
                f"commutators of weight {weight} do not vanish (class cap {class_cap})",
                witness=prev[0],
            )
        levels.append(tuple(prev))
        seen = set()
        nxt = []
        for y in prev:
            for x in base:
                c = word_commutator(y, x)
                if c.matrix.is_identity() or c.matrix in seen:
                    continue
                seen.add(c.matrix)
                nxt.append(c)
        prev = nxt
        weight += 1
    return LowerCentralSeries(g, tuple(levels))


def is_nilpotent(g: GenSet, class_cap: int | None = None) -> bool:
    try:
        verify_nilpotent(g, class_cap)
    except NotNilpotent:
        return False
    return True


# ---------------------------------------------------------------------------
# witnesses, enumeration, irreducibility probe


def extend_nonergodic_witness(g: GenSet, a: RatMatrix, cap: int | None = None):
    """A nonzero character with finite orbit under the group generated by
    ``g`` and ``a``, returned with that orbit.

    ``a`` must normalize the group; only the necessary condition a(W) = W
    is checked up front, and the final orbit is verified by enumeration.
    """
    if a.det() == 0:
        raise NotInvertible("extra automorphism is singular")
    w = finite_orbit_subspace_group(g, cap).subspace
    if not w.is_invariant(a):
        raise NormalizationSuspect("a does not map the finite-orbit subspace onto itself")
    fixed = finite_orbit_subspace_auto(restrict_action(a, w)) if w.dim else Subspace.zero(0)
    if fixed.is_zero():
        raise NoFiniteAlphaOrbit("no nonzero finite-orbit character has a finite orbit under a")
    chi = w.embed(fixed.basis[0])
    chi = tuple(Fraction(x) for x in primitive_integer_vec(chi))
    orbit = vector_orbit(g.with_generator(a), chi, cap)
    if orbit is None:
        raise NormalizationSuspect("combined orbit is not finite; a does not normalize the group")
    return chi, orbit


def element_enumerate(g: GenSet, max_len: int) -> Iterator[Word]:
    """Distinct group elements by breadth-first search over freely reduced
    words of length <= ``max_len``; identity first, then shortest words in
    letter order."""
    ident = RatMatrix.identity(g.dim)
    seen = {ident}
    yield Word((), ident)
    frontier = [((), ident)]
    for _ in range(max_len):
        nxt = []
        for letters, m in frontier:
            for a in g.letters:
                if letters and letters[-1] == -a:
                    continue
                y = m * g.letter_matrix(a)
                if y in seen:
                    continue
                seen.add(y)
                w = Word(letters + (a,), y)
                yield w
                nxt.append((w.letters, y))
        frontier = nxt


def probe_irreducible(g: GenSet, trials: int = 8, seed: int = 0) -> Subspace | None:
    """Look for a proper nonzero invariant subspace by spinning vectors.

    Returns the first one found. None is one-sided evidence of
    irreducibility only.
    """
    r = g.dim
    rng = random.Random(seed)
    candidates = [unit_vec(r, i) for i in range(r)]
    for _ in range(trials):
        candidates.append(tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(r)))
    for v in candidates:
        if is_zero_vec(v):
            continue
        s = spin([v], g.gens, r)
        if not s.is_full():
            return s
    return None
