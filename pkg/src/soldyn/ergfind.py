"""Find an ergodic element in an ergodic nilpotent group.

The constructive path peels the space layer by layer: pick a non-distal
element alpha whose lower-central level below is distal, split off the part
where alpha is ergodic (that part is invariant under the whole nilpotent
group), recurse into the distal part to get beta, then look for an
ergodic ``alpha^j beta``. An exhaustive word search backs it up. On valid
input an ergodic element always exists, so running out of caps is a
diagnostic, never a negative answer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .autdyn import ergodic_distal_split, is_distal_auto, is_ergodic_auto
from .errors import CapsExhausted, NotErgodicGroup
from .exactlin import RatMatrix, Subspace, change_basis, unit_vec
from .groupdyn import (
    GenSet,
    LowerCentralSeries,
    Word,
    distal_series_group,
    element_enumerate,
    finite_orbit_character,
    free_reduce,
    verify_nilpotent,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiltrationStep:
    """One peeling step, in original coordinates.

    ``alpha`` acts ergodically on ``space / distal_part`` and distally on
    ``distal_part``; it lies in level ``level - 1`` of the lower central
    series but not (as far as the approximation can tell) in ``level``.
    """

    space: Subspace
    distal_part: Subspace
    alpha: Word
    level: int


@dataclass
class ErgodicSearchResult:
    found: Word | None
    filtration: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    method: str | None = None

    def chain(self) -> tuple:
        """Ascending chain of the invariant subspaces met while peeling."""
        if not self.filtration:
            return ()
        spaces = [s.space for s in self.filtration]
        last = self.filtration[-1].distal_part
        spaces.append(last)
        return tuple(reversed(spaces))


def _expand(level_word: Word, level_words: tuple) -> tuple:
    letters = []
    for a in level_word.letters:
        base = level_words[abs(a) - 1].letters
        letters.extend(base if a > 0 else tuple(-x for x in reversed(base)))
    return free_reduce(letters)


def find_nondistal_element(g: GenSet, series: LowerCentralSeries, max_len: int = 4):
    """``(word, k)`` with ``word`` non-distal and gamma_k distal, scanning
    levels from the deepest up; None when every element within ``max_len``
    is distal."""
    levels = series.levels
    below_distal = True  # the level past the last one is trivial
    for depth in range(len(levels) - 1, -1, -1):
        sub = series.level_genset(depth)
        if below_distal:
            for w in element_enumerate(sub, max_len):
                if not is_distal_auto(w.matrix):
                    letters = _expand(w, levels[depth])
                    return Word(letters, w.matrix), depth + 1
        below_distal = distal_series_group(sub).distal
    return None


def _combine(coords, basis) -> tuple:
    out = [Fraction(0)] * len(basis[0])
    for c, e in zip(coords, basis):
        if c:
            out = [x + c * y for x, y in zip(out, e)]
    return tuple(out)


def _peel(g: GenSet, basis: list, ambient: int, ctx: dict) -> Word | None:
    """Ergodic word for ``g`` (acting on the span of ``basis``), by the
    constructive path; None if a cap is hit."""
    series = verify_nilpotent(g, ctx["class_cap"])
    hit = find_nondistal_element(g, series, ctx["word_cap"])
    if hit is None:
        ctx["diagnostics"].append(f"dim {g.dim}: no non-distal element within word length {ctx['word_cap']}")
        return None
    alpha, level = hit
    distal = ergodic_distal_split(alpha.matrix).distal_part
    if not all(distal.is_invariant(m) for m in g.gens):
        ctx["diagnostics"].append(f"dim {g.dim}: distal part of {alpha.name()} is not group-invariant")
        return None
    ctx["steps"].append(
        FiltrationStep(
            space=Subspace.span(basis, ambient),
            distal_part=change_basis(distal, basis, ambient),
            alpha=alpha,
            level=level,
        )
    )
    if distal.is_zero():
        return alpha
    sub_basis = [_combine(b, basis) for b in distal.basis]
    beta = _peel(g.restrict(distal), sub_basis, ambient, ctx)
    if beta is None:
        return None
    beta = g.word(beta.letters)
    power = Word((), RatMatrix.identity(g.dim))
    for j in range(ctx["power_cap"] + 1):
        cand = power * beta
        if is_ergodic_auto(cand.matrix):
            log.debug("dim %d: alpha^%d * beta is ergodic", g.dim, j)
            return cand
        power = power * alpha
    ctx["diagnostics"].append(f"dim {g.dim}: no ergodic alpha^j * beta for j <= {ctx['power_cap']}")
    return None


def find_ergodic_nilpotent(g: GenSet, word_cap: int = 4, power_cap: int = 8, class_cap: int | None = None):
    """Ergodic element of a nilpotent group acting ergodically.

    Raises NotNilpotent, NotErgodicGroup, or CapsExhausted when both the
    constructive path and the exhaustive search run out of room.
    """
    series = verify_nilpotent(g, class_cap)
    witness = finite_orbit_character(g)
    if witness is not None:
        raise NotErgodicGroup("the group has a finite-orbit character", character=witness[0])
    ctx = {
        "word_cap": word_cap,
        "power_cap": power_cap,
        "class_cap": max(series.nilpotency_class, 1),
        "steps": [],
        "diagnostics": [],
    }
    basis = [unit_vec(g.dim, i) for i in range(g.dim)]
    found = _peel(g, basis, g.dim, ctx)
    result = ErgodicSearchResult(None, ctx["steps"], ctx["diagnostics"])
    if found is not None:
        found = g.word(found.letters)
        assert is_ergodic_auto(found.matrix)
        result.found, result.method = found, "constructive"
        return result
    for w in element_enumerate(g, word_cap):
        if is_ergodic_auto(w.matrix):
            result.found, result.method = w, "exhaustive"
            return result
    result.diagnostics.append(f"exhaustive search up to word length {word_cap} found nothing")
    raise CapsExhausted("no ergodic element within the caps", result.diagnostics)
