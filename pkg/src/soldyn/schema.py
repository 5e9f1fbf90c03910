"""JSON input documents and report rendering.

Rationals always travel as strings (``"p/q"`` or ``"p"``) so no float ever
enters an exact computation.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import __version__
from .autdyn import AutoVerdict, SplitReport
from .errors import ParseError
from .exactlin import RatMatrix, Subspace, charpoly
from .groupdyn import MODES, GenSet, GroupVerdict, Word

RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"rational entries must be strings, got {s!r}")
    s = str(s).strip()
    if not RATIONAL_RE.fullmatch(s):
        raise ParseError(f"malformed rational {s!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def render_rational(x: Fraction) -> str:
    return str(x)


def render_vec(v) -> list:
    return [render_rational(Fraction(x)) for x in v]


def render_matrix(m: RatMatrix) -> list:
    return [render_vec(row) for row in m.rows]


def render_subspace(s: Subspace) -> list:
    return [render_vec(b) for b in s.basis]


def genset_from_doc(doc: dict) -> GenSet:
    if not isinstance(doc, dict):
        raise ParseError("input document must be a JSON object")
    try:
        r = doc["dimension"]
        gens = doc["generators"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise ParseError("dimension must be a positive integer")
    mode = doc.get("mode", "solenoid")
    if mode not in MODES:
        raise ParseError(f"mode must be one of {MODES}")
    if not isinstance(gens, list) or not gens:
        raise ParseError("generators must be a nonempty list")
    mats = []
    for k, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != r or any(not isinstance(row, list) or len(row) != r for row in g):
            raise ParseError(f"generator {k + 1} is not a {r}x{r} matrix")
        mats.append(RatMatrix([[parse_rational(x) for x in row] for row in g]))
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise ParseError("labels must be a list of strings")
        labels = tuple(labels)
    return GenSet(r, tuple(mats), mode, labels)


def genset_to_doc(g: GenSet) -> dict:
    doc = {
        "dimension": g.dim,
        "mode": g.mode,
        "generators": [render_matrix(m) for m in g.gens],
    }
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return doc


def load_genset(path: str) -> GenSet:
    try:
        if path == "-":
            import sys

            doc = json.load(sys.stdin)
        else:
            with open(path) as fh:
                doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return genset_from_doc(doc)


# ---------------------------------------------------------------------------
# reports


def envelope(command: str, caps: dict | None = None) -> dict:
    return {"tool": "soldyn", "version": __version__, "command": command, "caps": caps or {}}


def word_report(w: Word, g: GenSet) -> dict:
    return {"word": w.name(g), "letters": list(w.letters), "matrix": render_matrix(w.matrix)}


def split_report(s: SplitReport) -> dict:
    return {
        "chain": [render_subspace(v) for v in s.chain],
        "distal_part": render_subspace(s.distal_part),
        "ergodic_part_dim": s.ergodic_part_dim,
    }


def auto_report(m: RatMatrix, v: AutoVerdict) -> dict:
    return {
        "ergodic": v.ergodic,
        "distal": v.distal,
        "root_of_unity_witness": v.root_of_unity_witness,
        "unipotence_exponent": v.unipotence_exponent,
        "charpoly": str(charpoly(m)),
        "split": split_report(v.split),
    }


def group_report(v: GroupVerdict) -> dict:
    layers = []
    for c in v.series.layers:
        entry = {"kind": c.kind, "below": render_subspace(c.below)}
        if c.image is not None:
            entry["order"] = c.image.order
        layers.append(entry)
    return {
        "ergodic": v.ergodic,
        "distal": v.distal,
        "W": render_subspace(v.W),
        "character": render_vec(v.character) if v.character is not None else None,
        "orbit_size": v.orbit_size,
        "series": {"chain": [render_subspace(s) for s in v.series.chain], "layers": layers},
    }


def search_report(result, g: GenSet) -> dict:
    return {
        "found": word_report(result.found, g) if result.found is not None else None,
        "method": result.method,
        "filtration": [
            {
                "space": render_subspace(s.space),
                "distal_part": render_subspace(s.distal_part),
                "alpha": word_report(g.word(s.alpha.letters), g),
                "level": s.level,
            }
            for s in result.filtration
        ],
        "diagnostics": list(result.diagnostics),
    }
