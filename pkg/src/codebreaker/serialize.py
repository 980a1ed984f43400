"""Canonical JSON codecs for words and feedback values.

Shared by the HTTP service, the CLI, transcript files, and the frontend
fixtures, so shapes here are load-bearing: change them and recorded
fixtures stop replaying.
"""

from __future__ import annotations

from typing import Any, Dict

from .cardinal import Cardinal
from .feedback import (
    MastermindFeedback, SimplifiedFeedback, TricolorClosed, TricolorFinite,
)
from .positions import PositionSet
from .words import ClosedFormWord, Constant, FiniteWord, Periodic, Shift, Word

# finite words longer than this serialize as run-length pairs
RUNS_JSON_THRESHOLD = 10_000


def word_to_json(word: Word) -> Dict[str, Any]:
    if isinstance(word, FiniteWord):
        if word.size() > RUNS_JSON_THRESHOLD:
            return {"kind": "finite",
                    "runs": [[int(v), int(n)] for v, n in word.runs]}
        return {"kind": "finite",
                "symbols": [int(s) for s in word.symbols]}
    if isinstance(word, ClosedFormWord):
        base = word.base
        if isinstance(base, Constant):
            bj = {"type": "constant", "color": base.color}
        elif isinstance(base, Shift):
            bj = {"type": "shift", "offset": base.offset}
        elif isinstance(base, Periodic):
            bj = {"type": "periodic", "pattern": list(base.pattern)}
        else:
            raise TypeError(f"unknown base {base!r}")
        return {"kind": "closed", "base": bj,
                "exceptions": {str(p): int(v) for p, v in sorted(word.exceptions.items())}}
    raise TypeError(f"cannot serialize {type(word).__name__}")


def word_from_json(data: Dict[str, Any]) -> Word:
    kind = data.get("kind")
    if kind == "finite":
        if "runs" in data:
            return FiniteWord.from_runs([(int(v), int(n)) for v, n in data["runs"]])
        return FiniteWord.from_symbols([int(s) for s in data["symbols"]])
    if kind == "closed":
        bj = data["base"]
        t = bj["type"]
        if t == "constant":
            base = Constant(int(bj["color"]))
        elif t == "shift":
            base = Shift(int(bj["offset"]))
        elif t == "periodic":
            base = Periodic(tuple(int(x) for x in bj["pattern"]))
        else:
            raise ValueError(f"unknown base type {t!r}")
        exc = {int(p): int(v) for p, v in data.get("exceptions", {}).items()}
        return ClosedFormWord(base, exc)
    raise ValueError(f"unknown word kind {kind!r}")


def feedback_to_json(fb) -> Dict[str, Any]:
    payload = fb.to_json()
    if isinstance(fb, TricolorFinite) or isinstance(fb, TricolorClosed):
        payload["family"] = "wordle"
    elif isinstance(fb, MastermindFeedback):
        payload["family"] = "mastermind"
    elif isinstance(fb, SimplifiedFeedback):
        payload["family"] = "simplified"
    else:
        raise TypeError(f"cannot serialize {type(fb).__name__}")
    return payload


def feedback_from_json(data: Dict[str, Any]):
    family = data.get("family")
    if family == "mastermind":
        return MastermindFeedback(Cardinal.from_json(data["kappa"]),
                                  Cardinal.from_json(data["rho"]),
                                  Cardinal.from_json(data["epsilon"]))
    if family == "simplified":
        return SimplifiedFeedback(Cardinal.from_json(data["correct"]),
                                  Cardinal.from_json(data["incorrect"]))
    if family == "wordle":
        if data["kind"] == "finite":
            import numpy as np
            from .feedback import GRAY, GREEN, YELLOW
            tiles = np.full(data["length"], GRAY, dtype=np.int8)
            tiles[data["green"]] = GREEN
            tiles[data["yellow"]] = YELLOW
            return TricolorFinite(tiles)
        green = position_set_from_json(data["green"])
        counts = {int(c): Cardinal.from_json(n)
                  for c, n in data.get("yellowCounts", {}).items()}
        spots = data.get("yellowPositions")
        return TricolorClosed(
            green, counts,
            frozenset(spots) if spots is not None else None,
            bool(data.get("yellowTailOnce", False)))
    raise ValueError(f"unknown feedback family {family!r}")


def position_set_from_json(data: Dict[str, Any]) -> PositionSet:
    kind = data["kind"]
    if kind == "finite":
        return PositionSet.finite(data["positions"])
    if kind == "cofinite":
        out = PositionSet.cofinite(data["missing"])
        for p in data.get("extra", ()):  # removed-then-re-added corner
            out = out.with_edits(force_in=(p,))
        return out
    return PositionSet(data["modulus"], frozenset(data["residues"]),
                       frozenset(data["added"]), frozenset(data["removed"]))
