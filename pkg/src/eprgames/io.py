"""JSON and CSV readers/writers.

Formats:
  distribution  {"epsilon": [16 reals]} or {"mu": [8 reals]}
  game          {"a": [16 reals], "b": [16 reals]}
  config        {"state": "singlet" | {"schmidt_angle": real}, "angles": [4 reals]}

Floats go through ``repr`` (17 significant digits) so values round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .game import GameMatrix
from .probability import EprDistribution, complete_from_independent
from .quantum import SINGLET, MeasurementConfig, born_distribution


class InputError(ValueError):
    """Malformed or out-of-range input document."""


def read_json(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text(encoding="utf-8") if str(source) != "-" else _stdin()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{source}: expected a JSON object")
    return doc


def _stdin() -> str:
    import sys

    return sys.stdin.read()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _reals(doc: dict, key: str, size: int) -> list[float]:
    values = doc.get(key)
    if not isinstance(values, list) or len(values) != size:
        raise InputError(f"'{key}' must be a list of {size} numbers")
    try:
        out = [float(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise InputError(f"'{key}' must contain only numbers") from exc
    if not all(math.isfinite(v) for v in out) or any(isinstance(v, bool) for v in values):
        raise InputError(f"'{key}' must contain finite numbers")
    return out


def distribution_from_dict(doc: dict) -> EprDistribution:
    if "epsilon" in doc:
        return EprDistribution(_reals(doc, "epsilon", 16))
    if "mu" in doc:
        try:
            return complete_from_independent(_reals(doc, "mu", 8))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError("distribution needs an 'epsilon' (16 values) or 'mu' (8 values) key")


def distribution_to_dict(dist: EprDistribution) -> dict:
    return {"epsilon": dist.eps.tolist()}


def game_from_dict(doc: dict) -> GameMatrix:
    return GameMatrix(_reals(doc, "a", 16), _reals(doc, "b", 16))


def game_to_dict(game: GameMatrix) -> dict:
    return {"a": game.a.tolist(), "b": game.b.tolist()}


def config_from_dict(doc: dict, degrees: bool = False) -> MeasurementConfig:
    angles = _reals(doc, "angles", 4)
    if degrees:
        angles = [math.radians(a) for a in angles]
    state = doc.get("state", SINGLET)
    if isinstance(state, dict):
        if "schmidt_angle" not in state:
            raise InputError("state object needs a 'schmidt_angle'")
        state = state["schmidt_angle"]
        if isinstance(state, bool) or not isinstance(state, (int, float)):
            raise InputError("'schmidt_angle' must be a number")
        state = float(state)
        if degrees:
            state = math.radians(state)
    elif state != SINGLET:
        raise InputError(f"state must be 'singlet' or {{'schmidt_angle': x}}, got {state!r}")
    try:
        return MeasurementConfig(state, tuple(angles))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def config_to_dict(config: MeasurementConfig) -> dict:
    state = config.state if config.state == SINGLET else {"schmidt_angle": config.state}
    return {"state": state, "angles": list(config.angles)}


def load_distribution(source, degrees: bool = False) -> EprDistribution:
    """Distribution document, or a measurement config turned into Born-rule probabilities."""
    doc = read_json(source)
    if "angles" in doc:
        return born_distribution(config_from_dict(doc, degrees=degrees))
    return distribution_from_dict(doc)


def load_game(source) -> GameMatrix:
    return game_from_dict(read_json(source))


def load_config(source, degrees: bool = False) -> MeasurementConfig:
    return config_from_dict(read_json(source), degrees=degrees)


def write_csv(rows: Iterable[Sequence], header: Sequence[str], target=None) -> str:
    """Comma-separated, header first, floats via repr. Returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    text = buf.getvalue()
    if target is not None:
        Path(target).write_text(text, encoding="utf-8")
    return text


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def read_csv(text: str) -> list[dict]:
    """Inverse of :func:`write_csv`: numbers and booleans are converted back."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: _parse_cell(v) for k, v in row.items()})
    return out


def _parse_cell(v: str):
    if v in ("true", "false"):
        return v == "true"
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    return v
