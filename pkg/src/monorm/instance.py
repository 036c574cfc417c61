"""Instance files: a measure space, a generator, and named functions.

JSON schema:

    {
      "space": {"atoms": [{"t": 0.25, "w": 0.5}, ...]},
      "phi": {"family": "power", "p": 2.0},
      "functions": {"u1": [1.0, 2.0], ...}
    }

Families: power {p}, varexp {p_values, [c_values]}, expminusone, xlogx,
linear {[slope]}, indicator {c}, plq {pieces: [{[width], jump, slope}, ...],
[bounded]}.  Per-atom parameter arrays must match the atom count.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InstanceError
from .generators import (
    ExpMinusOneGenerator,
    IndicatorGenerator,
    LinearGenerator,
    OrliczGenerator,
    Piece,
    PiecewiseGenerator,
    PowerGenerator,
    VariableExponentGenerator,
    XLogXGenerator,
    validate_generator,
)
from .space import GridMeasureSpace, SimpleFunction

__all__ = ["Instance", "parse_instance", "build_generator", "instance_digest"]


@dataclass(frozen=True)
class Instance:
    space: GridMeasureSpace
    phi: OrliczGenerator
    functions: dict[str, SimpleFunction]
    digest: str


def build_generator(spec: dict, space: GridMeasureSpace) -> OrliczGenerator:
    if not isinstance(spec, dict) or "family" not in spec:
        raise InstanceError("phi must be an object with a 'family' field")
    family = spec["family"]
    try:
        if family == "power":
            return PowerGenerator(float(spec["p"]))
        if family == "varexp":
            p_values = spec["p_values"]
            if len(p_values) != len(space):
                raise InstanceError(
                    f"p_values has {len(p_values)} entries for {len(space)} atoms"
                )
            c_values = spec.get("c_values")
            if c_values is not None and len(c_values) != len(space):
                raise InstanceError(
                    f"c_values has {len(c_values)} entries for {len(space)} atoms"
                )
            return VariableExponentGenerator.from_values(space, p_values, c_values)
        if family == "expminusone":
            return ExpMinusOneGenerator()
        if family == "xlogx":
            return XLogXGenerator()
        if family == "linear":
            return LinearGenerator(float(spec.get("slope", 1.0)))
        if family == "indicator":
            return IndicatorGenerator(float(spec["c"]))
        if family == "plq":
            pieces = tuple(
                Piece(
                    None if p.get("width") is None else float(p["width"]),
                    float(p.get("jump", 0.0)),
                    float(p.get("slope", 0.0)),
                )
                for p in spec["pieces"]
            )
            return PiecewiseGenerator(pieces, bounded=bool(spec.get("bounded", False)))
    except InstanceError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"invalid parameters for family '{family}': {exc}") from exc
    raise InstanceError(f"unknown generator family '{family}'")


def instance_digest(raw: dict) -> str:
    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def parse_instance(path: str | Path) -> Instance:
    """Read, build and validate an instance; raises InstanceError with the
    offending atom or field on any problem."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise InstanceError(f"instance file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON in {path}: {exc}") from exc

    try:
        atoms = raw["space"]["atoms"]
    except (KeyError, TypeError) as exc:
        raise InstanceError("instance needs space.atoms") from exc
    coords, weights = [], []
    for i, atom in enumerate(atoms):
        try:
            t, w = float(atom["t"]), float(atom["w"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceError(f"atom {i}: needs numeric 't' and 'w'") from exc
        if not w > 0:
            raise InstanceError(f"atom {i}: weight must be > 0, got {w}")
        coords.append(t)
        weights.append(w)
    try:
        space = GridMeasureSpace(tuple(coords), tuple(weights))
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc

    gen = build_generator(raw.get("phi", {}), space)

    functions: dict[str, SimpleFunction] = {}
    for name, values in (raw.get("functions") or {}).items():
        if len(values) != len(space):
            raise InstanceError(
                f"function '{name}' has {len(values)} values for {len(space)} atoms"
            )
        functions[name] = SimpleFunction.on(space, values)

    violations = validate_generator(gen, space)
    if violations:
        first = violations[0]
        raise InstanceError(
            f"generator fails validation: {first.check} at t = {first.t} ({first.detail})"
        )
    return Instance(space, gen, functions, instance_digest(raw))
