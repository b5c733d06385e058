""" Utilities for resolving fixture names. """

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Any, Callable, Dict, Tuple, Union

import anglekit
from anglekit.errors import FixtureError
from anglekit.settings import DEFAULT, Settings

from . import polytopes, zonotopes

log = logging.getLogger(__name__)

Fixture = Union["anglekit.Polytope", "anglekit.GeneratorConfiguration"]

# Name -> (builder, number of integer parameters it takes).
BUILDERS: Dict[str, Tuple[Callable[..., Fixture], Tuple[int, ...]]] = {
    "cube": (zonotopes.cube, (1,)),
    "square": (zonotopes.square, (0,)),
    "segment": (zonotopes.segment, (0,)),
    "hexagon": (zonotopes.hexagon, (0,)),
    "permutohedron": (zonotopes.permutohedron, (1,)),
    "generic": (zonotopes.generic, (2, 3)),
    "moment": (zonotopes.moment, (2,)),
    "simplex": (polytopes.simplex, (1,)),
    "cross": (polytopes.cross, (1,)),
    "ngon": (polytopes.ngon, (1,)),
    "pyramid": (polytopes.pyramid, (1,)),
}


def parse_name(name: str) -> Tuple[str, Tuple[int, ...]]:
    """Split a fixture name such as "generic 3 5 1" or "cube(3)" into its builder and parameters."""

    match = re.match(r"^\s*(?P<builder>[a-z_]+)\s*(\(\s*(?P<bracketed>[-\d\s,]*)\)|(?P<spaced>[-\d\s]*))\s*$", name)
    if match is None:
        raise FixtureError(f"Unknown fixture {name!r}")

    parameters = match.group("bracketed") or match.group("spaced") or ""
    return match.group("builder"), tuple(int(x) for x in re.split(r"[\s,]+", parameters.strip()) if x)


def from_json(data: Any) -> Fixture:
    """Build a fixture from {"vertices": [...]} or {"generators": [...]}."""

    if not isinstance(data, dict):
        raise FixtureError("Fixture JSON must be an object")
    if "generators" in data:
        return anglekit.GeneratorConfiguration.from_json(data)
    if "vertices" in data:
        try:
            return anglekit.Polytope(data["vertices"])
        except anglekit.AnglekitError:
            raise
        except (TypeError, ValueError) as error:
            raise FixtureError(f"Malformed polytope JSON: {error}") from None
    raise FixtureError("Fixture JSON needs vertices or generators")


def fixture(name: str, settings: Settings = DEFAULT) -> Fixture:
    """Return the named fixture: a built-in family, or a JSON file (by path, or by name in the fixture directory)."""

    directory = Path(settings.fixtures) if settings.fixtures else None
    for path in [Path(name)] + ([directory / f"{name}.json"] if directory is not None else []):
        if path.suffix == ".json" and path.is_file():
            log.debug("Loading fixture from %s", path)
            try:
                return from_json(json.loads(path.read_text()))
            except json.JSONDecodeError as error:
                raise FixtureError(f"{path} is not valid JSON: {error}") from None

    builder_name, parameters = parse_name(name)
    if builder_name not in BUILDERS:
        raise FixtureError(f"Unknown fixture {name!r}, expected one of {sorted(BUILDERS)}")
    builder, arities = BUILDERS[builder_name]
    if len(parameters) not in arities:
        raise FixtureError(f"{builder_name} takes {' or '.join(str(n) for n in arities)} parameters, not {len(parameters)}")
    return builder(*parameters)


def polytope(name: str, settings: Settings = DEFAULT) -> anglekit.Polytope:
    """Return the named fixture as a polytope."""

    result = fixture(name, settings)
    return result.zonotope() if isinstance(result, anglekit.GeneratorConfiguration) else result


def configuration(name: str, settings: Settings = DEFAULT) -> anglekit.GeneratorConfiguration:
    """Return the generators of the named fixture, which must be a zonotope."""

    result = fixture(name, settings)
    if isinstance(result, anglekit.GeneratorConfiguration):
        return result
    if isinstance(result, anglekit.Zonotope):
        return result.configuration
    raise FixtureError(f"{name!r} is not a zonotope")


def angle(name: str, d: int) -> anglekit.ConeAngleSpec:
    """Return a built-in cone angle in R^d by name, or one read from a JSON file."""

    path = Path(name)
    if path.suffix == ".json":
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as error:
            raise FixtureError(f"Cannot read cone angle from {path}: {error}") from None
        spec = anglekit.ConeAngleSpec.from_json(data)
        if spec.dimension() not in (None, d):
            raise anglekit.DimensionError(f"{path} describes a cone angle in R^{spec.dimension()}, not R^{d}")
        return spec

    return anglekit.ConeAngleSpec.builtin(name, d)
