"""Run configuration, representation bundles and the closure cache.

Bundles are JSON with sorted keys so identical configurations give
byte-identical files.  Every bundle and cache entry carries
:data:`CONVENTIONS_VERSION`; phases are only meaningful relative to those
conventions, so a change there must invalidate caches.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from .cocycles import (CocycleTable, cocycle_from_json, cyclic_cocycle, load_cocycle,
                       multiply_cocycles, trivial_cocycle)
from .groups import GroupTable, builtin_group, load_group
from .mcg import build_generator_set, generator_scripts
from .monomial import ClosureResult, MonomialMatrix, closure
from .surfaces import SpanningSet, SurfaceSpec, enumerate_spanning

log = logging.getLogger(__name__)

# left-comb gauge, ccw signatures read from the basepoint, legs outgoing,
# script catalogue below; bump on any change to these
CONVENTIONS = "left-comb gauge; ccw signatures from basepoint; legs outgoing; scripts v1"


def _script_catalogue_digest() -> str:
    sample = [SurfaceSpec(1), SurfaceSpec(2), SurfaceSpec(1, (0,)), SurfaceSpec(0, (0, 0))]
    steps = [(sc.name, sc.params, sc.steps) for s in sample for sc in generator_scripts(s)]
    return hashlib.sha256(repr(steps).encode()).hexdigest()[:8]


CONVENTIONS_VERSION = f"1+{_script_catalogue_digest()}"


class ConfigError(ValueError):
    """Bad user input: unknown group, unreadable file, malformed option."""


@dataclass(frozen=True)
class RunConfig:
    group: str = "Z2"
    cocycle: str = "trivial"
    genus: int = 1
    boundary: tuple = ()
    cap: int = 10 ** 6
    order_cap: int = 10 ** 4
    out: str | None = None
    cache_dir: str | None = None
    use_cache: bool = True

    def __post_init__(self):
        if self.cap < 1 or self.order_cap < 1:
            raise ConfigError("caps must be positive")
        if self.genus < 0:
            raise ConfigError("genus must be non-negative")


def resolve_group(spec: str) -> GroupTable:
    """A builtin name or a path to a group JSON file."""
    if os.path.exists(spec):
        try:
            return load_group(spec)
        except (OSError, ValueError, KeyError) as e:
            raise ConfigError(f"cannot load group file {spec}: {e}") from e
    try:
        return builtin_group(spec)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def resolve_cocycle(spec: str, group: GroupTable, validate_file: bool = False) -> CocycleTable:
    """``trivial``, ``cyclic:p``, a JSON file, or several joined by ``+`` (multiplied).

    Files are loaded as-is; checking them is the caller's business
    (``cocycle-verify`` reports a witness rather than refusing to load).
    """
    parts = [p.strip() for p in spec.split("+") if p.strip()]
    if not parts:
        raise ConfigError("empty cocycle specification")
    out = None
    for p in parts:
        w = _one_cocycle(p, group)
        out = w if out is None else multiply_cocycles(out, w)
    return out


def _one_cocycle(spec: str, group: GroupTable) -> CocycleTable:
    if spec == "trivial":
        return trivial_cocycle(group)
    if spec.startswith("cyclic"):
        tail = spec[len("cyclic"):].lstrip(": =")
        try:
            p = int(tail)
        except ValueError:
            raise ConfigError(f"bad cyclic cocycle {spec!r}; use cyclic:p") from None
        try:
            return cyclic_cocycle(group, p)
        except ValueError as e:
            raise ConfigError(str(e)) from e
    if os.path.exists(spec):
        try:
            return load_cocycle(spec, group)
        except (OSError, ValueError, KeyError) as e:
            raise ConfigError(f"cannot load cocycle file {spec}: {e}") from e
    raise ConfigError(f"unknown cocycle {spec!r}")


def surface_of(cfg: RunConfig, group: GroupTable) -> SurfaceSpec:
    try:
        group.check(*cfg.boundary)
    except ValueError as e:
        raise ConfigError(f"boundary labels: {e}") from e
    return SurfaceSpec(cfg.genus, tuple(cfg.boundary))


# bundles

def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def build_bundle(group: GroupTable, w: CocycleTable, surface: SurfaceSpec,
                 spanning: SpanningSet | None = None) -> dict:
    s = enumerate_spanning(surface, group) if spanning is None else spanning
    warnings = []
    if len(s) == 0:
        warnings.append("empty spanning set: generator matrices have degree 0")
    acts = build_generator_set(surface, group, w, s)
    return {
        "conventions_version": CONVENTIONS_VERSION,
        "conventions": CONVENTIONS,
        "group": {"name": group.name, "order": group.order,
                  "mul": [list(r) for r in group.mul]},
        "cocycle": {"digest": w.digest(), "q": w.q},
        "surface": surface.to_json(),
        "spanning_set": s.to_json()["states"],
        "generators": {a.name: a.matrix.to_json() for a in acts},
        "warnings": warnings,
    }


def write_bundle(bundle: dict, path) -> None:
    Path(path).write_text(_dumps(bundle) + "\n")


def read_bundle(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise ConfigError(f"cannot read bundle {path}: {e}") from e
    if "generators" not in data:
        raise ConfigError(f"{path} is not a representation bundle")
    if data.get("conventions_version") != CONVENTIONS_VERSION:
        log.warning("bundle conventions %s differ from %s", data.get("conventions_version"),
                    CONVENTIONS_VERSION)
    return data


def bundle_matrices(bundle: dict) -> dict:
    return {name: MonomialMatrix.from_json(m) for name, m in bundle["generators"].items()}


# closure cache

def cache_key(bundle: dict, cap: int) -> str:
    ident = {"group": bundle["group"]["mul"], "cocycle": bundle["cocycle"],
             "surface": bundle["surface"], "conventions": bundle.get("conventions_version"),
             "cap": cap}
    return hashlib.sha256(_dumps(ident).encode()).hexdigest()[:24]


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "dwmcg"


def cached_closure(bundle: dict, cap: int, cache_dir=None, use_cache: bool = True):
    """Closure of the bundle's generators, memoized on disk.

    Returns ``(ClosureResult, hit)``.
    """
    key = cache_key(bundle, cap)
    path = Path(cache_dir or default_cache_dir()) / f"closure-{key}.json"
    if use_cache and path.exists():
        try:
            data = json.loads(path.read_text())
            log.info("closure cache hit %s", path)
            return ClosureResult(**data), True
        except (OSError, ValueError, TypeError):
            log.warning("ignoring unreadable cache entry %s", path)
    mats = list(bundle_matrices(bundle).values())
    if not mats:
        res = ClosureResult(1, 0, 1)
    else:
        res = closure(mats, cap=cap)
    if use_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_dumps(res.to_json()))
        log.info("closure cached at %s", path)
    return res, False


def parse_relations(text: str) -> list:
    """Lines ``lhs = rhs`` with an optional ``; mode`` suffix; ``#`` comments.

    JSON input (a list of ``{"lhs", "rhs", "mode"}``) is accepted too.
    """
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
            return [(d["lhs"], d["rhs"], d.get("mode", "exact")) for d in items]
        except (ValueError, KeyError, TypeError) as e:
            raise ConfigError(f"bad relations JSON: {e}") from e
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mode = "exact"
        if ";" in line:
            line, mode = (x.strip() for x in line.split(";", 1))
        if "=" not in line:
            raise ConfigError(f"relations line {n}: expected 'lhs = rhs'")
        lhs, rhs = (x.strip() for x in line.split("=", 1))
        out.append((lhs, rhs, mode))
    return out


def cocycle_file_json(w: CocycleTable) -> str:
    return _dumps(w.to_json())


__all__ = ["RunConfig", "ConfigError", "CONVENTIONS_VERSION", "resolve_group", "resolve_cocycle",
           "surface_of", "build_bundle", "write_bundle", "read_bundle", "bundle_matrices",
           "cached_closure", "cache_key", "parse_relations", "cocycle_from_json"]
