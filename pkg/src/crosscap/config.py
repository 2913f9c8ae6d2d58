"""Run configuration: JSON in, validated model objects out.

Rationals travel as strings ("3", "-1/2") or integers so that nothing is
mangled through floats.  Unknown keys are rejected; every violation found is
reported, not just the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .series import Field, UniSeries
from .model import (
    CurveSpec,
    FamilyMP,
    FamilyMPQ,
    GeneralCurve,
    ModelError,
    UmbrellaCoefficients,
)


class ConfigError(ValueError):
    """One or more validation problems; ``problems`` lists all of them."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n" + "\n".join("  - " + p for p in self.problems))


_TOP_KEYS = {"truncation", "surface", "curve", "field", "description", "mesh", "sweep"}
_SURFACE_KEYS = {"a", "b"}
_CURVE_KEYS = {"family", "m", "p", "q", "c", "c1", "c2"}
_MESH_KEYS = {"x_range", "y_range", "nx", "ny", "u_range", "v_range", "nu", "nv", "curve_samples"}
_SWEEP_KEYS = {"seed", "draws"}

MESH_DEFAULTS = {
    "x_range": (-0.3, 0.3),
    "y_range": (-0.3, 0.3),
    "nx": 41,
    "ny": 21,
    "u_range": (-0.35, 0.35),
    "v_range": (-0.35, 0.35),
    "nu": 41,
    "nv": 41,
    "curve_samples": 81,
}


@dataclass(frozen=True)
class MeshOptions:
    x_range: tuple = MESH_DEFAULTS["x_range"]
    y_range: tuple = MESH_DEFAULTS["y_range"]
    nx: int = MESH_DEFAULTS["nx"]
    ny: int = MESH_DEFAULTS["ny"]
    u_range: tuple = MESH_DEFAULTS["u_range"]
    v_range: tuple = MESH_DEFAULTS["v_range"]
    nu: int = MESH_DEFAULTS["nu"]
    nv: int = MESH_DEFAULTS["nv"]
    curve_samples: int = MESH_DEFAULTS["curve_samples"]


@dataclass(frozen=True)
class SweepOptions:
    seed: int = 0
    draws: int = 10


@dataclass(frozen=True)
class RunConfig:
    truncation: int
    coeffs: UmbrellaCoefficients
    spec: CurveSpec
    field: Field = Field.EXACT
    description: str | None = None
    mesh: MeshOptions | None = None
    sweep: SweepOptions | None = None


def parse_rational(value, where: str, problems) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        problems.append(f"{where}: rationals must be integers or strings, got {value!r}")
        return Fraction(0)
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        problems.append(f"{where}: malformed rational {value!r}")
        return Fraction(0)


def _check_keys(obj: dict, allowed, where: str, problems) -> None:
    for key in obj:
        if key not in allowed:
            problems.append(f"{where}: unknown key {key!r}")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"])
    return config_from_dict(doc)


def config_from_dict(doc) -> RunConfig:
    problems: list = []
    if not isinstance(doc, dict):
        raise ConfigError(["top-level document must be a JSON object"])
    _check_keys(doc, _TOP_KEYS, "top level", problems)

    truncation = doc.get("truncation")
    if not isinstance(truncation, int) or isinstance(truncation, bool) or truncation < 3:
        problems.append("truncation: required integer >= 3")
        truncation = 3

    coeffs = _parse_surface(doc.get("surface"), problems, truncation)
    spec = _parse_curve(doc.get("curve"), problems, truncation)

    field = Field.EXACT
    raw_field = doc.get("field", "exact")
    if raw_field not in ("exact", "float"):
        problems.append("field: must be 'exact' or 'float'")
    elif raw_field == "float":
        field = Field.FLOAT

    description = doc.get("description")
    if description is not None and not isinstance(description, str):
        problems.append("description: must be a string")

    mesh = _parse_mesh(doc.get("mesh"), problems)
    sweep = _parse_sweep(doc.get("sweep"), problems)

    if problems:
        raise ConfigError(problems)
    return RunConfig(
        truncation=truncation,
        coeffs=coeffs,
        spec=spec,
        field=field,
        description=description,
        mesh=mesh,
        sweep=sweep,
    )


def _parse_surface(surface, problems, truncation) -> UmbrellaCoefficients | None:
    if not isinstance(surface, dict):
        problems.append("surface: required object with 'a' (and optional 'b') maps")
        return None
    _check_keys(surface, _SURFACE_KEYS, "surface", problems)
    a = {}
    raw_a = surface.get("a", {})
    if not isinstance(raw_a, dict):
        problems.append("surface.a: must be an object keyed by 'i,j'")
        raw_a = {}
    for key, value in raw_a.items():
        try:
            i, j = (int(part) for part in key.split(","))
        except (ValueError, AttributeError):
            problems.append(f"surface.a: bad index key {key!r} (expected 'i,j')")
            continue
        a[(i, j)] = parse_rational(value, f"surface.a[{key}]", problems)
    b = {}
    raw_b = surface.get("b", {})
    if not isinstance(raw_b, dict):
        problems.append("surface.b: must be an object keyed by the index i")
        raw_b = {}
    for key, value in raw_b.items():
        try:
            i = int(key)
        except ValueError:
            problems.append(f"surface.b: bad index key {key!r}")
            continue
        b[i] = parse_rational(value, f"surface.b[{key}]", problems)
    try:
        return UmbrellaCoefficients(degree=truncation, a=a, b=b)
    except ModelError as exc:
        problems.append(f"surface: {exc}")
        return None


def _parse_curve(curve, problems, truncation: int) -> CurveSpec | None:
    if not isinstance(curve, dict):
        problems.append("curve: required object with a 'family' tag")
        return None
    _check_keys(curve, _CURVE_KEYS, "curve", problems)
    family = curve.get("family")
    if family not in ("mpq", "mp", "general"):
        problems.append("curve.family: must be 'mpq', 'mp' or 'general'")
        return None

    def _int(name, minimum):
        value = curve.get(name)
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            problems.append(f"curve.{name}: required integer >= {minimum}")
            return minimum
        return value

    def _coeff_list(name):
        raw = curve.get(name)
        if not isinstance(raw, list) or not raw:
            problems.append(f"curve.{name}: required nonempty list of rationals")
            return (Fraction(1),)
        return tuple(parse_rational(v, f"curve.{name}[{i}]", problems) for i, v in enumerate(raw))

    try:
        if family == "mpq":
            for key in ("c1", "c2"):
                if key in curve:
                    problems.append(f"curve.{key}: not a family 'mpq' key")
            return FamilyMPQ(m=_int("m", 2), p=_int("p", 1), q=_int("q", 1), c=_coeff_list("c"))
        if family == "mp":
            for key in ("q", "c1", "c2"):
                if key in curve:
                    problems.append(f"curve.{key}: not a family 'mp' key")
            return FamilyMP(m=_int("m", 1), p=_int("p", 2), c=_coeff_list("c"))
        for key in ("m", "p", "q", "c"):
            if key in curve:
                problems.append(f"curve.{key}: not a 'general' curve key")
        c1 = _coeff_list("c1")
        c2 = _coeff_list("c2")
        # Config-sourced components are exact polynomials: pad them to the
        # reliability the surface truncation supports, m_min (k + 1) - 1.
        vals = [next((i for i, v in enumerate(cs) if v != 0), None) for cs in (c1, c2)]
        m_min = min((v for v in vals if v is not None and v > 0), default=None)
        if m_min is None:
            problems.append("curve: components must vanish at 0 with a nonzero jet")
            return None
        order = m_min * (truncation + 1) - 1
        return GeneralCurve(
            c1=UniSeries.make(Field.EXACT, c1, order),
            c2=UniSeries.make(Field.EXACT, c2, order),
        )
    except ModelError as exc:
        problems.append(f"curve: {exc}")
        return None


def _parse_mesh(mesh, problems) -> MeshOptions | None:
    if mesh is None:
        return None
    if not isinstance(mesh, dict):
        problems.append("mesh: must be an object")
        return None
    _check_keys(mesh, _MESH_KEYS, "mesh", problems)
    kwargs = {}
    for name in ("x_range", "y_range", "u_range", "v_range"):
        if name in mesh:
            raw = mesh[name]
            if (
                not isinstance(raw, list)
                or len(raw) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
                or not raw[0] < raw[1]
            ):
                problems.append(f"mesh.{name}: must be [lo, hi] with lo < hi")
            else:
                kwargs[name] = (float(raw[0]), float(raw[1]))
    for name in ("nx", "ny", "nu", "nv", "curve_samples"):
        if name in mesh:
            raw = mesh[name]
            if not isinstance(raw, int) or isinstance(raw, bool) or raw < 2:
                problems.append(f"mesh.{name}: must be an integer >= 2")
            else:
                kwargs[name] = raw
    return MeshOptions(**kwargs)


def _parse_sweep(sweep, problems) -> SweepOptions | None:
    if sweep is None:
        return None
    if not isinstance(sweep, dict):
        problems.append("sweep: must be an object")
        return None
    _check_keys(sweep, _SWEEP_KEYS, "sweep", problems)
    kwargs = {}
    for name, minimum in (("seed", 0), ("draws", 1)):
        if name in sweep:
            raw = sweep[name]
            if not isinstance(raw, int) or isinstance(raw, bool) or raw < minimum:
                problems.append(f"sweep.{name}: must be an integer >= {minimum}")
            else:
                kwargs[name] = raw
    return SweepOptions(**kwargs)


# ---------------------------------------------------------------------------
# Serialization (round-trip partner of parse_config)
# ---------------------------------------------------------------------------


def _rational_str(value: Fraction) -> str:
    return str(value)


def config_to_dict(cfg: RunConfig) -> dict:
    doc: dict = {"truncation": cfg.truncation}
    surface: dict = {"a": {}, "b": {}}
    for (i, j), value in sorted(cfg.coeffs.a.items()):
        surface["a"][f"{i},{j}"] = _rational_str(value)
    for i, value in sorted(cfg.coeffs.b.items()):
        surface["b"][str(i)] = _rational_str(value)
    doc["surface"] = surface
    spec = cfg.spec
    if isinstance(spec, FamilyMPQ):
        doc["curve"] = {
            "family": "mpq",
            "m": spec.m,
            "p": spec.p,
            "q": spec.q,
            "c": [_rational_str(v) for v in spec.c],
        }
    elif isinstance(spec, FamilyMP):
        doc["curve"] = {
            "family": "mp",
            "m": spec.m,
            "p": spec.p,
            "c": [_rational_str(v) for v in spec.c],
        }
    else:
        doc["curve"] = {
            "family": "general",
            "c1": [_rational_str(v) for v in spec.c1.coeffs],
            "c2": [_rational_str(v) for v in spec.c2.coeffs],
        }
    doc["field"] = cfg.field.value
    if cfg.description is not None:
        doc["description"] = cfg.description
    if cfg.mesh is not None:
        doc["mesh"] = {
            "x_range": list(cfg.mesh.x_range),
            "y_range": list(cfg.mesh.y_range),
            "nx": cfg.mesh.nx,
            "ny": cfg.mesh.ny,
            "u_range": list(cfg.mesh.u_range),
            "v_range": list(cfg.mesh.v_range),
            "nu": cfg.mesh.nu,
            "nv": cfg.mesh.nv,
            "curve_samples": cfg.mesh.curve_samples,
        }
    if cfg.sweep is not None:
        doc["sweep"] = {"seed": cfg.sweep.seed, "draws": cfg.sweep.draws}
    return doc


def emit_config(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"
