"""JSON and DOT formats for spaces, functions, families, maps and lattices.

Space:    ``{"n": 3, "opens": [[0], [0, 1]]}`` (empty and full set optional)
Function: ``{"values": ["0", "1/2", "-1"]}``
Family:   a JSON array of functions
Map:      ``{"source": "fam_x.json", "target": "fam_y.json",
            "source_space": "x.json", "target_space": "y.json",
            "assignment": [0, 2, 1, ...]}``
Lattice:  ``{"elements": [[...], ...], "join": [[...]], "meet": [[...]]}``

Paths inside a map file are resolved relative to that file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .functions import FnFamily, ScalarFn, format_rational, parse_rational
from .lattice import FiniteLattice, SpectrumSpace
from .morphisms import CompatMap
from .topology import FiniteSpace, PointSet, SpaceMap


class FormatError(ValueError):
    """Input does not match one of the file schemas."""


BUNDLED_DIR = Path(__file__).parent / "data"
BUNDLED_PREFIX = "bundled:"


def resolve(path, base: Path | None = None) -> Path:
    """Resolve ``bundled:NAME`` and paths relative to ``base``."""
    text = str(path)
    if text.startswith(BUNDLED_PREFIX):
        name = text[len(BUNDLED_PREFIX):]
        return BUNDLED_DIR / (name if name.endswith(".json") else name + ".json")
    p = Path(text)
    if base is not None and not p.is_absolute():
        p = base / p
    return p


def bundled_names() -> list[str]:
    return sorted(p.stem for p in BUNDLED_DIR.glob("*.json"))


def read_json(path, base: Path | None = None):
    p = resolve(path, base)
    try:
        return json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise FormatError(f"no such file: {p}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{p}: invalid JSON ({exc})") from exc


def _int_list(obj, what: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        raise FormatError(f"{what} must be a list of integers")
    return obj


# spaces


def space_to_json(space: FiniteSpace) -> dict:
    return {"n": space.n, "opens": [s.to_list() for s in space.opens]}


def space_from_json(obj) -> FiniteSpace:
    if not isinstance(obj, dict) or "n" not in obj or "opens" not in obj:
        raise FormatError('space must be an object with keys "n" and "opens"')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise FormatError('"n" must be a non-negative integer')
    if not isinstance(obj["opens"], list):
        raise FormatError('"opens" must be a list')
    sets = []
    seen = set()
    for raw in obj["opens"]:
        pts = _int_list(raw, "each open set")
        if len(set(pts)) != len(pts):
            raise FormatError(f"open set {pts} lists a point twice")
        if any(not 0 <= p < n for p in pts):
            raise FormatError(f"open set {pts} has a point outside 0..{n - 1}")
        s = PointSet.of(n, pts)
        if s.bits in seen:
            raise FormatError(f"open set {pts} is listed twice")
        seen.add(s.bits)
        sets.append(s)
    for extra in (PointSet.empty(n), PointSet.full(n)):
        if extra.bits not in seen:
            sets.append(extra)
            seen.add(extra.bits)
    return FiniteSpace(n, sets)


def load_space(path, base: Path | None = None) -> FiniteSpace:
    return space_from_json(read_json(path, base))


# functions and families


def fn_to_json(f: ScalarFn) -> dict:
    return {"values": [format_rational(v) for v in f.values]}


def _values(obj) -> tuple[Fraction, ...]:
    if not isinstance(obj, dict) or not isinstance(obj.get("values"), list):
        raise FormatError('function must be an object with a "values" list')
    out = []
    for v in obj["values"]:
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise FormatError(f"value {v!r} must be a rational string like '1/2'")
        try:
            out.append(parse_rational(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"cannot parse value {v!r}") from exc
    return tuple(out)


def fn_from_json(space: FiniteSpace, obj) -> ScalarFn:
    values = _values(obj)
    if len(values) != space.n:
        raise FormatError(f"function has {len(values)} values for a {space.n}-point space")
    return ScalarFn(space, values)


def family_to_json(family: FnFamily) -> list:
    return [fn_to_json(f) for f in family]


def family_from_json(space: FiniteSpace, obj, *, require_zero: bool = True) -> FnFamily:
    if not isinstance(obj, list):
        raise FormatError("family must be a JSON array of functions")
    return FnFamily(space, [fn_from_json(space, o) for o in obj], require_zero=require_zero)


def load_family(space: FiniteSpace, path, base: Path | None = None) -> FnFamily:
    return family_from_json(space, read_json(path, base))


# maps


def space_map_to_json(phi: SpaceMap) -> dict:
    return {"assignment": list(phi.assignment)}


def space_map_from_json(source: FiniteSpace, target: FiniteSpace, obj) -> SpaceMap:
    if not isinstance(obj, dict) or "assignment" not in obj:
        raise FormatError('point map must be an object with an "assignment" list')
    assignment = _int_list(obj["assignment"], '"assignment"')
    if len(assignment) != source.n or any(not 0 <= a < target.n for a in assignment):
        raise FormatError("point map assignment does not fit the spaces")
    return SpaceMap(source, target, tuple(assignment))


def load_map(path) -> CompatMap:
    p = resolve(path)
    obj = read_json(p)
    if not isinstance(obj, dict):
        raise FormatError("map must be a JSON object")
    missing = [k for k in ("source", "target", "source_space", "target_space", "assignment") if k not in obj]
    if missing:
        raise FormatError(f"map is missing keys: {', '.join(missing)}")
    base = p.parent
    x = load_space(obj["source_space"], base)
    y = load_space(obj["target_space"], base)
    fx = load_family(x, obj["source"], base)
    fy = load_family(y, obj["target"], base)
    assignment = _int_list(obj["assignment"], '"assignment"')
    if len(assignment) != len(fx) or any(not 0 <= a < len(fy) for a in assignment):
        raise FormatError("map assignment does not fit the families")
    return CompatMap(fx, fy, assignment)


def map_to_json(T: CompatMap, source: str, target: str, source_space: str, target_space: str) -> dict:
    return {
        "source": source,
        "target": target,
        "source_space": source_space,
        "target_space": target_space,
        "assignment": list(T.assignment),
    }


# lattices


def lattice_to_json(lattice: FiniteLattice) -> dict:
    def elem(e):
        return e.to_list() if isinstance(e, PointSet) else e

    n = len(lattice)
    return {
        "elements": [elem(e) for e in lattice.elements],
        "join": [[lattice.join[i][j] for j in range(n)] for i in range(n)],
        "meet": [[lattice.meet[i][j] for j in range(n)] for i in range(n)],
    }


def lattice_from_json(obj) -> FiniteLattice:
    if not isinstance(obj, dict) or any(k not in obj for k in ("elements", "join", "meet")):
        raise FormatError('lattice must have "elements", "join" and "meet"')
    n = len(obj["elements"])
    for key in ("join", "meet"):
        table = obj[key]
        if not isinstance(table, list) or len(table) != n:
            raise FormatError(f'"{key}" must be an {n}x{n} table')
        for row in table:
            if len(_int_list(row, f'rows of "{key}"')) != n or any(not 0 <= v < n for v in row):
                raise FormatError(f'"{key}" must be an {n}x{n} table of element indices')
    elements = [tuple(e) if isinstance(e, list) else e for e in obj["elements"]]
    return FiniteLattice(elements, obj["join"], obj["meet"])


# DOT


def _label(e) -> str:
    return repr(e) if isinstance(e, PointSet) else str(e)


def hasse_dot(lattice: FiniteLattice, name: str = "lattice") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, e in enumerate(lattice.elements):
        lines.append(f'  n{i} [label="{_label(e)}"];')
    for lo, hi in lattice.covers():
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def specialization_dot(space: FiniteSpace, name: str = "space") -> str:
    """Edge ``x -> y`` iff ``x`` lies in the closure of ``{y}`` (x != y)."""
    lines = [f"digraph {name} {{"]
    for x in range(space.n):
        lines.append(f'  p{x} [label="{x}"];')
    for x in range(space.n):
        for y in range(space.n):
            if x != y and space.specializes(x, y):
                lines.append(f"  p{x} -> p{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spectrum_dot(spc: SpectrumSpace, name: str = "spectrum") -> str:
    """Points are filters, drawn with the specialization order of the spectrum topology."""
    lines = [f"digraph {name} {{"]
    for i, f in enumerate(spc.carrier):
        members = ",".join(_label(spc.lattice.elements[m]) for m in sorted(f.members))
        lines.append(f'  u{i} [label="{members}"];')
    top = spc.topology
    for x in range(top.n):
        for y in range(top.n):
            if x != y and top.specializes(x, y):
                lines.append(f"  u{x} -> u{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render(obj, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) and v for v in obj):
        items = [pad + _render(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    return _render(obj, 0) + "\n"
