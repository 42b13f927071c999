"""Quiver files: the on-disk description of a bound quiver algebra.

A file is TOML with these top-level keys:

    name      = "a2"
    vertices  = ["1", "2"]
    arrows    = [ { name = "a", source = "1", target = "2" } ]
    relations = [ ["a", "b"] ]

    [options]
    field     = "q"
    prime     = 2
    dim_bound = 3

`name`, `relations`, and `[options]` are optional.  Relation entries are
sequences of arrow names composed left to right: ["a", "b"] is the path
that traverses a and then b, so it requires target(a) == source(b).

`field` selects the coefficient field for module-level work: "q" for the
rationals, "gf" for the prime field of order `prime`.  `dim_bound` caps
the per-vertex dimension searched during brute-force enumeration.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .algebra import BoundQuiverAlgebra, Quiver, validate_admissible
from .errors import QuiverFileError

_TOP_KEYS = {"name", "vertices", "arrows", "relations", "options"}
_ARROW_KEYS = {"name", "source", "target"}
_OPTION_KEYS = {"field", "prime", "dim_bound"}


@dataclass(frozen=True)
class CatalogOptions:
    """Field and search-bound settings carried alongside a quiver file."""

    field: str = "q"
    prime: int = 2
    dim_bound: int = 3


@dataclass(frozen=True)
class LoadedQuiverFile:
    name: str
    algebra: BoundQuiverAlgebra
    options: CatalogOptions


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _label(value, what: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise QuiverFileError(f"{what} must be a string or integer, got {value!r}")
    return str(value)


def _parse_options(raw) -> CatalogOptions:
    if not isinstance(raw, dict):
        raise QuiverFileError("options must be a table")
    unknown = set(raw) - _OPTION_KEYS
    if unknown:
        raise QuiverFileError(f"unknown options key(s): {', '.join(sorted(unknown))}")
    field = raw.get("field", "q")
    if field not in ("q", "gf"):
        raise QuiverFileError(f'options.field must be "q" or "gf", got {field!r}')
    prime = raw.get("prime", 2)
    if isinstance(prime, bool) or not isinstance(prime, int) or not _is_prime(prime):
        raise QuiverFileError(f"options.prime must be a prime number, got {prime!r}")
    dim_bound = raw.get("dim_bound", 3)
    if isinstance(dim_bound, bool) or not isinstance(dim_bound, int) or dim_bound < 1:
        raise QuiverFileError(f"options.dim_bound must be a positive integer, got {dim_bound!r}")
    return CatalogOptions(field=field, prime=prime, dim_bound=dim_bound)


def parse_quiver_file(text: str, *, default_name: str = "") -> LoadedQuiverFile:
    """Parse quiver-file text into a validated bound quiver algebra."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise QuiverFileError(f"not valid TOML: {e}") from e

    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise QuiverFileError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    for key in ("vertices", "arrows"):
        if key not in doc:
            raise QuiverFileError(f"missing required key: {key}")

    name = doc.get("name", default_name)
    if not isinstance(name, str):
        raise QuiverFileError(f"name must be a string, got {name!r}")

    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise QuiverFileError("vertices must be a non-empty array of labels")
    vertices = [_label(v, "vertex label") for v in raw_vertices]

    raw_arrows = doc["arrows"]
    if not isinstance(raw_arrows, list):
        raise QuiverFileError("arrows must be an array of {name, source, target} tables")
    arrows = []
    for k, entry in enumerate(raw_arrows):
        if not isinstance(entry, dict):
            raise QuiverFileError(f"arrows[{k}] must be a table with name/source/target")
        unknown = set(entry) - _ARROW_KEYS
        if unknown:
            raise QuiverFileError(f"arrows[{k}] has unknown key(s): {', '.join(sorted(unknown))}")
        missing = _ARROW_KEYS - set(entry)
        if missing:
            raise QuiverFileError(f"arrows[{k}] is missing key(s): {', '.join(sorted(missing))}")
        arrows.append((_label(entry["name"], f"arrows[{k}].name"),
                       _label(entry["source"], f"arrows[{k}].source"),
                       _label(entry["target"], f"arrows[{k}].target")))

    raw_relations = doc.get("relations", [])
    if not isinstance(raw_relations, list):
        raise QuiverFileError("relations must be an array of arrow-name sequences")
    relations = []
    for k, rel in enumerate(raw_relations):
        if not isinstance(rel, list) or not rel:
            raise QuiverFileError(f"relations[{k}] must be a non-empty array of arrow names")
        relations.append(tuple(_label(a, f"relations[{k}] entry") for a in rel))

    options = _parse_options(doc.get("options", {}))
    quiver = Quiver(vertices, arrows)
    algebra = validate_admissible(quiver, relations, name=name)
    return LoadedQuiverFile(name=name, algebra=algebra, options=options)


def load_quiver_file(path) -> LoadedQuiverFile:
    """Read and parse one quiver file from disk."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise QuiverFileError(f"cannot read {p}: {e.strerror or e}") from e
    except UnicodeDecodeError as e:
        raise QuiverFileError(f"{p} is not UTF-8: {e}") from e
    return parse_quiver_file(text, default_name=p.stem)


def fixtures_dir() -> Path:
    """Directory holding the fixture quiver files shipped with the package."""
    return Path(__file__).resolve().parent / "fixtures"


def shipped_fixtures() -> list[str]:
    """Names of the shipped fixtures, sorted."""
    return sorted(p.stem for p in fixtures_dir().glob("*.toml"))
