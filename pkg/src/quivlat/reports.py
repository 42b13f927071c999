"""Report builders shared by the command line and the HTTP service.

Each builder returns a plain dict of JSON-serialisable values.  Output is
deterministic: identical inputs produce identical dicts, and json_bytes
renders them with sorted keys so serialisation is byte-identical run to run.
"""

from __future__ import annotations

import json

from .algebra import classify
from .catalog import IndecCatalog, build_catalog
from .errors import InputError
from .lattice import FiniteLattice, Poset, order_ideal_lattice
from .linalg import GF, QQ
from .modules import hom_space, radical_layers, tau_rigid
from .pretorsion import (
    build_pretorsion_lattice,
    build_pretorsionfree_lattice,
    build_torsion_lattice,
    enumerate_pretorsion_theories,
)
from .quiverfile import CatalogOptions, LoadedQuiverFile

LATTICE_KINDS = ("pretorsion", "pretorsionfree", "torsion", "birkhoff-of-tors")
_ROUTE_ORDER = ("full_side", "cond1", "cond3", "full_check")


def field_name(field) -> str:
    return f"GF({field.p})" if hasattr(field, "p") else "Q"


def catalog_for(loaded: LoadedQuiverFile, *, field: str | None = None,
                prime: int | None = None, dim_bound: int | None = None) -> IndecCatalog:
    """Build the indecomposable catalog, with explicit overrides beating
    the file's options."""
    opts = loaded.options
    kind = field if field is not None else opts.field
    p = prime if prime is not None else opts.prime
    bound = dim_bound if dim_bound is not None else opts.dim_bound
    f = QQ if kind == "q" else GF(p)
    return build_catalog(loaded.algebra, field=f, prime=p, dim_bound=bound)


def json_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


# ---------------------------------------------------------------- classify

def classify_report(loaded: LoadedQuiverFile) -> dict:
    algebra = loaded.algebra
    rep = classify(algebra)
    return {
        "command": "classify",
        "name": rep.name,
        "vertices": list(algebra.quiver.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                   for a in algebra.quiver.arrows],
        "relations": [list(r) for r in algebra.relations],
        "dimension": rep.dimension,
        "string_algebra": rep.string_algebra,
        "string_witness": rep.string_witness,
        "band": rep.band,
        "band_checked": rep.band_checked,
        "distributivity_criterion": {"holds": rep.distributive.holds,
                                     "witness": rep.distributive.witness()},
        "lrd_criterion": {"holds": rep.lrd.holds, "witness": rep.lrd.witness()},
        "connected_components": rep.num_components,
    }


def classify_text(doc: dict) -> str:
    lines = [f"algebra {doc['name']}: {len(doc['vertices'])} vertices, "
             f"{len(doc['arrows'])} arrows, {len(doc['relations'])} relations, "
             f"dimension {doc['dimension']}"]
    if doc["string_algebra"]:
        band = doc["band"]
        lines.append("string algebra: yes"
                     + (f"; band {band}" if band else "; no band"))
    else:
        lines.append(f"string algebra: no ({doc['string_witness']})")
    for key, title in (("distributivity_criterion", "distributivity criterion"),
                       ("lrd_criterion", "lrd criterion")):
        v = doc[key]
        lines.append(f"{title}: {'holds' if v['holds'] else 'fails'}"
                     + (f" ({v['witness']})" if v["witness"] else ""))
    lines.append(f"connected components: {doc['connected_components']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- indecs

def indecs_report(loaded: LoadedQuiverFile, cat: IndecCatalog) -> dict:
    rows = []
    for i, m in enumerate(cat.modules):
        top = radical_layers(m)[0]
        rows.append({
            "label": cat.labels[i],
            "dim_vector": {v: m.dims[v] for v in cat.algebra.quiver.vertices},
            "total_dim": m.total_dim,
            "brick": hom_space(m, m).dim == 1,
            "tau_rigid": tau_rigid(m),
            "unique_maximal_submodule": sum(top.values()) == 1,
        })
    return {
        "command": "indecs",
        "name": loaded.name,
        "field": field_name(cat.field),
        "source": cat.source,
        "certificate": cat.certificate,
        "dim_bound": cat.dim_bound,
        "count": len(cat),
        "modules": rows,
    }


def indecs_text(doc: dict) -> str:
    head = (f"{doc['count']} indecomposables over {doc['field']} "
            f"({doc['source']}, {doc['certificate']})")
    width = max(len(r["label"]) for r in doc["modules"])
    lines = [head]
    for r in doc["modules"]:
        vec = " ".join(str(d) for d in r["dim_vector"].values())
        flags = [name for name, key in (("brick", "brick"),
                                        ("tau-rigid", "tau_rigid"),
                                        ("unique-max", "unique_maximal_submodule"))
                 if r[key]]
        lines.append(f"  {r['label']:{width}s}  dim ({vec})  {', '.join(flags) or '-'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- lattices

def _class_label(cat: IndecCatalog, mask: int) -> str:
    if mask == 0:
        return "0"
    return "add(" + ", ".join(cat.labels[i] for i in range(len(cat)) if mask >> i & 1) + ")"


def _members(cat: IndecCatalog, mask: int) -> list[str]:
    return [cat.labels[i] for i in range(len(cat)) if mask >> i & 1]


def _class_dim(cat: IndecCatalog, mask: int) -> int:
    return sum(cat.modules[i].total_dim for i in range(len(cat)) if mask >> i & 1)


def lattice_report(loaded: LoadedQuiverFile, cat: IndecCatalog, kind: str) -> dict:
    if kind not in LATTICE_KINDS:
        raise InputError(f"unknown lattice kind {kind!r}; expected one of "
                         + ", ".join(LATTICE_KINDS))
    if kind == "pretorsion":
        lat = build_pretorsion_lattice(cat)
        masks = lat.elements
    elif kind == "pretorsionfree":
        lat = build_pretorsionfree_lattice(cat)
        masks = lat.elements
    elif kind == "torsion":
        lat = build_torsion_lattice(cat)
        masks = lat.elements
    else:
        tors = build_torsion_lattice(cat)
        jis = tors.join_irreducibles()
        poset = Poset(len(jis), [(a, b) for a in range(len(jis))
                                 for b in range(len(jis))
                                 if tors.leq(tors.elements[jis[a]], tors.elements[jis[b]])])
        lat = order_ideal_lattice(poset)
        # each down-set names the join, in the torsion lattice, of its members
        masks = []
        for ideal in lat.elements:
            j = tors.bottom
            for k in range(len(jis)):
                if ideal >> k & 1:
                    j = tors.join(j, tors.elements[jis[k]])
            masks.append(j)
    ji_set = set(lat.join_irreducibles())
    nodes = [{
        "index": i,
        "label": _class_label(cat, masks[i]),
        "members": _members(cat, masks[i]),
        "total_dim": _class_dim(cat, masks[i]),
        "join_irreducible": i in ji_set,
    } for i in range(len(lat))]
    return {
        "command": "lattice",
        "name": loaded.name,
        "kind": kind,
        "field": field_name(cat.field),
        "size": len(lat),
        "distributive": lat.is_distributive(),
        "semidistributive": lat.is_semidistributive(),
        "nodes": nodes,
        "hasse_edges": [[lo, hi] for lo, hi in lat.hasse_edges()],
    }


def lattice_text(doc: dict) -> str:
    flags = [flag for flag in ("distributive", "semidistributive") if doc[flag]]
    lines = [f"{doc['kind']} lattice of {doc['name']}: {doc['size']} elements, "
             f"{len(doc['hasse_edges'])} cover pairs"
             + (f" ({', '.join(flags)})" if flags else "")]
    for n in doc["nodes"]:
        mark = " *" if n["join_irreducible"] else ""
        lines.append(f"  [{n['index']}] {n['label']}{mark}")
    lines.append("join-irreducible elements are starred")
    return "\n".join(lines) + "\n"


def lattice_dot(doc: dict) -> str:
    """Graphviz rendering: one rank per total dimension, join-irreducibles
    doubly outlined, edge set exactly the cover pairs."""
    out = [f'digraph "{doc["name"]}_{doc["kind"]}" {{',
           "  rankdir = BT;",
           '  node [shape=box, fontsize=10];']
    for n in doc["nodes"]:
        label = n["label"].replace("\\", "\\\\").replace('"', '\\"')
        extra = ", peripheries=2" if n["join_irreducible"] else ""
        out.append(f'  n{n["index"]} [label="{label}"{extra}];')
    by_dim: dict[int, list[int]] = {}
    for n in doc["nodes"]:
        by_dim.setdefault(n["total_dim"], []).append(n["index"])
    for dim in sorted(by_dim):
        row = "; ".join(f"n{i}" for i in by_dim[dim])
        out.append(f"  {{ rank = same; {row}; }}")
    for lo, hi in doc["hasse_edges"]:
        out.append(f"  n{lo} -> n{hi};")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- theories

def theories_report(loaded: LoadedQuiverFile, cat: IndecCatalog,
                    audit: bool = False) -> dict:
    census = enumerate_pretorsion_theories(cat, audit=audit)
    order = {route: k for k, route in enumerate(_ROUTE_ORDER)}
    theories = sorted(census.theories, key=lambda t: order[t.route])
    rows = [{
        "torsion": {"label": _class_label(cat, t.torsion_mask),
                    "members": _members(cat, t.torsion_mask)},
        "free": {"label": _class_label(cat, t.free_mask),
                 "members": _members(cat, t.free_mask)},
        "trivial": {"label": _class_label(cat, t.trivial_mask),
                    "members": _members(cat, t.trivial_mask)},
        "route": t.route,
    } for t in theories]
    counts = census.route_counts()
    return {
        "command": "theories",
        "name": loaded.name,
        "field": field_name(cat.field),
        "pairs_checked": census.pairs_total,
        "count": len(census.theories),
        "audited": census.audited,
        "route_counts": {route: counts.get(route, 0) for route in _ROUTE_ORDER},
        "theories": rows,
    }


def theories_text(doc: dict) -> str:
    lines = [f"{doc['count']} pretorsion theories for {doc['name']} "
             f"(checked {doc['pairs_checked']} pairs"
             + (", audited)" if doc["audited"] else ")")]
    for route in _ROUTE_ORDER:
        group = [t for t in doc["theories"] if t["route"] == route]
        if not group:
            continue
        lines.append(f"route {route}: {len(group)}")
        for t in group:
            lines.append(f"  ({t['torsion']['label']}, {t['free']['label']})")
    return "\n".join(lines) + "\n"
