"""Complete catalogues of indecomposable modules.

Two enumeration routes. String algebras without a band have finitely many
strings; the walk automaton enumerates them all and each string folds into a
module with 0/1 matrices, giving a provably complete catalogue over any
field. Everything else is enumerated by exhaustive search over GF(p) up to a
dimension bound: candidate matrices are canonicalised at pendant vertices
(full-rank echelon forms, since base change there is otherwise unconstrained),
relations prune partial assignments, and a candidate survives only if no
previously found indecomposable splits off. Enumeration refuses when p + 1
pairwise non-isomorphic classes share one dimension vector, the telltale of a
one-parameter family, so a completed run certifies finiteness up to the bound.
"""

from __future__ import annotations

import itertools

from .algebra import (BoundQuiverAlgebra, Letter, _letter_key, find_band,
                      is_string_algebra, walk_can_extend)
from .errors import (BandPresent, DimBoundReached, InputError,
                     InternalInvariantError)
from .linalg import GF, Matrix, QQ, Subspace, image_basis, kernel_basis
from .modules import (HomSpace, Representation, Submodule, all_subspaces,
                      find_split_embedding, hom_space, is_isomorphic,
                      radical_layers, reject, simple_at, trace)


def enumerate_strings(algebra: BoundQuiverAlgebra) -> list[tuple[Letter, ...]]:
    """All strings of positive length, one canonical representative per
    inversion class, sorted by length then letter order.

    Assumes the string conditions hold and no band exists; a walk longer than
    the automaton state count would certify a missed band.
    """
    q = algebra.quiver
    letters = sorted((Letter(a.name, d) for a in q.arrows for d in (True, False)),
                     key=lambda l: _letter_key(q, l))
    window_len = max(1, algebra._max_rel - 1)
    n_states = sum((2 * len(q.arrows)) ** k for k in range(1, window_len + 1))
    cap = n_states + 2
    seen = set()
    out = []
    stack = [(l,) for l in reversed(letters)]
    while stack:
        walk = stack.pop()
        if len(walk) > cap:
            raise InternalInvariantError("string walk outgrew the automaton bound")
        canon = _canonical_string(q, walk)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
        for nxt in letters:
            if walk_can_extend(algebra, walk, nxt):
                stack.append(walk + (nxt,))
    out.sort(key=lambda w: (len(w), [_letter_key(q, l) for l in w]))
    return out


def _canonical_string(q, walk):
    inv = tuple(l.inverse() for l in reversed(walk))
    if [_letter_key(q, l) for l in walk] <= [_letter_key(q, l) for l in inv]:
        return walk
    return inv


def string_module(algebra: BoundQuiverAlgebra, field, walk) -> Representation:
    """Fold a string into a module: one basis vector per visited position,
    each letter contributing a single 1 entry in its arrow's matrix."""
    q = algebra.quiver
    verts = [walk[0].source(q)] + [l.target(q) for l in walk]
    dims = {v: 0 for v in q.vertices}
    pos_index = []
    for v in verts:
        pos_index.append(dims[v])
        dims[v] += 1
    entries = {a.name: [[field.zero()] * dims[a.source]
                        for _ in range(dims[a.target])]
               for a in q.arrows}
    for i, l in enumerate(walk):
        if l.direct:
            entries[l.arrow][pos_index[i + 1]][pos_index[i]] = field.one()
        else:
            entries[l.arrow][pos_index[i]][pos_index[i + 1]] = field.one()
    maps = {a.name: Matrix(field, dims[a.target], dims[a.source], entries[a.name])
            for a in q.arrows}
    return Representation(algebra, field, dims, maps, check=True)


def _pendant_vertices(q) -> set[str]:
    touch = {v: 0 for v in q.vertices}
    for a in q.arrows:
        touch[a.source] += 1
        touch[a.target] += 1
    return {v for v, c in touch.items() if c == 1}


def _row_echelon_forms(field, rows: int, cols: int) -> list[Matrix]:
    """All full-row-rank reduced echelon matrices of the given shape."""
    return [Matrix(field, rows, cols, [list(r) for r in s.basis])
            for s in all_subspaces(field, cols) if s.dim == rows]


def _all_matrices(field, rows: int, cols: int):
    cells = rows * cols
    for values in itertools.product(range(field.p), repeat=cells):
        yield Matrix(field, rows, cols,
                     [[field.from_int(values[i * cols + j]) for j in range(cols)]
                      for i in range(rows)])


def _connected_support(q, dims) -> bool:
    support = [v for v in q.vertices if dims[v] > 0]
    if len(support) <= 1:
        return True
    adj = {v: set() for v in support}
    for a in q.arrows:
        if dims[a.source] > 0 and dims[a.target] > 0:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
    seen = {support[0]}
    frontier = [support[0]]
    while frontier:
        for w in adj[frontier.pop()]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(support)


def _dim_vectors(q, layer: int):
    """Dimension vectors with maximum entry exactly ``layer`` and connected
    support, in increasing total dimension."""
    out = []
    for combo in itertools.product(range(layer + 1), repeat=len(q.vertices)):
        if max(combo) != layer:
            continue
        dims = dict(zip(q.vertices, combo))
        if _connected_support(q, dims):
            out.append(dims)
    out.sort(key=lambda d: (sum(d.values()), tuple(d[v] for v in q.vertices)))
    return out


def _candidate_maps(algebra: BoundQuiverAlgebra, field, dims):
    """Arrow-matrix assignments satisfying the relations, pendant-canonicalised."""
    q = algebra.quiver
    pend = _pendant_vertices(q)
    arrows = list(q.arrows)
    choices = []
    for a in arrows:
        rows, cols = dims[a.target], dims[a.source]
        if a.source != a.target and a.target in pend:
            forms = _row_echelon_forms(field, rows, cols)
        elif a.source != a.target and a.source in pend:
            forms = [m.transpose() for m in _row_echelon_forms(field, cols, rows)]
        else:
            forms = list(_all_matrices(field, rows, cols))
        if not forms:
            return
        choices.append(forms)
    ready = []  # relations checkable once the first k arrows are assigned
    names_assigned = set()
    order = {a.name: k for k, a in enumerate(arrows)}
    for k, a in enumerate(arrows):
        names_assigned.add(a.name)
        ready.append([rel for rel in algebra.relations
                      if max(order[n] for n in rel) == k])

    chosen: dict[str, Matrix] = {}

    def rel_vanishes(rel) -> bool:
        m = Matrix.identity(field, dims[q.arrow_by_name[rel[0]].source])
        for name in rel:
            m = chosen[name].mul(m)
        return m.is_zero()

    def assign(k: int):
        if k == len(arrows):
            yield dict(chosen)
            return
        for mat in choices[k]:
            chosen[arrows[k].name] = mat
            if all(rel_vanishes(rel) for rel in ready[k]):
                yield from assign(k + 1)
        del chosen[arrows[k].name]

    yield from assign(0)


def _splits_off(x: Representation, m: Representation) -> bool:
    """Whether the known indecomposable x is a direct summand of m."""
    return find_split_embedding(x, m) is not None


def _simple_summand_detaches(cand: Representation) -> bool:
    """Cheap decomposability filter: a vector at one vertex killed by every
    outgoing arrow and outside the incoming images spans a simple summand
    (any complement through the incoming images and the other vertices is
    stable). Rejects the bulk of candidates before hom systems are built.
    """
    q = cand.algebra.quiver
    f = cand.field
    for v in q.vertices:
        dv = cand.dims[v]
        if dv == 0:
            continue
        outs = [cand.maps[a.name] for a in q.arrows_from(v)]
        rows = []
        for m in outs:
            rows.extend(m.data)
        killed = kernel_basis(Matrix(f, len(rows), dv, [list(r) for r in rows]))
        if not killed:
            continue
        images = []
        for a in q.arrows_into(v):
            images.extend(image_basis(cand.maps[a.name]))
        incoming = Subspace(f, dv, images)
        if any(not incoming.contains(w) for w in killed):
            return True
    return False


def enumerate_brute_force(algebra: BoundQuiverAlgebra, prime: int = 2,
                          dim_bound: int = 3):
    """All indecomposables over GF(prime) with dimension vector entries up to
    the bound, with a completeness certificate.

    Refuses when some dimension vector accumulates prime + 1 pairwise
    non-isomorphic classes: a finite field can only do that inside a
    one-parameter family, so the algebra is representation-infinite. The
    certificate is "margin" when no class touches the bound and "heuristic"
    otherwise.
    """
    field = GF(prime)
    q = algebra.quiver
    known: list[Representation] = []
    counts: dict[tuple, int] = {}
    for layer in range(1, dim_bound + 1):
        for dims in _dim_vectors(q, layer):
            vec = tuple(dims[v] for v in q.vertices)
            if sum(vec) == 1:
                vertex = next(v for v in q.vertices if dims[v] == 1)
                known.append(simple_at(algebra, vertex, field))
                counts[vec] = 1
                continue
            for maps in _candidate_maps(algebra, field, dims):
                cand = Representation(algebra, field, dims, maps, check=False)
                if _simple_summand_detaches(cand):
                    continue
                # Simples are excluded below: the quick filter above already
                # rejected every candidate with a simple summand.
                if any(_splits_off(x, cand) for x in known
                       if 1 < x.total_dim <= cand.total_dim
                       and all(x.dims[v] <= dims[v] for v in dims)):
                    continue
                known.append(cand)
                counts[vec] = counts.get(vec, 0) + 1
                if counts[vec] >= prime + 1:
                    raise DimBoundReached(
                        f"dimension vector {vec} carries at least {prime + 1} "
                        "pairwise non-isomorphic classes, a one-parameter family",
                        dim_vector=vec)
    certificate = "margin" if all(max(x.dim_vector) < dim_bound for x in known) \
        else "heuristic"
    return known, certificate


def module_label(m: Representation) -> str:
    """Stacked radical-filtration notation: layers joined by '/', vertices
    within a layer repeated by multiplicity in vertex order."""
    layers = radical_layers(m)
    if not layers:
        return "0"
    parts = []
    for layer in layers:
        names = []
        for v in m.algebra.quiver.vertices:
            names.extend([v] * layer[v])
        parts.append(" ".join(names))
    return "/".join(parts)


class IndecCatalog:
    """The indecomposables of an algebra in a fixed order with fixed labels,
    plus memoised pairwise trace and reject submodules."""

    def __init__(self, algebra: BoundQuiverAlgebra, field, modules, labels,
                 source: str, certificate: str, dim_bound: int | None = None):
        self.algebra = algebra
        self.field = field
        self.modules = tuple(modules)
        self.labels = tuple(labels)
        self.source = source
        self.certificate = certificate
        self.dim_bound = dim_bound
        self.by_label = {lab: i for i, lab in enumerate(self.labels)}
        self._trace_cache: dict[tuple[int, int], Submodule] = {}
        self._reject_cache: dict[tuple[int, int], Submodule] = {}
        self._hom_cache: dict[tuple[int, int], HomSpace] = {}

    def __len__(self):
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def index_of_isomorphic(self, rep: Representation) -> int | None:
        for i, m in enumerate(self.modules):
            if m.dim_vector == rep.dim_vector and is_isomorphic(m, rep):
                return i
        return None

    def pair_hom(self, i: int, j: int) -> HomSpace:
        key = (i, j)
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_space(self.modules[i], self.modules[j])
        return self._hom_cache[key]

    def pair_trace(self, i: int, j: int) -> Submodule:
        key = (i, j)
        if key not in self._trace_cache:
            self._trace_cache[key] = trace([self.modules[i]], self.modules[j])
        return self._trace_cache[key]

    def pair_reject(self, i: int, j: int) -> Submodule:
        key = (i, j)
        if key not in self._reject_cache:
            self._reject_cache[key] = reject([self.modules[i]], self.modules[j])
        return self._reject_cache[key]

    def trace_of_set(self, indices, j: int) -> Submodule:
        from .modules import zero_submodule
        out = zero_submodule(self.modules[j])
        for i in indices:
            out = out.add(self.pair_trace(i, j))
        return out

    def reject_of_set(self, indices, j: int) -> Submodule:
        from .modules import full_submodule
        out = full_submodule(self.modules[j])
        for i in indices:
            out = out.intersect(self.pair_reject(i, j))
        return out

    def cast(self, field) -> "IndecCatalog":
        """The same catalogue read over another field, order and labels kept."""
        return IndecCatalog(self.algebra, field,
                            [m.cast(field) for m in self.modules],
                            self.labels, self.source, self.certificate,
                            self.dim_bound)


def is_locally_representation_directed(catalog: IndecCatalog) -> bool:
    """Whether every catalogued indecomposable is a brick (one-dimensional
    endomorphism algebra)."""
    return all(hom_space(m, m).dim == 1 for m in catalog.modules)


def build_catalog(algebra: BoundQuiverAlgebra, field=QQ, prime: int = 2,
                  dim_bound: int = 3) -> IndecCatalog:
    """Catalogue the indecomposables: strings when the algebra is a band-free
    string algebra, exhaustive search over GF(prime) otherwise.

    The brute-force route always works over GF(prime) whatever field was
    asked for, since completeness of the search needs a finite field.
    """
    q = algebra.quiver
    stringy, _ = is_string_algebra(algebra)
    if stringy:
        band = find_band(algebra)
        if band is not None:
            raise BandPresent(str(band))
        keyed = [(simple_at(algebra, v, field), ())
                 for v in q.vertices]
        keyed += [(string_module(algebra, field, w),
                   tuple(_letter_key(q, l) for l in w))
                  for w in enumerate_strings(algebra)]
        source, certificate, bound = "strings", "complete", None
    else:
        modules, certificate = enumerate_brute_force(algebra, prime, dim_bound)
        field = GF(prime)
        keyed = [(m, tuple(int(e) for a in q.arrows for row in m.maps[a.name].data
                           for e in row))
                 for m in modules]
        source, bound = "brute-force", dim_bound
    keyed.sort(key=lambda pair: (pair[0].total_dim,
                                 tuple(-d for d in pair[0].dim_vector),
                                 pair[1]))
    modules = [m for m, _ in keyed]
    labels = []
    used: dict[str, int] = {}
    for m in modules:
        lab = module_label(m)
        used[lab] = used.get(lab, 0) + 1
        labels.append(lab if used[lab] == 1 else f"{lab}#{used[lab]}")
    return IndecCatalog(algebra, field, modules, labels, source, certificate,
                        dim_bound=bound)
