"""Finite dimensional modules as quiver representations.

A representation assigns a vector space to each vertex and a matrix to each
arrow ``a: u -> v`` mapping the space at ``u`` to the space at ``v`` (shape
``dims[v] x dims[u]``); a relation word acts as the composite of its arrow
matrices in traversal order and must vanish. Morphisms are vertex-indexed
matrix tuples commuting with the arrow actions, computed exactly as the
kernel of one linear system, which gives every Hom space a canonical basis
and every morphism canonical coordinates.

The operations here are the workhorses of everything downstream: trace and
reject (largest image from / kill-off into an additive class), quotients and
subrepresentations with explicit structure maps, radical filtrations,
brick and isomorphism tests, Krull-Schmidt decomposition over GF(p) by
idempotent search, and the Auslander-Reiten translate via the transpose of
a minimal projective presentation over the opposite algebra.
"""

from __future__ import annotations

import itertools
import random

from .algebra import BoundQuiverAlgebra, Path, Quiver, validate_admissible
from .errors import (EndResidueTooLarge, EndTooLarge, InputError,
                     InternalInvariantError, SubmoduleEnumerationTooLarge)
from .linalg import Matrix, PrimeField, Subspace, kernel_basis, solve

_ISO_SEARCH_CAP = 500_000
_ISO_SAMPLE_COUNT = 4096
_END_GUARD = 12
_SUBMODULE_GUARD = 20_000


class Representation:
    """A representation of a bound quiver algebra over an exact field."""

    def __init__(self, algebra: BoundQuiverAlgebra, field, dims, maps, check: bool = True):
        self.algebra = algebra
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.quiver.vertices}
        self.maps = {}
        for a in algebra.quiver.arrows:
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zero(field, self.dims[a.target], self.dims[a.source])
            elif not isinstance(m, Matrix):
                m = Matrix(field, self.dims[a.target], self.dims[a.source], m)
            if (m.rows, m.cols) != (self.dims[a.target], self.dims[a.source]):
                raise InputError(f"map for arrow {a.name} has shape {m.rows}x{m.cols}, "
                                 f"expected {self.dims[a.target]}x{self.dims[a.source]}")
            self.maps[a.name] = m
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            comp = self.path_action(Path(self.algebra.quiver.arrow_by_name[rel[0]].source,
                                         tuple(rel)))
            if not comp.is_zero():
                raise InputError(f"relation {'*'.join(rel)} does not vanish on this module")

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_action(self, path: Path) -> Matrix:
        """Matrix of the path acting from its source vertex space to its target."""
        m = Matrix.identity(self.field, self.dims[path.source])
        for name in path.arrows:
            m = self.maps[name].mul(m)
        return m

    def cast(self, field) -> "Representation":
        """The same integral structure constants read over another field."""
        new_maps = {}
        for name, m in self.maps.items():
            entries = []
            for row in m.data:
                out = []
                for e in row:
                    n = int(e)
                    if n != e:
                        raise InputError("cast needs integral structure constants")
                    out.append(field.from_int(n))
                entries.append(out)
            new_maps[name] = Matrix(field, m.rows, m.cols, entries)
        return Representation(self.algebra, field, self.dims, new_maps, check=True)

    def __repr__(self):
        return f"Representation(dims {self.dim_vector})"


def zero_representation(algebra: BoundQuiverAlgebra, field) -> Representation:
    return Representation(algebra, field, {}, {}, check=False)


def simple_at(algebra: BoundQuiverAlgebra, vertex: str, field) -> Representation:
    return Representation(algebra, field, {vertex: 1}, {}, check=False)


def projective_at(algebra: BoundQuiverAlgebra, vertex: str, field) -> Representation:
    """The projective with top at ``vertex``: path spaces with concatenation action.

    Basis at vertex w = surviving paths from ``vertex`` to w, in path-basis
    order; the generator is the trivial path, always index 0 at ``vertex``.
    """
    paths = algebra.paths_from(vertex)
    q = algebra.quiver
    by_vertex: dict[str, list[Path]] = {v: [] for v in q.vertices}
    for p in paths:
        by_vertex[p.target(q)].append(p)
    index = {v: {p: i for i, p in enumerate(by_vertex[v])} for v in q.vertices}
    dims = {v: len(by_vertex[v]) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        mat = [[field.zero()] * dims[a.source] for _ in range(dims[a.target])]
        for p in by_vertex[a.source]:
            word = p.arrows + (a.name,)
            if not algebra.path_in_ideal(word):
                longer = Path(vertex, word)
                mat[index[a.target][longer]][index[a.source][p]] = field.one()
        maps[a.name] = Matrix(field, dims[a.target], dims[a.source], mat)
    return Representation(algebra, field, dims, maps, check=False)


def simples_and_projectives(algebra: BoundQuiverAlgebra, field):
    """All simples and indecomposable projectives keyed by vertex."""
    simples = {v: simple_at(algebra, v, field) for v in algebra.quiver.vertices}
    projectives = {v: projective_at(algebra, v, field) for v in algebra.quiver.vertices}
    return simples, projectives


def direct_sum(reps: list[Representation]) -> tuple[Representation, list[dict]]:
    """Block sum; also returns per-summand vertex offsets for building morphisms."""
    if not reps:
        raise InputError("direct_sum of an empty list needs an algebra to anchor to")
    algebra, f = reps[0].algebra, reps[0].field
    q = algebra.quiver
    offsets = []
    dims = {v: 0 for v in q.vertices}
    for r in reps:
        offsets.append({v: dims[v] for v in q.vertices})
        for v in q.vertices:
            dims[v] += r.dims[v]
    maps = {}
    for a in q.arrows:
        rows, cols = dims[a.target], dims[a.source]
        mat = [[f.zero()] * cols for _ in range(rows)]
        for r, off in zip(reps, offsets):
            block = r.maps[a.name]
            for i in range(block.rows):
                for j in range(block.cols):
                    mat[off[a.target] + i][off[a.source] + j] = block.entry(i, j)
        maps[a.name] = Matrix(f, rows, cols, mat)
    return Representation(algebra, f, dims, maps, check=False), offsets


class Morphism:
    """A homomorphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks):
        self.source = source
        self.target = target
        self.blocks = {}
        for v in source.algebra.quiver.vertices:
            b = blocks.get(v)
            if b is None:
                b = Matrix.zero(source.field, target.dims[v], source.dims[v])
            self.blocks[v] = b

    def block(self, v: str) -> Matrix:
        return self.blocks[v]

    def then(self, other: "Morphism") -> "Morphism":
        """Composite self followed by other."""
        return Morphism(self.source, other.target,
                        {v: other.blocks[v].mul(self.blocks[v])
                         for v in self.source.algebra.quiver.vertices})

    def add(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.blocks[v].add(other.blocks[v])
                         for v in self.source.algebra.quiver.vertices})

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target,
                        {v: self.blocks[v].scale(c)
                         for v in self.source.algebra.quiver.vertices})

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(not kernel_basis(b) for b in self.blocks.values())

    def is_surjective(self) -> bool:
        from .linalg import rank
        return all(rank(b) == self.target.dims[v] for v, b in self.blocks.items())

    def is_isomorphism(self) -> bool:
        return (self.source.dim_vector == self.target.dim_vector
                and self.is_injective())

    def image(self) -> "Submodule":
        from .linalg import image_basis
        return Submodule(self.target,
                         {v: Subspace(self.target.field, self.target.dims[v],
                                      image_basis(b))
                          for v, b in self.blocks.items()}, check=False)

    def kernel(self) -> "Submodule":
        return Submodule(self.source,
                         {v: Subspace(self.source.field, self.source.dims[v],
                                      kernel_basis(b))
                          for v, b in self.blocks.items()}, check=False)

    def flat(self) -> tuple:
        """Entries in the canonical unknown order used by hom_space."""
        out = []
        for v in self.source.algebra.quiver.vertices:
            for row in self.blocks[v].data:
                out.extend(row)
        return tuple(out)

    def __repr__(self):
        return f"Morphism({self.source!r} -> {self.target!r})"


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, {v: Matrix.identity(m.field, m.dims[v])
                           for v in m.algebra.quiver.vertices})


class HomSpace:
    """Hom(m, n) with a canonical ordered basis and coordinate extraction."""

    def __init__(self, source: Representation, target: Representation):
        if source.algebra is not target.algebra and \
                source.algebra.quiver.vertices != target.algebra.quiver.vertices:
            raise InputError("hom between modules over different algebras")
        if source.field != target.field:
            raise InputError("hom between modules over different fields")
        self.source = source
        self.target = target
        f = source.field
        q = source.algebra.quiver
        positions = []  # (vertex, i, j) in flat order
        for v in q.vertices:
            for i in range(target.dims[v]):
                for j in range(source.dims[v]):
                    positions.append((v, i, j))
        pos_index = {p: k for k, p in enumerate(positions)}
        rows = []
        for a in q.arrows:
            u, w = a.source, a.target
            ma, na = source.maps[a.name], target.maps[a.name]
            # F_w . M_a - N_a . F_u = 0, one equation per (i, j).
            for i in range(target.dims[w]):
                for j in range(source.dims[u]):
                    row = [f.zero()] * len(positions)
                    for k in range(source.dims[w]):
                        row[pos_index[(w, i, k)]] = f.add(row[pos_index[(w, i, k)]],
                                                          ma.entry(k, j))
                    for k in range(target.dims[u]):
                        row[pos_index[(u, k, j)]] = f.sub(
                            row[pos_index[(u, k, j)]], na.entry(i, k))
                    rows.append(row)
        if rows:
            system = Matrix(f, len(rows), len(positions), rows)
            kernel = kernel_basis(system)
        else:
            kernel = [tuple(f.one() if i == k else f.zero()
                            for i in range(len(positions)))
                      for k in range(len(positions))]
        self._positions = positions
        self._free_positions = []
        basis = []
        for vec in kernel:
            blocks = {v: [[f.zero()] * source.dims[v] for _ in range(target.dims[v])]
                      for v in q.vertices}
            for (v, i, j), e in zip(positions, vec):
                blocks[v][i][j] = e
            basis.append(Morphism(source, target,
                                  {v: Matrix(f, target.dims[v], source.dims[v], blocks[v])
                                   for v in q.vertices}))
        self.basis = tuple(basis)
        # Kernel vectors from RREF carry a 1 at "their" free coordinate and 0 at
        # the others, so reading those coordinates inverts the spanning map.
        self._free = _free_coordinates(kernel, f)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def from_coords(self, coeffs) -> Morphism:
        f = self.source.field
        out = Morphism(self.source, self.target, {})
        for c, b in zip(coeffs, self.basis):
            if not f.is_zero(c):
                out = out.add(b.scale(c))
        return out

    def coords(self, phi: Morphism) -> tuple:
        flat = phi.flat()
        return tuple(flat[p] for p in self._free)

    def subspace_of_coords(self, morphisms) -> Subspace:
        """The subspace of coordinate space spanned by the given morphisms."""
        return Subspace(self.source.field, self.dim,
                        [self.coords(phi) for phi in morphisms])


def _free_coordinates(kernel, f) -> list[int]:
    free = []
    for k, vec in enumerate(kernel):
        pos = None
        for idx, e in enumerate(vec):
            if f.is_zero(e):
                continue
            if e == f.one() and all(f.is_zero(kernel[other][idx])
                                    for other in range(len(kernel)) if other != k):
                pos = idx
                break
        if pos is None:
            raise InternalInvariantError("kernel basis lost its free-coordinate structure")
        free.append(pos)
    return free


def hom_space(m: Representation, n: Representation) -> HomSpace:
    return HomSpace(m, n)


class Submodule:
    """A vertex-indexed family of subspaces stable under all arrow actions."""

    def __init__(self, ambient: Representation, spaces, check: bool = True):
        self.ambient = ambient
        self.spaces = {v: spaces.get(v, Subspace.zero(ambient.field, ambient.dims[v]))
                       for v in ambient.algebra.quiver.vertices}
        if check:
            for a in ambient.algebra.quiver.arrows:
                mat = ambient.maps[a.name]
                tgt = self.spaces[a.target]
                for vec in self.spaces[a.source].basis:
                    if not tgt.contains(mat.apply(vec)):
                        raise InputError(f"subspaces not stable under arrow {a.name}")

    @property
    def dims(self) -> dict:
        return {v: s.dim for v, s in self.spaces.items()}

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_full(self) -> bool:
        return all(s.is_full() for s in self.spaces.values())

    def add(self, other: "Submodule") -> "Submodule":
        return Submodule(self.ambient,
                         {v: self.spaces[v].add(other.spaces[v]) for v in self.spaces},
                         check=False)

    def intersect(self, other: "Submodule") -> "Submodule":
        return Submodule(self.ambient,
                         {v: self.spaces[v].intersect(other.spaces[v]) for v in self.spaces},
                         check=False)

    def contains(self, other: "Submodule") -> bool:
        return all(self.spaces[v].contains_space(other.spaces[v]) for v in self.spaces)

    def key(self) -> tuple:
        return tuple(self.spaces[v].basis for v in self.ambient.algebra.quiver.vertices)

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.ambient is other.ambient \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Submodule(dims {tuple(self.dims.values())})"


def zero_submodule(m: Representation) -> Submodule:
    return Submodule(m, {}, check=False)


def full_submodule(m: Representation) -> Submodule:
    return Submodule(m, {v: Subspace.full(m.field, m.dims[v]) for v in m.dims},
                     check=False)


def trace(generators, n: Representation) -> Submodule:
    """Largest submodule of n that sums of copies of the generators map onto.

    The sum of all images of all morphisms from the generators; n lies in the
    quotient closure of the generators' additive hull iff this is all of n.
    """
    out = zero_submodule(n)
    for g in generators:
        for phi in hom_space(g, n).basis:
            out = out.add(phi.image())
    return out


def reject(cogenerators, n: Representation) -> Submodule:
    """Common kernel of all morphisms from n into the cogenerators.

    n embeds into a finite sum of the cogenerators iff this is zero.
    """
    out = full_submodule(n)
    for c in cogenerators:
        for phi in hom_space(n, c).basis:
            out = out.intersect(phi.kernel())
    return out


def sub_representation(m: Representation, s: Submodule) -> tuple[Representation, Morphism]:
    """The submodule as a representation plus its inclusion."""
    f = m.field
    q = m.algebra.quiver
    dims = {v: s.spaces[v].dim for v in q.vertices}
    maps = {}
    for a in q.arrows:
        src, tgt = s.spaces[a.source], s.spaces[a.target]
        cols = []
        for vec in src.basis:
            image = m.maps[a.name].apply(vec)
            coords = tgt.coords(image)
            if coords is None:
                raise InternalInvariantError("submodule not stable under arrow action")
            cols.append(coords)
        maps[a.name] = Matrix(f, dims[a.target], dims[a.source],
                              [[cols[j][i] for j in range(dims[a.source])]
                               for i in range(dims[a.target])])
    rep = Representation(m.algebra, f, dims, maps, check=False)
    inclusion = Morphism(rep, m, {v: Matrix(f, m.dims[v], dims[v],
                                            [[s.spaces[v].basis[j][i]
                                              for j in range(dims[v])]
                                             for i in range(m.dims[v])])
                                  for v in q.vertices})
    return rep, inclusion


def quotient_by(m: Representation, s: Submodule) -> tuple[Representation, Morphism]:
    """The quotient m/s with its projection; coordinates are the non-pivot ones."""
    f = m.field
    q = m.algebra.quiver
    complements = {}
    for v in q.vertices:
        pivots = set(s.spaces[v].pivots)
        complements[v] = [j for j in range(m.dims[v]) if j not in pivots]
    dims = {v: len(complements[v]) for v in q.vertices}
    projections = {}
    for v in q.vertices:
        rows = []
        for j in range(m.dims[v]):
            e = [f.zero()] * m.dims[v]
            e[j] = f.one()
            reduced = s.spaces[v].reduce(e)
            rows.append([reduced[c] for c in complements[v]])
        projections[v] = Matrix(f, dims[v], m.dims[v],
                                [[rows[j][i] for j in range(m.dims[v])]
                                 for i in range(dims[v])])
    maps = {}
    for a in q.arrows:
        lift_cols = []
        for c in complements[a.source]:
            e = [f.zero()] * m.dims[a.source]
            e[c] = f.one()
            lift_cols.append(projections[a.target].apply(m.maps[a.name].apply(e)))
        maps[a.name] = Matrix(f, dims[a.target], dims[a.source],
                              [[lift_cols[j][i] for j in range(dims[a.source])]
                               for i in range(dims[a.target])])
    rep = Representation(m.algebra, f, dims, maps, check=False)
    projection = Morphism(m, rep, projections)
    return rep, projection


def radical(m: Representation) -> Submodule:
    """Sum of all arrow images: the radical for a bound quiver algebra."""
    from .linalg import image_basis
    spaces = {v: Subspace.zero(m.field, m.dims[v]) for v in m.dims}
    for a in m.algebra.quiver.arrows:
        spaces[a.target] = spaces[a.target].add(
            Subspace(m.field, m.dims[a.target], image_basis(m.maps[a.name])))
    return Submodule(m, spaces, check=False)


def radical_top(m: Representation) -> tuple[Submodule, dict]:
    """The radical submodule together with the vertex dimensions of the top."""
    r = radical(m)
    top = {v: m.dims[v] - r.spaces[v].dim for v in m.dims}
    return r, top


def radical_layers(m: Representation) -> list[dict]:
    """Vertex dimension vectors of rad^k m / rad^(k+1) m, top layer first."""
    layers = []
    current = full_submodule(m)
    while not current.is_zero():
        nxt = _radical_of_submodule(m, current)
        layers.append({v: current.spaces[v].dim - nxt.spaces[v].dim for v in m.dims})
        current = nxt
    return layers


def _radical_of_submodule(m: Representation, s: Submodule) -> Submodule:
    spaces = {v: Subspace.zero(m.field, m.dims[v]) for v in m.dims}
    for a in m.algebra.quiver.arrows:
        mat = m.maps[a.name]
        vecs = [mat.apply(vec) for vec in s.spaces[a.source].basis]
        spaces[a.target] = spaces[a.target].add(Subspace(m.field, m.dims[a.target], vecs))
    return Submodule(m, spaces, check=False)


def has_unique_maximal_submodule(m: Representation) -> bool:
    """True when the top is simple, i.e. the module has exactly one maximal sub."""
    _, top = radical_top(m)
    return sum(top.values()) == 1


def is_brick(m: Representation) -> bool:
    return hom_space(m, m).dim == 1


def is_isomorphic(m: Representation, n: Representation) -> bool:
    """Exact isomorphism test.

    Over GF(p) every coefficient tuple of the Hom basis is tried. Over the
    rationals the determinant product of a generic combination is a polynomial
    of degree at most the total dimension in each coefficient, so scanning the
    integer grid {0..total_dim}^hom_dim is a complete test; when that grid
    would exceed half a million points a seeded random sample is used instead
    and the test is only one-sided (documented bound).
    """
    if m.dim_vector != n.dim_vector:
        return False
    if m.total_dim == 0:
        return True
    hom = hom_space(m, n)
    d = hom.dim
    if d == 0:
        return False
    f = m.field
    if isinstance(f, PrimeField):
        for coeffs in itertools.product(range(f.p), repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            if hom.from_coords(coeffs).is_isomorphism():
                return True
        return False
    grid = m.total_dim + 1
    if grid ** d <= _ISO_SEARCH_CAP:
        candidates = itertools.product(range(grid), repeat=d)
    else:
        rng = random.Random(f"iso:{m.dim_vector}:{d}")
        candidates = (tuple(rng.randint(-997, 997) for _ in range(d))
                      for _ in range(_ISO_SAMPLE_COUNT))
    for coeffs in candidates:
        if all(c == 0 for c in coeffs):
            continue
        if hom.from_coords([f.from_int(c) for c in coeffs]).is_isomorphism():
            return True
    return False


def exists_surjection(m: Representation, n: Representation) -> bool:
    """Whether a single morphism m -> n is onto; same search scheme as above."""
    if any(m.dims[v] < n.dims[v] for v in m.dims):
        return False
    if n.total_dim == 0:
        return True
    hom = hom_space(m, n)
    if hom.dim == 0:
        return False
    f = m.field
    if isinstance(f, PrimeField):
        candidates = itertools.product(range(f.p), repeat=hom.dim)
    else:
        grid = m.total_dim + n.total_dim + 1
        if grid ** hom.dim <= _ISO_SEARCH_CAP:
            candidates = itertools.product(range(grid), repeat=hom.dim)
        else:
            rng = random.Random(f"epi:{m.dim_vector}:{n.dim_vector}:{hom.dim}")
            candidates = (tuple(rng.randint(-997, 997) for _ in range(hom.dim))
                          for _ in range(_ISO_SAMPLE_COUNT))
    for coeffs in candidates:
        if all(c == 0 for c in coeffs):
            continue
        if hom.from_coords([f.from_int(c) for c in coeffs]).is_surjective():
            return True
    return False


def decompose(m: Representation) -> list[Representation]:
    """Krull-Schmidt decomposition over GF(p) by exhaustive idempotent search.

    Splits off images of nontrivial idempotent endomorphisms until none exist.
    Guarded: endomorphism algebras above dimension 12 are refused.
    """
    if not isinstance(m.field, PrimeField):
        raise InputError("decompose runs over GF(p); cast the module first")
    if m.total_dim == 0:
        return []
    end = hom_space(m, m)
    if end.dim > _END_GUARD:
        raise EndTooLarge(f"End has dimension {end.dim} > {_END_GUARD}")
    e = _find_nontrivial_idempotent(end)
    if e is None:
        return [m]
    part_a, _ = sub_representation(m, e.image())
    complement = identity_morphism(m).add(e.scale(m.field.neg(m.field.one())))
    part_b, _ = sub_representation(m, complement.image())
    if part_a.total_dim + part_b.total_dim != m.total_dim:
        raise InternalInvariantError("idempotent did not split the module")
    return decompose(part_a) + decompose(part_b)


def find_split_embedding(x: Representation,
                         m: Representation) -> tuple[Morphism, Morphism] | None:
    """A split embedding of the indecomposable x into m, returned as a pair
    (section, retraction) with section.then(retraction) the identity of x,
    or None when x is not a direct summand of m.

    Only the basis morphisms x -> m need to be tried: End(x) is local, so the
    maps out of x admitting no retraction are exactly the radical maps, a
    linear subspace, and a proper subspace cannot contain a whole basis. The
    retraction condition is linear in the second map, one solve per trial.
    Works over any field; x must be indecomposable for completeness.
    """
    to_m = hom_space(x, m)
    if to_m.dim == 0:
        return None
    from_m = hom_space(m, x)
    if from_m.dim == 0:
        return None
    f = x.field
    ident = identity_morphism(x).flat()
    for phi in to_m.basis:
        composites = [phi.then(psi).flat() for psi in from_m.basis]
        system = Matrix(f, len(ident), len(composites),
                        [[composites[j][i] for j in range(len(composites))]
                         for i in range(len(ident))])
        sol = solve(system, ident)
        if sol is not None:
            return phi, from_m.from_coords(sol)
    return None


def summand_indices(m: Representation, candidates,
                    allowed=None) -> list[int] | None:
    """Indices (with multiplicity, sorted) splitting m into candidates drawn
    from the allowed positions, or None when no such decomposition exists.

    Peeling is exact by Krull-Schmidt: a module in the additive closure of
    the allowed candidates always has one of them as a summand, and every
    peel strictly drops the dimension. The candidates must be pairwise
    non-isomorphic indecomposables.
    """
    positions = list(allowed) if allowed is not None else range(len(candidates))
    out: list[int] = []
    rest = m
    while rest.total_dim:
        for i in positions:
            x = candidates[i]
            if any(x.dims[v] > rest.dims[v] for v in x.dims):
                continue
            found = find_split_embedding(x, rest)
            if found is None:
                continue
            phi, psi = found
            rest, _ = sub_representation(rest, psi.then(phi).kernel())
            out.append(i)
            break
        else:
            return None
    return sorted(out)


def _find_nontrivial_idempotent(end: HomSpace) -> Morphism | None:
    p = end.source.field.p
    ident = identity_morphism(end.source)
    for coeffs in itertools.product(range(p), repeat=end.dim):
        if all(c == 0 for c in coeffs):
            continue
        e = end.from_coords(coeffs)
        if not e.then(e).add(e.scale(end.source.field.neg(end.source.field.one()))).is_zero():
            continue
        if e.is_zero():
            continue
        if e.add(ident.scale(end.source.field.neg(end.source.field.one()))).is_zero():
            continue
        return e
    return None


def end_residue_dim(m: Representation) -> int:
    """dim of End(m)/rad over GF(p) for an indecomposable m, by unit counting.

    In a local algebra the non-units are exactly the radical, so the unit
    count is p^d - p^r and the residue field has dimension d - r.
    """
    if not isinstance(m.field, PrimeField):
        raise InputError("end_residue_dim runs over GF(p)")
    end = hom_space(m, m)
    d = end.dim
    if d > _END_GUARD:
        raise EndTooLarge(f"End has dimension {d} > {_END_GUARD}")
    p = m.field.p
    nonunits = 0
    for coeffs in itertools.product(range(p), repeat=d):
        if not end.from_coords(coeffs).is_isomorphism():
            nonunits += 1
    r = 0
    while p ** r < nonunits:
        r += 1
    if p ** r != nonunits:
        raise InternalInvariantError("non-units of a local algebra must be a subspace")
    return d - r


def assert_absolutely_indecomposable(m: Representation):
    residue = end_residue_dim(m)
    if residue != 1:
        raise EndResidueTooLarge(
            f"End residue has dimension {residue} over {m.field!r}; "
            "the module may decompose over an extension field")


def enumerate_submodules(m: Representation) -> list[Submodule]:
    """All submodules over GF(p): products of vertex subspaces, stability-filtered."""
    if not isinstance(m.field, PrimeField):
        raise InputError("submodule enumeration runs over GF(p)")
    q = m.algebra.quiver
    per_vertex = {v: all_subspaces(m.field, m.dims[v]) for v in q.vertices}
    count = 1
    for v in q.vertices:
        count *= len(per_vertex[v])
        if count > _SUBMODULE_GUARD:
            raise SubmoduleEnumerationTooLarge(
                f"subspace tuple count exceeds {_SUBMODULE_GUARD}")
    out = []
    verts = list(q.vertices)
    for combo in itertools.product(*(per_vertex[v] for v in verts)):
        spaces = dict(zip(verts, combo))
        stable = True
        for a in q.arrows:
            tgt = spaces[a.target]
            for vec in spaces[a.source].basis:
                if not tgt.contains(m.maps[a.name].apply(vec)):
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.append(Submodule(m, spaces, check=False))
    return out


def all_subspaces(field: PrimeField, n: int) -> list[Subspace]:
    """Every subspace of GF(p)^n, via reduced echelon bases."""
    p = field.p
    out = [Subspace.zero(field, n)]
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_slots = []
            for i, piv in enumerate(pivots):
                for j in range(piv + 1, n):
                    if j not in pivots:
                        free_slots.append((i, j))
            for values in itertools.product(range(p), repeat=len(free_slots)):
                rows = [[field.zero()] * n for _ in range(k)]
                for i, piv in enumerate(pivots):
                    rows[i][piv] = field.one()
                for (i, j), val in zip(free_slots, values):
                    rows[i][j] = field.from_int(val)
                out.append(Subspace(field, n, rows))
    return out


def _top_generators(m: Representation) -> list[tuple[str, tuple]]:
    """Deterministic lifts of a basis of the top: standard vectors off the radical pivots."""
    r = radical(m)
    gens = []
    for v in m.algebra.quiver.vertices:
        pivots = set(r.spaces[v].pivots)
        for j in range(m.dims[v]):
            if j not in pivots:
                vec = [m.field.zero()] * m.dims[v]
                vec[j] = m.field.one()
                gens.append((v, tuple(vec)))
    return gens


def projective_cover(m: Representation) -> tuple[Representation, Morphism, list[str]]:
    """Minimal projective cover P -> m built from top lifts.

    Returns the cover, the covering morphism, and the list of top vertices
    (one per projective summand, in order).
    """
    gens = _top_generators(m)
    if not gens:
        z = zero_representation(m.algebra, m.field)
        return z, Morphism(z, m, {}), []
    summands = [projective_at(m.algebra, v, m.field) for v, _ in gens]
    cover, offsets = direct_sum(summands)
    q = m.algebra.quiver
    f = m.field
    blocks = {v: [[f.zero()] * cover.dims[v] for _ in range(m.dims[v])]
              for v in q.vertices}
    for (gen_vertex, gen_vec), summand, off in zip(gens, summands, offsets):
        paths = m.algebra.paths_from(gen_vertex)
        by_vertex: dict[str, list[Path]] = {v: [] for v in q.vertices}
        for pth in paths:
            by_vertex[pth.target(q)].append(pth)
        for v in q.vertices:
            for local_idx, pth in enumerate(by_vertex[v]):
                image = m.path_action(pth).apply(gen_vec)
                col = off[v] + local_idx
                for i in range(m.dims[v]):
                    blocks[v][i][col] = image[i]
    phi = Morphism(cover, m, {v: Matrix(f, m.dims[v], cover.dims[v], blocks[v])
                              for v in q.vertices})
    if not phi.is_surjective():
        raise InternalInvariantError("projective cover failed to be surjective")
    return cover, phi, [v for v, _ in gens]


def _opposite_algebra(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    q = algebra.quiver
    op_arrows = [(a.name, a.target, a.source) for a in q.arrows]
    op_rels = [tuple(reversed(r)) for r in algebra.relations]
    return validate_admissible(Quiver(q.vertices, op_arrows), op_rels,
                               name=algebra.name + "^op")


def ar_translate(m: Representation) -> Representation:
    """The Auslander-Reiten translate via the transpose of a minimal presentation.

    Takes a minimal projective presentation P1 -> P0 -> m, rewrites the map in
    path coordinates, applies the module-valued dual into projectives over the
    opposite algebra, and dualises the cokernel back. Projectives land on zero.
    """
    algebra, f = m.algebra, m.field
    q = algebra.quiver
    if m.is_zero():
        return zero_representation(algebra, f)
    p0, cover0, tops0 = projective_cover(m)
    kernel_sub = cover0.kernel()
    k_rep, k_incl = sub_representation(p0, kernel_sub)
    p1, cover1, tops1 = projective_cover(k_rep)
    presentation = cover1.then(k_incl)  # P1 -> P0

    op = _opposite_algebra(algebra)
    # Path coefficients of each component P_{u_j} -> P_{v_i}.
    p0_layout = _projective_layout(algebra, tops0)
    coefficients: dict[tuple[int, int], list[tuple[Path, object]]] = {}
    for j, u in enumerate(tops1):
        gen_image = _generator_image(p1, presentation, tops1, j)
        # gen_image is a vector in P0 at vertex u; read off path coordinates.
        for (i, pth), coeff in _read_path_coords(p0_layout, u, gen_image, f):
            coefficients.setdefault((i, j), []).append((pth, coeff))

    op_sources = [projective_at(op, v, f) for v in tops0]
    op_targets = [projective_at(op, u, f) for u in tops1]
    if op_targets:
        target_rep, target_off = direct_sum(op_targets)
    else:
        target_rep, target_off = zero_representation(op, f), []
    if op_sources:
        source_rep, source_off = direct_sum(op_sources)
    else:
        source_rep, source_off = zero_representation(op, f), []

    blocks = {v: [[f.zero()] * source_rep.dims[v] for _ in range(target_rep.dims[v])]
              for v in q.vertices}
    for (i, j), parts in coefficients.items():
        for pth, coeff in parts:
            _add_left_multiplication(blocks, op, f, tops0[i], source_off[i],
                                     tops1[j], target_off[j], pth, coeff)
    dual_map = Morphism(source_rep, target_rep,
                        {v: Matrix(f, target_rep.dims[v], source_rep.dims[v], blocks[v])
                         for v in q.vertices})
    coker_rep, _ = quotient_by(target_rep, dual_map.image())
    return _dualize(coker_rep, algebra)


def _projective_layout(algebra, tops):
    q = algebra.quiver
    layout = []
    for i, v in enumerate(tops):
        by_vertex: dict[str, list[Path]] = {w: [] for w in q.vertices}
        for pth in algebra.paths_from(v):
            by_vertex[pth.target(q)].append(pth)
        layout.append(by_vertex)
    return layout


def _generator_image(p1, presentation, tops1, j) -> tuple[str, tuple]:
    """Image in P0 of the j-th generator of P1 (lives at vertex tops1[j])."""
    u = tops1[j]
    # Rebuild offsets the same way direct_sum laid the summands out; the
    # generator is the trivial path, always local index 0 at the top vertex.
    offsets = []
    dims = {v: 0 for v in p1.algebra.quiver.vertices}
    for k, vtx in enumerate(tops1):
        offsets.append(dict(dims))
        for pth in p1.algebra.paths_from(vtx):
            dims[pth.target(p1.algebra.quiver)] += 1
    col = offsets[j][u]
    vec = [p1.field.zero()] * p1.dims[u]
    vec[col] = p1.field.one()
    return u, presentation.block(u).apply(vec)


def _read_path_coords(layout, u, gen_image, f):
    vertex, vec = gen_image
    pos = 0
    out = []
    for i, by_vertex in enumerate(layout):
        for pth in by_vertex[vertex]:
            coeff = vec[pos]
            if not f.is_zero(coeff):
                out.append(((i, pth), coeff))
            pos += 1
    if pos != len(vec):
        raise InternalInvariantError("projective layout out of sync")
    return out


def _add_left_multiplication(blocks, op, f, source_vertex, source_offsets,
                             target_vertex, target_offsets, pth: Path, coeff):
    """Add coeff * (reversed-path left multiplication) to the big block matrix.

    A path between two top vertices reverses into an opposite-algebra path
    running the other way; left multiplication prepends it to every basis path
    of the source projective, mapping into the target projective.
    """
    q = op.quiver
    rev_word = tuple(reversed(pth.arrows))
    by_vertex_src: dict[str, list[Path]] = {w: [] for w in q.vertices}
    for p2 in op.paths_from(source_vertex):
        by_vertex_src[p2.target(q)].append(p2)
    by_vertex_tgt: dict[str, list[Path]] = {w: [] for w in q.vertices}
    for p2 in op.paths_from(target_vertex):
        by_vertex_tgt[p2.target(q)].append(p2)
    for w in q.vertices:
        for src_idx, p2 in enumerate(by_vertex_src[w]):
            word = rev_word + p2.arrows
            if op.path_in_ideal(word):
                continue
            longer = Path(target_vertex, word)
            tgt_idx = None
            for k, cand in enumerate(by_vertex_tgt[w]):
                if cand == longer:
                    tgt_idx = k
                    break
            if tgt_idx is None:
                raise InternalInvariantError("left multiplication left the path basis")
            row = target_offsets[w] + tgt_idx
            col = source_offsets[w] + src_idx
            blocks[w][row][col] = f.add(blocks[w][row][col], coeff)


def _dualize(n: Representation, original: BoundQuiverAlgebra) -> Representation:
    """From a representation of the opposite algebra back to the original, by transpose."""
    f = n.field
    maps = {}
    for a in original.quiver.arrows:
        maps[a.name] = n.maps[a.name].transpose()
    return Representation(original, f, n.dims, maps, check=True)


def tau_rigid(m: Representation) -> bool:
    """Hom(m, tau m) = 0; for an indecomposable this is the torsion-class test."""
    t = ar_translate(m)
    if t.is_zero():
        return True
    return hom_space(m, t).dim == 0
