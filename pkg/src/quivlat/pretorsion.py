"""Pretorsion theories of a module category, decided over a finite catalogue.

A bitmask over the catalogue stands for the additive class its members span.
The two lattices are the families of quotient-closed (pretorsion) and
submodule-closed (pretorsion-free) classes ordered by inclusion. A pretorsion
theory is a pair (torsion part, free part) whose trivial objects are the
intersection, such that every morphism from the torsion side to the free side
factors through a trivial object, and every module sits in a canonical short
sequence torsion part -> module -> free part that is exact up to trivial
objects. Deciding a pair runs cheap sufficient routes first and falls back to
the direct verification:

  full_side   one side is the whole category
  cond1       both sides are extension-closed and the left perpendicular of
              the free side lies inside the torsion side
  cond3       the two sides together additively generate the whole category
  full_check  hom triviality plus both universal properties of the canonical
              sequence, tested against every indecomposable

Pairs failing the perpendicularity screen (right perpendicular of the torsion
side inside the free side and dually), which is necessary, are rejected
before the full check. Universal properties only need indecomposable test
objects: hom spaces and trivial morphisms split over direct sums of the test
object, so the condition for a sum follows from its summands.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import IndecCatalog
from .errors import (HypothesisNotMet, InternalInvariantError, NotCogenClosed,
                     NotGenClosed, PreorderNotAntisymmetric)
from .lattice import (FiniteLattice, Poset, generate_from_closure,
                      lattice_isomorphic, order_ideal_lattice)
from .linalg import GF, Matrix, PrimeField, Subspace, kernel_basis
from .modules import (Morphism, Representation, decompose, direct_sum,
                      enumerate_submodules, full_submodule, hom_space,
                      quotient_by, sub_representation, summand_indices,
                      zero_submodule)

# Subset-indexed closure tables are only built when 2^n stays reasonable;
# larger catalogues fall back to per-call trace and reject computations.
_TABLE_LIMIT = 13


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _closure_tables(catalog: IndecCatalog) -> tuple[list[int], list[int]]:
    """Gen- and Cogen-closures of every index subset, as bitmask tables.

    Walks the subset tree so that each step extends the parent's carried
    trace (union of images) or reject (intersection of kernels) by a single
    catalogue member; an entry turns into a closure bit once the trace is
    full or the reject vanishes, and is then no longer carried.
    """
    cached = getattr(catalog, "_closure_table_cache", None)
    if cached is not None:
        return cached
    n = len(catalog)
    size = 1 << n
    gen = [0] * size
    cog = [0] * size
    traces: list = [None] * size
    rejects: list = [None] * size
    traces[0] = [zero_submodule(m) for m in catalog.modules]
    rejects[0] = [full_submodule(m) for m in catalog.modules]
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        parent = mask ^ (1 << low)
        tr_parent, rj_parent = traces[parent], rejects[parent]
        tr: list = [None] * n
        rj: list = [None] * n
        gbits = gen[parent]
        cbits = cog[parent]
        for j in range(n):
            if not gbits >> j & 1:
                s = tr_parent[j].add(catalog.pair_trace(low, j))
                if s.is_full():
                    gbits |= 1 << j
                else:
                    tr[j] = s
            if not cbits >> j & 1:
                s = rj_parent[j].intersect(catalog.pair_reject(low, j))
                if s.is_zero():
                    cbits |= 1 << j
                else:
                    rj[j] = s
        gen[mask], cog[mask] = gbits, cbits
        traces[mask], rejects[mask] = tr, rj
    catalog._closure_table_cache = (gen, cog)
    return catalog._closure_table_cache


def gen_closure(catalog: IndecCatalog, mask: int) -> int:
    """Indices of catalogue members that are quotients of finite sums from
    the masked set.

    One trace pass lands on a closed set: a quotient of a sum of quotients
    of sums is again a quotient of a sum.
    """
    if len(catalog) <= _TABLE_LIMIT:
        return _closure_tables(catalog)[0][mask]
    out = mask
    ix = _bits(mask)
    for j in range(len(catalog)):
        if not out >> j & 1 and catalog.trace_of_set(ix, j).is_full():
            out |= 1 << j
    return out


def cogen_closure(catalog: IndecCatalog, mask: int) -> int:
    """Indices of catalogue members embedding into finite sums from the
    masked set; the dual of gen_closure."""
    if len(catalog) <= _TABLE_LIMIT:
        return _closure_tables(catalog)[1][mask]
    out = mask
    ix = _bits(mask)
    for j in range(len(catalog)):
        if not out >> j & 1 and catalog.reject_of_set(ix, j).is_zero():
            out |= 1 << j
    return out


def _lattice_memo(catalog: IndecCatalog) -> dict:
    memo = getattr(catalog, "_lattice_memo", None)
    if memo is None:
        memo = {}
        catalog._lattice_memo = memo
    return memo


def build_pretorsion_lattice(catalog: IndecCatalog) -> FiniteLattice:
    """All quotient-closed additive classes, ordered by inclusion."""
    memo = _lattice_memo(catalog)
    if "gen" not in memo:
        memo["gen"] = generate_from_closure(
            len(catalog), lambda m: gen_closure(catalog, m))
    return memo["gen"]


def build_pretorsionfree_lattice(catalog: IndecCatalog) -> FiniteLattice:
    """All submodule-closed additive classes, ordered by inclusion."""
    memo = _lattice_memo(catalog)
    if "cogen" not in memo:
        memo["cogen"] = generate_from_closure(
            len(catalog), lambda m: cogen_closure(catalog, m))
    return memo["cogen"]


def _twin_index(twin: IndecCatalog, piece: Representation) -> int:
    ix = twin.index_of_isomorphic(piece)
    if ix is None:
        raise InternalInvariantError("a subquotient escaped the catalogue")
    return ix


def _ext_pairs(catalog: IndecCatalog):
    """Per catalogue index, the distinct pairs (submodule summand indices,
    quotient summand indices) over all proper nonzero submodules.

    Indecomposable middle terms suffice for extension-closure tests: if every
    extension with indecomposable middle stays inside a class, summand
    induction extends that to arbitrary middles. Decompositions need a finite
    field, so a catalogue over the rationals is read over GF(2); its matrices
    are integral, making the cast faithful for these finite catalogues.
    """
    cached = getattr(catalog, "_ext_pair_cache", None)
    if cached is not None:
        return cached
    twin = catalog if isinstance(catalog.field, PrimeField) \
        else catalog.cast(GF(2))
    table = []
    for rep in twin.modules:
        pairs = set()
        for s in enumerate_submodules(rep):
            if s.is_zero() or s.is_full():
                continue
            sub_rep, _ = sub_representation(rep, s)
            quot_rep, _ = quotient_by(rep, s)
            pairs.add((frozenset(_twin_index(twin, p) for p in decompose(sub_rep)),
                       frozenset(_twin_index(twin, p) for p in decompose(quot_rep))))
        table.append(tuple(sorted(pairs,
                                  key=lambda pr: (sorted(pr[0]), sorted(pr[1])))))
    catalog._ext_pair_cache = tuple(table)
    return catalog._ext_pair_cache


def is_extension_closed(catalog: IndecCatalog, mask: int
                        ) -> tuple[bool, tuple | None]:
    """Whether extensions of masked members by masked members stay in the
    mask; on failure also a witness (middle, submodule part, quotient part)."""
    pairs = _ext_pairs(catalog)
    for e in range(len(catalog)):
        if mask >> e & 1:
            continue
        for subs, quots in pairs[e]:
            if all(mask >> i & 1 for i in subs) \
                    and all(mask >> i & 1 for i in quots):
                return False, (e, tuple(sorted(subs)), tuple(sorted(quots)))
    return True, None


def build_torsion_lattice(catalog: IndecCatalog) -> FiniteLattice:
    """The extension-closed members of the pretorsion lattice.

    Meets agree with the pretorsion lattice; the join of two torsion classes
    is the least extension-closed element above their union, found among the
    upper bounds inside this family.
    """
    memo = _lattice_memo(catalog)
    if "tors" not in memo:
        pre = build_pretorsion_lattice(catalog)
        memo["tors"] = FiniteLattice(
            len(catalog),
            [m for m in pre.elements if is_extension_closed(catalog, m)[0]])
    return memo["tors"]


def z_trivial_subspace(catalog: IndecCatalog, i: int, j: int,
                       z_mask: int) -> Subspace:
    """Coordinates, in the hom space from member i to member j, of the maps
    factoring through the additive closure of the masked trivial members.

    The span of basis composites through single trivial members is the whole
    trivial part: a sum of such composites assembles into one factorisation
    through a direct sum, and any factorisation decomposes back.
    """
    hom = catalog.pair_hom(i, j)
    gens = []
    for z in _bits(z_mask):
        for b in catalog.pair_hom(i, z).basis:
            for c in catalog.pair_hom(z, j).basis:
                gens.append(b.then(c))
    return hom.subspace_of_coords(gens)


def _triv_subspace(x: Representation, y: Representation, z_reps,
                   hom_xy) -> Subspace:
    """Like z_trivial_subspace, for modules that are not catalogue members."""
    gens = []
    for z in z_reps:
        for b in hom_space(x, z).basis:
            for c in hom_space(z, y).basis:
                gens.append(b.then(c))
    return hom_xy.subspace_of_coords(gens)


def _pullback_of_subspace(field, cols, sub: Subspace, ambient: int) -> Subspace:
    """{c : sum_k c_k cols[k] lies in sub}, with cols in sub's ambient space."""
    rows = sub.ambient
    if rows == 0:
        return Subspace.full(field, ambient)
    zb = sub.basis
    data = [[cols[k][r] for k in range(ambient)]
            + [field.neg(zb[j][r]) for j in range(len(zb))]
            for r in range(rows)]
    kern = kernel_basis(Matrix(field, rows, ambient + len(zb), data))
    return Subspace(field, ambient, [vec[:ambient] for vec in kern])


def _cokernel_property_ok(m, incl, quot, t_rep, f_rep, y, z_reps) -> bool:
    """Maps out of m killing the torsion part up to triviality are exactly
    those factoring over the quotient; uniqueness is automatic as the
    quotient map is epi."""
    hom_my = hom_space(m, y)
    if hom_my.dim == 0:
        return True
    hom_ty = hom_space(t_rep, y)
    if hom_ty.dim == 0:
        admissible = Subspace.full(m.field, hom_my.dim)
    else:
        triv = _triv_subspace(t_rep, y, z_reps, hom_ty)
        cols = [hom_ty.coords(incl.then(g)) for g in hom_my.basis]
        admissible = _pullback_of_subspace(m.field, cols, triv, hom_my.dim)
    factored = hom_my.subspace_of_coords(
        [quot.then(h) for h in hom_space(f_rep, y).basis])
    return admissible == factored


def _kernel_property_ok(m, incl, quot, t_rep, f_rep, y, z_reps) -> bool:
    """Maps into m with trivial composite to the free quotient are exactly
    those landing in the torsion part; uniqueness is automatic as the
    inclusion is mono."""
    hom_ym = hom_space(y, m)
    if hom_ym.dim == 0:
        return True
    hom_yf = hom_space(y, f_rep)
    if hom_yf.dim == 0:
        admissible = Subspace.full(m.field, hom_ym.dim)
    else:
        triv = _triv_subspace(y, f_rep, z_reps, hom_yf)
        cols = [hom_yf.coords(lam.then(quot)) for lam in hom_ym.basis]
        admissible = _pullback_of_subspace(m.field, cols, triv, hom_ym.dim)
    factored = hom_ym.subspace_of_coords(
        [h.then(incl) for h in hom_space(y, t_rep).basis])
    return admissible == factored


def _full_check(catalog: IndecCatalog, t_mask: int, f_mask: int):
    """Direct verification; the per-member sequence summands on success,
    None on failure.

    The candidate sequence is always trace of the torsion side -> module ->
    module over reject of the free side; when any short sequence exact up to
    trivial objects exists, this canonical one works.
    """
    z_mask = t_mask & f_mask
    z_reps = [catalog.modules[k] for k in _bits(z_mask)]
    for i in _bits(t_mask):
        for j in _bits(f_mask):
            hom = catalog.pair_hom(i, j)
            if hom.dim and z_trivial_subspace(catalog, i, j, z_mask).dim < hom.dim:
                return None
    t_ix, f_ix = _bits(t_mask), _bits(f_mask)
    sequences = {}
    for m_ix, m in enumerate(catalog.modules):
        t_rep, incl = sub_representation(m, catalog.trace_of_set(t_ix, m_ix))
        t_parts = summand_indices(t_rep, catalog.modules, allowed=t_ix)
        if t_parts is None:
            return None
        f_rep, quot = quotient_by(m, catalog.reject_of_set(f_ix, m_ix))
        f_parts = summand_indices(f_rep, catalog.modules, allowed=f_ix)
        if f_parts is None:
            return None
        comp = incl.then(quot)
        hom_tf = hom_space(t_rep, f_rep)
        if hom_tf.dim and not _triv_subspace(
                t_rep, f_rep, z_reps, hom_tf).contains(hom_tf.coords(comp)):
            return None
        for y in catalog.modules:
            if not _cokernel_property_ok(m, incl, quot, t_rep, f_rep, y, z_reps):
                return None
            if not _kernel_property_ok(m, incl, quot, t_rep, f_rep, y, z_reps):
                return None
        sequences[m_ix] = (tuple(t_parts), tuple(f_parts))
    return sequences


def _candidate_sequences(catalog: IndecCatalog, t_mask: int, f_mask: int):
    """Summand indices of the canonical sequence of every member, for pairs
    already known to be theories; a missing decomposition is a bug."""
    t_ix, f_ix = _bits(t_mask), _bits(f_mask)
    sequences = {}
    for m_ix, m in enumerate(catalog.modules):
        t_rep, _ = sub_representation(m, catalog.trace_of_set(t_ix, m_ix))
        t_parts = summand_indices(t_rep, catalog.modules, allowed=t_ix)
        f_rep, _ = quotient_by(m, catalog.reject_of_set(f_ix, m_ix))
        f_parts = summand_indices(f_rep, catalog.modules, allowed=f_ix)
        if t_parts is None or f_parts is None:
            raise InternalInvariantError(
                "a verified theory lost its canonical sequence")
        sequences[m_ix] = (tuple(t_parts), tuple(f_parts))
    return sequences


def _right_perp(catalog: IndecCatalog, mask: int) -> int:
    """Indices receiving no nonzero map from any masked member."""
    out = 0
    ix = _bits(mask)
    for j in range(len(catalog)):
        if all(catalog.pair_hom(i, j).dim == 0 for i in ix):
            out |= 1 << j
    return out


def _left_perp(catalog: IndecCatalog, mask: int) -> int:
    """Indices sending no nonzero map into any masked member."""
    out = 0
    ix = _bits(mask)
    for j in range(len(catalog)):
        if all(catalog.pair_hom(j, i).dim == 0 for i in ix):
            out |= 1 << j
    return out


@dataclass(frozen=True, eq=True)
class VerifiedPretorsionTheory:
    """A verified pair: bitmasks of the two sides, the route that verified
    it, and per catalogue index the summand indices of the torsion part and
    free quotient of its canonical sequence."""

    torsion_mask: int
    free_mask: int
    route: str
    sequences: dict

    @property
    def trivial_mask(self) -> int:
        return self.torsion_mask & self.free_mask


def is_pretorsion_theory(catalog: IndecCatalog, t_mask: int, f_mask: int,
                         *, full: bool = False
                         ) -> VerifiedPretorsionTheory | None:
    """Decide whether the masked pair forms a pretorsion theory.

    Routes run in order full_side, cond1, cond3; remaining pairs failing the
    necessary perpendicularity screen are rejected, the rest get the direct
    verification. With full=True the shortcuts are skipped and the route is
    reported as full_check regardless of which shortcut would have fired.
    """
    if gen_closure(catalog, t_mask) != t_mask:
        raise NotGenClosed(
            f"torsion candidate {t_mask:#x} is not quotient-closed")
    if cogen_closure(catalog, f_mask) != f_mask:
        raise NotCogenClosed(
            f"free candidate {f_mask:#x} is not submodule-closed")
    everything = (1 << len(catalog)) - 1
    route = None
    sequences = None
    if not full:
        if t_mask == everything or f_mask == everything:
            route = "full_side"
        elif (is_extension_closed(catalog, t_mask)[0]
                and is_extension_closed(catalog, f_mask)[0]
                and _left_perp(catalog, f_mask) | t_mask == t_mask):
            route = "cond1"
        elif t_mask | f_mask == everything:
            route = "cond3"
        elif not (_right_perp(catalog, t_mask) | f_mask == f_mask
                  and _left_perp(catalog, f_mask) | t_mask == t_mask):
            return None
    if route is None:
        sequences = _full_check(catalog, t_mask, f_mask)
        if sequences is None:
            return None
        route = "full_check"
    if sequences is None:
        sequences = _candidate_sequences(catalog, t_mask, f_mask)
    return VerifiedPretorsionTheory(t_mask, f_mask, route, sequences)


@dataclass(frozen=True)
class PretorsionCensus:
    """Every pretorsion theory over a catalogue, with the grid size that was
    searched and whether each verdict was re-verified directly."""

    theories: tuple
    pairs_total: int
    audited: bool

    def route_counts(self) -> dict:
        out: dict[str, int] = {}
        for theory in self.theories:
            out[theory.route] = out.get(theory.route, 0) + 1
        return out


def enumerate_pretorsion_theories(catalog: IndecCatalog,
                                  audit: bool = False) -> PretorsionCensus:
    """All pretorsion theories, iterating the two lattices in element order.

    audit=True re-verifies every grid pair with the direct check and raises
    when a shortcut verdict disagrees, so a passing audit means the fast
    routes and the definition agree on the whole grid.
    """
    lt = build_pretorsion_lattice(catalog)
    ltf = build_pretorsionfree_lattice(catalog)
    found = []
    for t_mask in lt.elements:
        for f_mask in ltf.elements:
            verdict = is_pretorsion_theory(catalog, t_mask, f_mask)
            if audit:
                direct = is_pretorsion_theory(catalog, t_mask, f_mask,
                                              full=True)
                if (verdict is None) != (direct is None):
                    raise InternalInvariantError(
                        "shortcut and direct verification disagree on "
                        f"({t_mask:#x}, {f_mask:#x})")
            if verdict is not None:
                found.append(verdict)
    return PretorsionCensus(tuple(found), len(lt) * len(ltf), audit)


@dataclass(frozen=True)
class JoinIrreducibleReport:
    """How the join-irreducibles of a lattice of classes sit over the
    catalogue: the closure of each single member, which member generates
    each join-irreducible, and whether that is a perfect matching."""

    singleton_closures: tuple
    ji_masks: tuple
    generator_of: tuple
    one_per_member: bool


def join_irreducible_report(catalog: IndecCatalog, lattice: FiniteLattice,
                            closure=None) -> JoinIrreducibleReport:
    close = closure or (lambda m: gen_closure(catalog, m))
    n = len(catalog)
    singles = tuple(close(1 << j) for j in range(n))
    ji_masks = tuple(lattice.elements[i] for i in lattice.join_irreducibles())
    generator_of = tuple(
        next((j for j in range(n) if singles[j] == mask), None)
        for mask in ji_masks)
    one_per_member = (len(set(singles)) == n == len(ji_masks)
                      and set(singles) == set(ji_masks))
    return JoinIrreducibleReport(singles, ji_masks, generator_of,
                                 one_per_member)


@dataclass(frozen=True)
class ClosureIdentification:
    """A distributive pretorsion lattice identified with the down-sets of
    the join-irreducible torsion classes under inclusion."""

    ji_masks: tuple
    assignment: tuple
    isomorphic: bool


def distributive_closure_identification(
        catalog: IndecCatalog) -> ClosureIdentification:
    """Map each pretorsion class to the set of join-irreducible torsion
    classes it contains and verify that this is a lattice isomorphism onto
    the down-sets; needs a distributive pretorsion lattice."""
    pre = build_pretorsion_lattice(catalog)
    if not pre.is_distributive():
        raise HypothesisNotMet("the pretorsion lattice is not distributive")
    tors = build_torsion_lattice(catalog)
    ji_masks = [tors.elements[i] for i in tors.join_irreducibles()]
    k = len(ji_masks)
    poset = Poset(k, [(a, b) for a in range(k) for b in range(k)
                      if a != b and ji_masks[a] | ji_masks[b] == ji_masks[b]])
    ideals = order_ideal_lattice(poset)
    assignment = []
    image = set()
    ok = True
    for t in pre.elements:
        down = 0
        for idx in range(k):
            if ji_masks[idx] & t == ji_masks[idx]:
                down |= 1 << idx
        assignment.append((t, down))
        ok = ok and down in ideals.index
        image.add(down)
    ok = ok and len(image) == len(pre.elements) == len(ideals.elements)
    if ok:
        # Containment of down-sets must force containment of classes; the
        # other direction holds by construction.
        for t1, d1 in assignment:
            for t2, d2 in assignment:
                if d1 | d2 == d2 and t1 | t2 != t2:
                    ok = False
    return ClosureIdentification(tuple(ji_masks), tuple(assignment), ok)


@dataclass(frozen=True)
class EpiRealization:
    """The generation order on the catalogue and its down-set lattice, with
    the verdict of comparing that lattice against the pretorsion lattice."""

    poset: Poset
    ideal_lattice: FiniteLattice
    isomorphic: bool


def epi_poset_realization(catalog: IndecCatalog) -> EpiRealization:
    """Realise a distributive pretorsion lattice as the down-sets of the
    order 'is a quotient of finitely many copies of' on the catalogue.

    Each relation is decided by trace fullness and cross-checked by stacking
    a hom basis into one morphism, whose image is exactly the trace.
    """
    pre = build_pretorsion_lattice(catalog)
    if not pre.is_distributive():
        raise HypothesisNotMet("the pretorsion lattice is not distributive")
    n = len(catalog)
    rel = [[i == j or _generated_by_single(catalog, j, i) for j in range(n)]
           for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                raise PreorderNotAntisymmetric(
                    f"catalogue members {i} and {j} generate each other")
    poset = Poset(n, [(i, j) for i in range(n) for j in range(n)
                      if i != j and rel[i][j]])
    ideal_lat = order_ideal_lattice(poset)
    return EpiRealization(poset, ideal_lat, lattice_isomorphic(ideal_lat, pre))


def _generated_by_single(catalog: IndecCatalog, gen_ix: int,
                         target_ix: int) -> bool:
    """Whether the target is a quotient of copies of the generator: full
    trace, cross-checked by one stacked morphism."""
    full = catalog.pair_trace(gen_ix, target_ix).is_full()
    hom = catalog.pair_hom(gen_ix, target_ix)
    if hom.dim == 0:
        if full:
            raise InternalInvariantError("full trace without any morphisms")
        return False
    stacked, offsets = direct_sum([catalog.modules[gen_ix]] * hom.dim)
    target = catalog.modules[target_ix]
    f = target.field
    blocks = {}
    for v in target.algebra.quiver.vertices:
        mat = [[f.zero()] * stacked.dims[v] for _ in range(target.dims[v])]
        for copy, phi in enumerate(hom.basis):
            block = phi.blocks[v]
            for r in range(block.rows):
                for c in range(block.cols):
                    mat[r][offsets[copy][v] + c] = block.entry(r, c)
        blocks[v] = Matrix(f, target.dims[v], stacked.dims[v], mat)
    surjective = Morphism(stacked, target, blocks).is_surjective()
    if surjective != full:
        raise InternalInvariantError("stacked image disagrees with the trace")
    return full
