"""Quivers, monomial relations and the classification criteria.

A bound quiver algebra is described by a finite quiver together with a set of
monomial relations (paths of length >= 2). Relations compose left to right:
the sequence ``("a", "b")`` is the path that traverses ``a`` first, then
``b``. Admissibility (some power of every cycle falls in the ideal, so the
path algebra is finite dimensional) is certified by enumerating the surviving
path basis with an explicit cutoff.

The two classification predicates live here as pure quiver combinatorics:
``distributivity_criterion`` inspects local arrow configurations at each
vertex, ``lrd_criterion`` additionally demands loop-freeness and that every
rotation of every cycle lies in the ideal. Both report witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (ArrowInIdeal, InputError, NotAdmissible, NotStringAlgebra,
                     RelationNotAPath)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite quiver with named vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arrs.append(a)
            else:
                arrs.append(Arrow(str(a[0]), str(a[1]), str(a[2])))
        self.arrows = tuple(arrs)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise InputError(f"arrow {a.name} has an endpoint outside the vertex set")
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self._out = {v: tuple(a for a in self.arrows if a.source == v) for v in self.vertices}
        self._in = {v: tuple(a for a in self.arrows if a.target == v) for v in self.vertices}

    def arrows_from(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def arrows_into(self, v: str) -> tuple[Arrow, ...]:
        return self._in[v]

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def _check_relation(quiver: Quiver, rel) -> tuple[str, ...]:
    rel = tuple(str(x) for x in rel)
    if len(rel) < 2:
        raise ArrowInIdeal(f"relation {rel} has length < 2; the ideal would not be admissible")
    for name in rel:
        if name not in quiver.arrow_by_name:
            raise RelationNotAPath(f"relation {rel} uses unknown arrow {name!r}")
    for first, second in zip(rel, rel[1:]):
        if quiver.arrow_by_name[first].target != quiver.arrow_by_name[second].source:
            raise RelationNotAPath(
                f"relation {rel} does not compose: {first} ends at "
                f"{quiver.arrow_by_name[first].target}, {second} starts at "
                f"{quiver.arrow_by_name[second].source}")
    return rel


@dataclass(frozen=True)
class Path:
    """A path in the quiver: a start vertex plus a (possibly empty) arrow word."""

    source: str
    arrows: tuple[str, ...]

    def target(self, quiver: Quiver) -> str:
        if not self.arrows:
            return self.source
        return quiver.arrow_by_name[self.arrows[-1]].target

    def __len__(self):
        return len(self.arrows)


class BoundQuiverAlgebra:
    """A quiver with an admissible monomial ideal and its surviving path basis.

    Construct via :func:`validate_admissible`; direct construction skips the
    finiteness certificate.
    """

    def __init__(self, quiver: Quiver, relations, path_basis, name: str = ""):
        self.quiver = quiver
        self.relations = tuple(tuple(r) for r in relations)
        self.path_basis = tuple(path_basis)
        self.name = name
        self._rel_set = set(self.relations)
        self._max_rel = max((len(r) for r in self.relations), default=0)

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    def path_in_ideal(self, word) -> bool:
        """Whether an arrow word contains some relation as a contiguous subword."""
        word = tuple(word)
        if not self._rel_set:
            return False
        n = len(word)
        for length in range(2, min(self._max_rel, n) + 1):
            for i in range(n - length + 1):
                if word[i:i + length] in self._rel_set:
                    return True
        return False

    def paths_from(self, v: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == v]

    def paths_between(self, u: str, v: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == u and p.target(self.quiver) == v]

    def __repr__(self):
        label = self.name or "algebra"
        return f"BoundQuiverAlgebra({label}, dim {self.dimension})"


def validate_admissible(quiver: Quiver, relations, name: str = "") -> BoundQuiverAlgebra:
    """Validate relations and certify admissibility by computing the path basis.

    Paths are grown breadth first, pruning any word that picks up a relation
    as a contiguous subword. If a surviving path outlives the cutoff
    ``|relations| * max_relation_length * |arrows| + |arrows|`` the ideal
    cannot be admissible (some cycle survives) and :class:`NotAdmissible` is
    raised with the offending path.
    """
    rels = [_check_relation(quiver, r) for r in relations]
    max_rel = max((len(r) for r in rels), default=0)
    cutoff = len(rels) * max_rel * len(quiver.arrows) + len(quiver.arrows)
    rel_set = set(rels)

    def survives(word: tuple[str, ...]) -> bool:
        # Only suffixes ending at the freshly appended arrow can be new violations.
        for length in range(2, min(max_rel, len(word)) + 1):
            if word[-length:] in rel_set:
                return False
        return True

    basis: list[Path] = [Path(v, ()) for v in quiver.vertices]
    frontier = list(basis)
    while frontier:
        new_frontier = []
        for p in frontier:
            for a in quiver.arrows_from(p.target(quiver)):
                word = p.arrows + (a.name,)
                if not survives(word):
                    continue
                if len(word) > cutoff:
                    raise NotAdmissible(
                        f"path {'*'.join(word[:12])}... of length {len(word)} survives the "
                        f"ideal; relations do not kill every cycle", witness_path=word)
                new_frontier.append(Path(p.source, word))
        basis.extend(new_frontier)
        frontier = new_frontier

    vertex_index = {v: i for i, v in enumerate(quiver.vertices)}
    arrow_index = {a.name: i for i, a in enumerate(quiver.arrows)}
    basis.sort(key=lambda p: (len(p.arrows), vertex_index[p.source],
                              tuple(arrow_index[x] for x in p.arrows)))
    return BoundQuiverAlgebra(quiver, rels, basis, name=name)


def is_string_algebra(algebra: BoundQuiverAlgebra) -> tuple[bool, str | None]:
    """Decide the string-algebra conditions; returns (holds, witness).

    Conditions: every vertex has at most two arrows in and two out, and for
    each arrow ``a`` at most one arrow ``b`` with ``b`` then ``a`` surviving
    the ideal and at most one arrow ``c`` with ``a`` then ``c`` surviving.
    """
    q = algebra.quiver
    for v in q.vertices:
        if len(q.arrows_into(v)) > 2:
            return False, f"vertex {v} has {len(q.arrows_into(v))} arrows in"
        if len(q.arrows_from(v)) > 2:
            return False, f"vertex {v} has {len(q.arrows_from(v))} arrows out"
    for a in q.arrows:
        preds = [b.name for b in q.arrows_into(a.source)
                 if not algebra.path_in_ideal((b.name, a.name))]
        if len(preds) > 1:
            return False, (f"arrow {a.name} has two surviving predecessors "
                           f"{preds[0]} and {preds[1]}")
        succs = [c.name for c in q.arrows_from(a.target)
                 if not algebra.path_in_ideal((a.name, c.name))]
        if len(succs) > 1:
            return False, (f"arrow {a.name} has two surviving successors "
                           f"{succs[0]} and {succs[1]}")
    return True, None


@dataclass(frozen=True)
class Letter:
    """A signed arrow: the arrow traversed forwards (direct) or backwards."""

    arrow: str
    direct: bool

    def inverse(self) -> "Letter":
        return Letter(self.arrow, not self.direct)

    def source(self, quiver: Quiver) -> str:
        a = quiver.arrow_by_name[self.arrow]
        return a.source if self.direct else a.target

    def target(self, quiver: Quiver) -> str:
        a = quiver.arrow_by_name[self.arrow]
        return a.target if self.direct else a.source

    def __str__(self):
        return self.arrow if self.direct else self.arrow + "^-1"


@dataclass(frozen=True)
class Band:
    """A cyclic string all of whose powers are strings, not a proper power."""

    letters: tuple[Letter, ...]

    def __str__(self):
        return "*".join(str(l) for l in self.letters)


def _letter_key(quiver: Quiver, letter: Letter) -> tuple[int, int]:
    idx = {a.name: i for i, a in enumerate(quiver.arrows)}
    return (idx[letter.arrow], 0 if letter.direct else 1)


def _run_violates(algebra: BoundQuiverAlgebra, window: tuple[Letter, ...],
                  nxt: Letter) -> bool:
    """Forbidden-subpath check for the same-direction run ending at nxt."""
    run = [nxt]
    for letter in reversed(window):
        if letter.direct != nxt.direct:
            break
        run.append(letter)
    run.reverse()
    names = [l.arrow for l in run]
    if nxt.direct:
        word = tuple(names)
        rel_hit = any(word[-length:] in algebra._rel_set
                      for length in range(2, min(algebra._max_rel, len(word)) + 1))
    else:
        # An inverse run w spells the formal inverse of the path read backwards.
        word = tuple(reversed(names))
        rel_hit = any(word[:length] in algebra._rel_set
                      for length in range(2, min(algebra._max_rel, len(word)) + 1))
    return rel_hit


def walk_can_extend(algebra: BoundQuiverAlgebra, window: tuple[Letter, ...],
                    nxt: Letter) -> bool:
    q = algebra.quiver
    if window:
        last = window[-1]
        if last.target(q) != nxt.source(q):
            return False
        if nxt == last.inverse():
            return False
    return not _run_violates(algebra, window, nxt)


def find_band(algebra: BoundQuiverAlgebra) -> Band | None:
    """Search for a band; None certifies there is none.

    Valid walks form a shift automaton whose states are windows of the last
    ``max(1, max_relation_length - 1)`` letters; a directed cycle in the
    reachable automaton pumps arbitrarily long strings, which happens exactly
    when a band exists. The returned band is the primitive root of the cycle
    word, canonicalised over rotations and inversion.
    """
    ok, witness = is_string_algebra(algebra)
    if not ok:
        raise NotStringAlgebra(f"band search needs the string conditions: {witness}")
    q = algebra.quiver
    window_len = max(1, algebra._max_rel - 1)
    letters = sorted(
        (Letter(a.name, d) for a in q.arrows for d in (True, False)),
        key=lambda l: _letter_key(q, l))

    def successors(state: tuple[Letter, ...]):
        for nxt in letters:
            if walk_can_extend(algebra, state, nxt):
                yield (state + (nxt,))[-window_len:], nxt

    # Iterative DFS with tricolor marking; a back edge closes a pumping cycle.
    color: dict[tuple[Letter, ...], int] = {}
    parent: dict[tuple[Letter, ...], tuple[tuple[Letter, ...], Letter] | None] = {}
    for l0 in letters:
        start = (l0,)
        if start in color:
            continue
        stack = [(start, None)]
        parent[start] = None
        while stack:
            state, pending = stack.pop()
            if pending is None:
                if color.get(state) == 2:
                    continue
                color[state] = 1
                stack.append((state, "close"))
                for nstate, letter in successors(state):
                    if color.get(nstate) == 1:
                        cycle = _recover_cycle(parent, state, nstate, letter)
                        return _canonical_band(q, cycle)
                    if nstate not in color:
                        parent[nstate] = (state, letter)
                        stack.append((nstate, None))
            else:
                color[state] = 2
    return None


def _recover_cycle(parent, state, ancestor, closing_letter) -> list[Letter]:
    word = [closing_letter]
    cur = state
    while cur != ancestor:
        prev, letter = parent[cur]
        word.append(letter)
        cur = prev
    word.reverse()
    return word


def _canonical_band(quiver: Quiver, word: list[Letter]) -> Band:
    # Primitive root: smallest period dividing the length.
    n = len(word)
    for period in range(1, n + 1):
        if n % period == 0 and all(word[i] == word[i % period] for i in range(n)):
            word = word[:period]
            break
    candidates = []
    for base in (word, [l.inverse() for l in reversed(word)]):
        for shift in range(len(base)):
            rot = tuple(base[shift:] + base[:shift])
            candidates.append(rot)
    best = min(candidates, key=lambda w: tuple(_letter_key(quiver, l) for l in w))
    return Band(best)


_FAMILIES = {
    "i": "two arrows ending at one vertex",
    "ii": "three arrows leaving one vertex",
    "iii": "one arrow in, two arrows out, and no relation through the vertex",
}


@dataclass
class CriterionVerdict:
    holds: bool
    family: str | None = None
    vertex: str | None = None
    arrows: tuple[str, ...] = ()
    detail: str | None = None

    def witness(self) -> str | None:
        if self.holds:
            return None
        if self.detail:
            return self.detail
        return (f"family ({self.family}) at vertex {self.vertex}: "
                f"{_FAMILIES[self.family]} [{', '.join(self.arrows)}]")


def distributivity_criterion(algebra: BoundQuiverAlgebra) -> CriterionVerdict:
    """Vertex-local test for distributivity of the pretorsion class lattice.

    Fails on: (i) two arrows into one vertex, (ii) three arrows out of one
    vertex, (iii) exactly one arrow in and two out with neither composite
    through the vertex in the ideal. Loops count on both sides, so a bare
    loop (one in, one out) passes.
    """
    q = algebra.quiver
    for v in q.vertices:
        incoming = q.arrows_into(v)
        outgoing = q.arrows_from(v)
        if len(incoming) >= 2:
            return CriterionVerdict(False, "i", v, tuple(a.name for a in incoming[:2]))
        if len(outgoing) >= 3:
            return CriterionVerdict(False, "ii", v, tuple(a.name for a in outgoing[:3]))
        if len(incoming) == 1 and len(outgoing) == 2:
            enter = incoming[0]
            exits = tuple(outgoing)
            if not any(algebra.path_in_ideal((enter.name, e.name)) for e in exits):
                return CriterionVerdict(False, "iii", v,
                                        (enter.name,) + tuple(e.name for e in exits))
    return CriterionVerdict(True)


def _simple_cycles(quiver: Quiver) -> list[tuple[str, ...]]:
    """All simple directed cycles as arrow words, deduplicated up to rotation."""
    cycles: set[tuple[str, ...]] = set()
    arrow_index = {a.name: i for i, a in enumerate(quiver.arrows)}

    def dfs(start: str, current: str, word: list[str], seen: set[str]):
        for a in quiver.arrows_from(current):
            if a.target == start:
                cyc = tuple(word + [a.name])
                rotations = [cyc[i:] + cyc[:i] for i in range(len(cyc))]
                cycles.add(min(rotations, key=lambda w: tuple(arrow_index[x] for x in w)))
            elif a.target not in seen and a.target != start:
                dfs(start, a.target, word + [a.name], seen | {a.target})

    for v in quiver.vertices:
        dfs(v, v, [], {v})
    return sorted(cycles, key=lambda w: (len(w), tuple(arrow_index[x] for x in w)))


def lrd_criterion(algebra: BoundQuiverAlgebra) -> CriterionVerdict:
    """Distributivity plus loop-freeness plus every cycle rotation in the ideal.

    This is the quiver-level test for the lattice being distributive with
    every indecomposable a brick (locally representation directed case).
    """
    base = distributivity_criterion(algebra)
    if not base.holds:
        return CriterionVerdict(False, detail=f"not distributive: {base.witness()}")
    for a in algebra.quiver.arrows:
        if a.source == a.target:
            return CriterionVerdict(False, detail=f"loop {a.name} at vertex {a.source}")
    for cyc in _simple_cycles(algebra.quiver):
        for shift in range(len(cyc)):
            rotation = cyc[shift:] + cyc[:shift]
            if not algebra.path_in_ideal(rotation):
                return CriterionVerdict(
                    False, detail=f"cycle rotation {'*'.join(rotation)} survives the ideal")
    return CriterionVerdict(True)


def connected_components(algebra: BoundQuiverAlgebra) -> list[BoundQuiverAlgebra]:
    """Split into connected components (underlying undirected graph)."""
    q = algebra.quiver
    neighbors = {v: set() for v in q.vertices}
    for a in q.arrows:
        neighbors[a.source].add(a.target)
        neighbors[a.target].add(a.source)
    seen: set[str] = set()
    components = []
    for v in q.vertices:
        if v in seen:
            continue
        comp = {v}
        frontier = [v]
        while frontier:
            cur = frontier.pop()
            for w in neighbors[cur]:
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        verts = [u for u in q.vertices if u in comp]
        arrows = [a for a in q.arrows if a.source in comp]
        rels = [r for r in algebra.relations
                if q.arrow_by_name[r[0]].source in comp]
        sub = Quiver(verts, arrows)
        components.append(validate_admissible(sub, rels, name=f"{algebra.name}/{verts[0]}"))
    return components


@dataclass
class ClassificationReport:
    """Everything cmd_classify reports about one algebra."""

    name: str
    num_vertices: int
    num_arrows: int
    num_relations: int
    dimension: int
    string_algebra: bool
    string_witness: str | None
    band: str | None
    band_checked: bool
    distributive: CriterionVerdict
    lrd: CriterionVerdict
    num_components: int = 1


def classify(algebra: BoundQuiverAlgebra) -> ClassificationReport:
    """Run every quiver-level classification check on one algebra."""
    ok, witness = is_string_algebra(algebra)
    band = None
    if ok:
        found = find_band(algebra)
        band = str(found) if found is not None else None
    return ClassificationReport(
        name=algebra.name,
        num_vertices=len(algebra.quiver.vertices),
        num_arrows=len(algebra.quiver.arrows),
        num_relations=len(algebra.relations),
        dimension=algebra.dimension,
        string_algebra=ok,
        string_witness=witness,
        band=band,
        band_checked=ok,
        distributive=distributivity_criterion(algebra),
        lrd=lrd_criterion(algebra),
        num_components=len(connected_components(algebra)),
    )
