"""Finite lattices of index sets, generated by closure saturation.

Elements are bitmasks over a fixed universe of catalogue indices, ordered by
inclusion. A lattice is built from a closure operator: singleton closures are
saturated under pairwise unions-then-closure, which reaches every closed set
because each one is the closure of the union of its singletons. Meets are
plain intersections and are verified closed; joins need no closure function
afterwards since the least upper bound is the meet of all upper bounds.
"""

from __future__ import annotations

import itertools

from .errors import ClosureNotIdempotent, InputError, InternalInvariantError

_IDEAL_UNIVERSE_GUARD = 20


def _popcount(x: int) -> int:
    return bin(x).count("1")


class FiniteLattice:
    """A finite meet-closed family of bitmasks containing its top and bottom."""

    def __init__(self, universe_size: int, elements):
        self.universe_size = universe_size
        self.elements = tuple(sorted(set(elements), key=lambda m: (_popcount(m), m)))
        if not self.elements:
            raise InputError("a lattice needs at least one element")
        self.index = {m: i for i, m in enumerate(self.elements)}
        bottom = self.elements[0]
        top = 0
        for m in self.elements:
            bottom &= m
            top |= m
        if bottom not in self.index or top not in self.index:
            raise InternalInvariantError("lattice lost its top or bottom")
        self.bottom = bottom
        self.top = top
        self._covers_down: list[list[int]] | None = None

    def __len__(self):
        return len(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return a | b == b

    def meet(self, a: int, b: int) -> int:
        m = a & b
        if m not in self.index:
            raise InternalInvariantError("meet left the element family")
        return m

    def join(self, a: int, b: int) -> int:
        union = a | b
        out = self.top
        for m in self.elements:
            if union | m == m:
                out &= m
        if out not in self.index:
            raise InternalInvariantError("join left the element family")
        return out

    def lower_covers(self) -> list[list[int]]:
        """For each element index, the indices of the elements it covers."""
        if self._covers_down is None:
            down: list[list[int]] = []
            for i, b in enumerate(self.elements):
                below = [j for j, a in enumerate(self.elements)
                         if a != b and self.leq(a, b)]
                covers = [j for j in below
                          if not any(self.leq(self.elements[j], self.elements[k])
                                     and self.elements[k] != self.elements[j]
                                     for k in below)]
                down.append(covers)
            self._covers_down = down
        return self._covers_down

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Cover pairs (lower index, upper index), deterministic order."""
        return [(j, i) for i, covers in enumerate(self.lower_covers())
                for j in sorted(covers)]

    def join_irreducibles(self) -> list[int]:
        """Indices of elements with exactly one lower cover."""
        return [i for i, covers in enumerate(self.lower_covers()) if len(covers) == 1]

    def is_distributive(self) -> bool:
        """Whether the lattice is distributive, by counting down-sets of the
        join-irreducible poset.

        In any finite lattice an element is the join of the join-irreducibles
        below it, so sending an element to that down-set is injective and the
        lattice is distributive exactly when every down-set is hit. The count
        aborts as soon as it exceeds the lattice size, which keeps this linear
        in the size rather than cubic like the naive join-prime test.
        """
        ji = self.join_irreducibles()
        k = len(ji)
        below = []
        for a in range(k):
            mask = 0
            for b in range(k):
                if self.leq(self.elements[ji[b]], self.elements[ji[a]]):
                    mask |= 1 << b
            below.append(mask)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for a in range(k):
                    if s >> a & 1 or below[a] & ~s & ~(1 << a):
                        continue
                    grown = s | 1 << a
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
                        if len(seen) > len(self.elements):
                            return False
            frontier = nxt
        return len(seen) == len(self.elements)

    def is_semidistributive(self) -> bool:
        return self._semidistributive_joins() and self._semidistributive_meets()

    def _semidistributive_joins(self) -> bool:
        for a in self.elements:
            for b, c in itertools.combinations(self.elements, 2):
                if self.join(a, b) == self.join(a, c) and \
                        self.join(a, self.meet(b, c)) != self.join(a, b):
                    return False
        return True

    def _semidistributive_meets(self) -> bool:
        for a in self.elements:
            for b, c in itertools.combinations(self.elements, 2):
                if self.meet(a, b) == self.meet(a, c) and \
                        self.meet(a, self.join(b, c)) != self.meet(a, b):
                    return False
        return True

    def height(self) -> int:
        """Length of a longest chain from bottom to top."""
        order = sorted(range(len(self.elements)),
                       key=lambda i: _popcount(self.elements[i]))
        h = {self.index[self.bottom]: 0}
        covers = self.lower_covers()
        for i in order:
            if i not in h:
                h[i] = 1 + max(h[j] for j in covers[i])
        return h[self.index[self.top]]


def generate_from_closure(universe_size: int, closure) -> FiniteLattice:
    """Saturate singleton closures under join; validates the operator on the way.

    The closure is spot-checked for idempotence on the generators, and the
    resulting family is checked to be closed under intersections.
    """
    bottom = closure(0)
    if closure(bottom) != bottom:
        raise ClosureNotIdempotent("closure of the empty set is not closed")
    elements = {bottom}
    fresh = [bottom]
    for i in range(universe_size):
        c = closure(1 << i)
        if closure(c) != c:
            raise ClosureNotIdempotent(f"closure of singleton {i} is not closed")
        if c not in elements:
            elements.add(c)
            fresh.append(c)
    while fresh:
        nxt = []
        for a in fresh:
            for b in list(elements):
                u = a | b
                if u in elements:
                    continue
                c = closure(u)
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
        fresh = nxt
    for a, b in itertools.combinations(elements, 2):
        if a & b not in elements:
            raise InternalInvariantError("intersection of closed sets escaped the family")
    return FiniteLattice(universe_size, elements)


class Poset:
    """A finite poset on catalogue indices given by an explicit relation."""

    def __init__(self, size: int, leq_pairs):
        self.size = size
        self._leq = [[False] * size for _ in range(size)]
        for i in range(size):
            self._leq[i][i] = True
        for a, b in leq_pairs:
            self._leq[a][b] = True
        for i in range(size):
            for a in range(size):
                for b in range(size):
                    if self._leq[a][i] and self._leq[i][b]:
                        self._leq[a][b] = True
        for a in range(size):
            for b in range(a + 1, size):
                if self._leq[a][b] and self._leq[b][a]:
                    raise InternalInvariantError(
                        f"poset relation has a cycle through {a} and {b}")

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def hasse_edges(self) -> list[tuple[int, int]]:
        out = []
        for a in range(self.size):
            for b in range(self.size):
                if a == b or not self._leq[a][b]:
                    continue
                if any(i not in (a, b) and self._leq[a][i] and self._leq[i][b]
                       for i in range(self.size)):
                    continue
                out.append((a, b))
        return out

    def ideal_masks(self) -> list[int]:
        """All down-sets as bitmasks, sorted like lattice elements."""
        if self.size > _IDEAL_UNIVERSE_GUARD:
            raise InputError("down-set enumeration capped at universe size "
                             f"{_IDEAL_UNIVERSE_GUARD}")
        out = []
        for mask in range(1 << self.size):
            ok = True
            for b in range(self.size):
                if not mask >> b & 1:
                    continue
                for a in range(self.size):
                    if self._leq[a][b] and not mask >> a & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(mask)
        return sorted(out, key=lambda m: (_popcount(m), m))


def order_ideal_lattice(poset: Poset) -> FiniteLattice:
    """The distributive lattice of down-sets of a poset."""
    return FiniteLattice(poset.size, poset.ideal_masks())


def lattice_isomorphic(l1: FiniteLattice, l2: FiniteLattice) -> bool:
    """Backtracking order-isomorphism test guided by cover-structure invariants."""
    if len(l1) != len(l2):
        return False

    def profile(lat: FiniteLattice):
        down = lat.lower_covers()
        up = [0] * len(lat)
        for i, covers in enumerate(down):
            for j in covers:
                up[j] += 1
        return [(len(down[i]), up[i]) for i in range(len(lat))]

    p1, p2 = profile(l1), profile(l2)
    if sorted(p1) != sorted(p2):
        return False
    order = sorted(range(len(l1)), key=lambda i: (_popcount(l1.elements[i]), i))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def compatible(i: int, k: int) -> bool:
        if p1[i] != p2[k]:
            return False
        for a, b in assignment.items():
            ea, eb = l1.elements[a], l1.elements[i]
            fa, fb = l2.elements[b], l2.elements[k]
            if l1.leq(ea, eb) != l2.leq(fa, fb) or l1.leq(eb, ea) != l2.leq(fb, fa):
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for k in range(len(l2)):
            if k in used or not compatible(i, k):
                continue
            assignment[i] = k
            used.add(k)
            if extend(pos + 1):
                return True
            del assignment[i]
            used.discard(k)
        return False

    return extend(0)
