"""Independent reference implementations used to cross-check the package.

Everything here trades efficiency for directness: exhaustive enumeration
over finite fields and literal lattice identities, sharing as little
machinery as possible with the code under test.
"""

from __future__ import annotations

from itertools import product

from quivlat.lattice import FiniteLattice
from quivlat.linalg import Matrix
from quivlat.modules import Morphism, Representation, direct_sum, hom_space


def field_elements(f) -> list:
    """Every element of a prime field, via repeated addition of one."""
    out = [f.zero()]
    cur = f.zero()
    for _ in range(f.p - 1):
        cur = f.add(cur, f.one())
        out.append(cur)
    return out


def all_matrices(f, rows: int, cols: int):
    """Every rows-by-cols matrix over the prime field f."""
    cells = rows * cols
    for combo in product(field_elements(f), repeat=cells):
        yield Matrix(f, rows, cols,
                     [list(combo[i * cols:(i + 1) * cols]) for i in range(rows)])


def all_morphisms(m: Representation, n: Representation) -> list[Morphism]:
    """Every homomorphism m -> n, found by filtering every block assignment
    through the intertwining condition.  Only viable for tiny dimensions."""
    vertices = list(m.dims)
    spaces = [list(all_matrices(m.field, n.dims[v], m.dims[v])) for v in vertices]
    out = []
    for combo in product(*spaces):
        blocks = dict(zip(vertices, combo))
        ok = True
        for a in m.algebra.quiver.arrows:
            left = blocks[a.target].mul(m.maps[a.name])
            right = n.maps[a.name].mul(blocks[a.source])
            if left.data != right.data:
                ok = False
                break
        if ok:
            out.append(Morphism(m, n, blocks))
    return out


def epi_from_copies(x: Representation, n: Representation) -> bool:
    """Whether some finite sum of copies of x maps onto n, by exhausting
    every morphism x -> n, greedily stacking ones that grow the image, and
    confirming the stacked map really is surjective.  At most dim n copies
    are ever needed, since each useful copy grows the image."""
    singles = [g for g in all_morphisms(x, n) if not g.is_zero()]
    chosen = []
    image = None
    for g in singles:
        grown = g.image() if image is None else image.add(g.image())
        if image is None or any(grown.spaces[v].dim > image.spaces[v].dim
                                for v in n.dims):
            chosen.append(g)
            image = grown
    if image is None or not image.is_full():
        return False
    assert len(chosen) <= n.total_dim
    stacked_source, offsets = direct_sum([x] * len(chosen))
    blocks = {}
    for v in n.dims:
        cols = []
        for k, g in enumerate(chosen):
            for j in range(x.dims[v]):
                cols.append([g.blocks[v].entry(i, j) for i in range(n.dims[v])])
        blocks[v] = Matrix(n.field, n.dims[v], stacked_source.dims[v],
                           [[cols[j][i] for j in range(len(cols))]
                            for i in range(n.dims[v])])
    return Morphism(stacked_source, n, blocks).is_surjective()


def distributive_by_identity(lat: FiniteLattice) -> bool:
    """The textbook definition, checked on every triple."""
    for a in lat.elements:
        for b in lat.elements:
            for c in lat.elements:
                left = lat.meet(a, lat.join(b, c))
                right = lat.join(lat.meet(a, b), lat.meet(a, c))
                if left != right:
                    return False
    return True
