"""Decorated representations of quivers with potentials.

A decorated representation assigns to each vertex a finite-dimensional
Q-vector space (given by its dimension; maps are exact rational matrices)
plus a decoration dimension, and to each arrow a linear map.  This module
provides the action of path-algebra elements, the defining relation checks,
restriction, direct sums, an isomorphism search, and the restriction of a
representation to the local quiver seen by a single vertex.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .ratmat import Matrix
from .quiver import Quiver, Arrow, hooks, composite_name, premutate_quiver
from .qp import QP, bracket_potential, restrict_qp
from .pathalg import PathElement, cyclic_derivative

ISO_SEED = 0x5EED
ISO_TRIALS = 64


class DecRep:
    """Decorated representation of a QP.

    dims: vertex -> dimension of the module space.
    maps: arrow name -> Matrix (dims[head] x dims[tail]); omitted means zero.
    dec:  vertex -> dimension of the decoration space (default zero).
    """

    def __init__(self, qp: QP, dims, maps=None, dec=None):
        self.qp = qp
        q = qp.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.dec = {v: int((dec or {}).get(v, 0)) for v in q.vertices}
        self.maps = {}
        for name, m in (maps or {}).items():
            a = q.arrow(name)
            want = (self.dims[a.head], self.dims[a.tail])
            if (m.rows, m.cols) != want:
                raise ValueError(
                    f"map for {name} has shape {(m.rows, m.cols)}, expected {want}"
                )
            self.maps[name] = m

    @property
    def quiver(self) -> Quiver:
        return self.qp.quiver

    def map(self, name: str) -> Matrix:
        a = self.qp.quiver.arrow(name)
        m = self.maps.get(name)
        if m is None:
            m = Matrix.zero(self.dims[a.head], self.dims[a.tail])
        return m

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __repr__(self):
        return f"DecRep(dims={self.dims}, dec={self.dec})"

    # -- action ---------------------------------------------------------------

    def path_matrix(self, arrows) -> Matrix:
        """Matrix of a path (last arrow acts first)."""
        m = self.map(arrows[0])
        for name in arrows[1:]:
            m = m * self.map(name)
        return m

    def act(self, elem: PathElement) -> Matrix:
        """Matrix of a path-algebra element whose terms share endpoints."""
        q = self.qp.quiver
        ends = None
        acc = None
        for p, c in elem.terms.items():
            if p.at is not None:
                e = (p.at, p.at)
                m = Matrix.identity(self.dims[p.at])
            else:
                e = (q.arrow(p.arrows[-1]).tail, q.arrow(p.arrows[0]).head)
                m = self.path_matrix(p.arrows)
            if ends is None:
                ends = e
            elif ends != e:
                raise ValueError("terms do not share endpoints")
            acc = m.scale(c) if acc is None else acc + m.scale(c)
        if acc is None:
            raise ValueError("cannot act by zero without endpoint data")
        return acc

    # -- defining conditions ------------------------------------------------

    def check_relations(self) -> bool:
        """True iff every cyclic derivative of the potential acts by zero."""
        for a in self.qp.quiver.arrows:
            d = cyclic_derivative(self.qp.potential, a.name)
            if d.is_zero():
                continue
            if not self.act(d).is_zero():
                return False
        return True

    def check_nilpotent(self):
        """Smallest r >= 1 with every length-r path acting by zero, or None.

        Computed by iterating images under single arrows starting from the
        full coordinate spans; the span after r steps is the joint image of
        all length-r paths.
        """
        q = self.qp.quiver
        spans = {v: Matrix.identity(self.dims[v]) for v in q.vertices}
        total = self.total_dim()
        for r in range(total + 1):
            if all(m.cols == 0 for m in spans.values()):
                return max(r, 1)
            nxt = {}
            for v in q.vertices:
                blocks = [
                    self.map(a.name) * spans[a.tail]
                    for a in q.arrows_into(v)
                    if spans[a.tail].cols
                ]
                nxt[v] = (
                    Matrix.hstack(blocks).column_space_basis()
                    if blocks
                    else Matrix.zero(self.dims[v], 0)
                )
            if sum(m.cols for m in nxt.values()) == sum(m.cols for m in spans.values()):
                return None  # stabilised away from zero
            spans = nxt
        return None

    # -- restriction and sums ---------------------------------------------------

    def is_path_restrictable(self, keep) -> bool:
        """Whether every path entering and leaving the complement of ``keep``
        acts by zero.

        For each vertex k outside ``keep``, the span of images in M_k of all
        paths starting inside ``keep`` must be killed by every path from k
        back into ``keep``.  Both path families are exhausted up to the
        nilpotency bound.
        """
        keep = set(keep)
        q = self.qp.quiver
        if not keep <= set(q.vertices):
            raise ValueError("restriction set contains unknown vertices")
        bound = self.check_nilpotent()
        if bound is None:
            raise ValueError("representation is not nilpotent")
        outside = [v for v in q.vertices if v not in keep]
        # spans[v] = images in M_v of paths of length <= r starting in keep,
        # with every intermediate vertex outside keep once the path leaves.
        incoming = {v: Matrix.zero(self.dims[v], 0) for v in q.vertices}
        frontier = {
            v: (Matrix.identity(self.dims[v]) if v in keep else Matrix.zero(self.dims[v], 0))
            for v in q.vertices
        }
        for _ in range(bound):
            nxt = {v: [] for v in q.vertices}
            for a in q.arrows:
                if frontier[a.tail].cols:
                    nxt[a.head].append(self.map(a.name) * frontier[a.tail])
            frontier = {}
            for v in q.vertices:
                if nxt[v]:
                    frontier[v] = Matrix.hstack(nxt[v]).column_space_basis()
                else:
                    frontier[v] = Matrix.zero(self.dims[v], 0)
                if v in outside and frontier[v].cols:
                    incoming[v] = Matrix.hstack(
                        [incoming[v], frontier[v]]
                    ).column_space_basis()
        for k in outside:
            u = incoming[k]
            if not u.cols:
                continue
            # propagate U_k forward; any nonzero landing inside keep fails.
            spans = {v: Matrix.zero(self.dims[v], 0) for v in q.vertices}
            spans[k] = u
            for _ in range(bound):
                nxt = {v: [] for v in q.vertices}
                for a in q.arrows:
                    if spans[a.tail].cols:
                        nxt[a.head].append(self.map(a.name) * spans[a.tail])
                spans = {
                    v: (
                        Matrix.hstack(nxt[v]).column_space_basis()
                        if nxt[v]
                        else Matrix.zero(self.dims[v], 0)
                    )
                    for v in q.vertices
                }
                if any(spans[v].cols and not spans[v].is_zero() for v in keep):
                    return False
        return True

    def restrict(self, keep) -> "DecRep":
        """Restriction to a vertex subset; requires path-restrictability."""
        keep = set(keep)
        if not self.is_path_restrictable(keep):
            raise ValueError("representation is not path-restrictable to this set")
        rqp = restrict_qp(self.qp, keep)
        dims = {v: (self.dims[v] if v in keep else 0) for v in self.qp.quiver.vertices}
        maps = {a.name: self.maps[a.name]
                for a in rqp.quiver.arrows if a.name in self.maps}
        return DecRep(rqp, dims, maps, dict(self.dec))


def direct_sum_rep(r1: DecRep, r2: DecRep) -> DecRep:
    """Direct sum of two decorated representations of the same QP."""
    q = r1.qp.quiver
    if q.by_name.keys() != r2.qp.quiver.by_name.keys() or set(q.vertices) != set(
        r2.qp.quiver.vertices
    ):
        raise ValueError("direct sum requires representations of the same QP")
    dims = {v: r1.dims[v] + r2.dims[v] for v in q.vertices}
    dec = {v: r1.dec[v] + r2.dec[v] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        m1, m2 = r1.map(a.name), r2.map(a.name)
        top = Matrix.hstack([m1, Matrix.zero(m1.rows, m2.cols)])
        bot = Matrix.hstack([Matrix.zero(m2.rows, m1.cols), m2])
        maps[a.name] = Matrix.vstack([top, bot])
    return DecRep(r1.qp, dims, maps, dec)


def negative_simple(qp: QP, j: str) -> DecRep:
    """Zero module spaces, one-dimensional decoration at j."""
    return DecRep(qp, {}, {}, {j: 1})


def simple_rep(qp: QP, j: str) -> DecRep:
    """One-dimensional module space at j, all maps zero, no decoration."""
    return DecRep(qp, {j: 1}, {}, {})


# -- isomorphism ----------------------------------------------------------------


def _intertwiner_space(r1: DecRep, r2: DecRep):
    """Basis of vertex-wise map families psi with psi_h A1_a = A2_a psi_t.

    Unknowns are the entries of psi_v (dims2[v] x dims1[v]), flattened
    row-major, vertex blocks in quiver vertex order.  Returns (offsets,
    kernel basis matrix).
    """
    q = r1.qp.quiver
    offsets = {}
    n = 0
    for v in q.vertices:
        offsets[v] = n
        n += r2.dims[v] * r1.dims[v]
    rows = []
    for a in q.arrows:
        A1, A2 = r1.map(a.name), r2.map(a.name)
        t, h = a.tail, a.head
        # psi_h A1 - A2 psi_t = 0; entry (i, k) of the product difference:
        # sum_s psi_h[i,s] A1[s,k] - sum_s A2[i,s] psi_t[s,k]
        for i in range(r2.dims[h]):
            for k in range(r1.dims[t]):
                row = [Fraction(0)] * n
                for s in range(r1.dims[h]):
                    row[offsets[h] + i * r1.dims[h] + s] += A1[s, k]
                for s in range(r2.dims[t]):
                    row[offsets[t] + s * r1.dims[t] + k] -= A2[i, s]
                if any(row):
                    rows.append(row)
    sys_m = Matrix.from_rows(rows) if rows else Matrix.zero(0, n)
    return offsets, sys_m.kernel_basis()


def _unflatten(r1: DecRep, r2: DecRep, offsets, vec):
    q = r1.qp.quiver
    out = {}
    for v in q.vertices:
        base = offsets[v]
        rows = [
            [vec[base + i * r1.dims[v] + s] for s in range(r1.dims[v])]
            for i in range(r2.dims[v])
        ]
        out[v] = Matrix(r2.dims[v], r1.dims[v], rows)
    return out


def is_isomorphic(r1: DecRep, r2: DecRep, seed: int = ISO_SEED,
                  trials: int = ISO_TRIALS):
    """Decide isomorphism of decorated representations of the same quiver.

    Returns True, False, or None when the search is inconclusive.  True
    answers come with an explicit invertible intertwiner found among the
    basis of the intertwiner space and seeded random combinations.
    """
    q = r1.qp.quiver
    if q.by_name.keys() != r2.qp.quiver.by_name.keys():
        return False
    if r1.dims != r2.dims or r1.dec != r2.dec:
        return False
    if r1.total_dim() == 0:
        return True
    offsets, basis = _intertwiner_space(r1, r2)
    if basis.cols == 0:
        return False
    candidates = [basis.col(k) for k in range(basis.cols)]
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(basis.cols)]
        candidates.append(
            tuple(
                sum((coeffs[k] * basis[i, k] for k in range(basis.cols)), Fraction(0))
                for i in range(basis.rows)
            )
        )
    for vec in candidates:
        psi = _unflatten(r1, r2, offsets, vec)
        if all(psi[v].is_invertible() for v in q.vertices):
            return True
    return None


# -- the quiver seen from one vertex ----------------------------------------------


def boundary_quiver(qp: QP, j: str) -> Quiver:
    """Arrows incident to j together with one arrow per 2-path through j,
    the latter acting through the second derivative of the potential."""
    q = qp.quiver
    inc = [a for a in q.arrows if a.tail == j or a.head == j]
    verts = []
    for a in inc:
        for v in (a.tail, a.head):
            if v not in verts:
                verts.append(v)
    if j not in verts:
        verts.append(j)
    arrows = list(inc)
    for a, b in hooks(q, j):
        arrows.append(Arrow("d" + composite_name(a, b), a.head, b.tail))
    return Quiver(verts, arrows)


def _bracket_on_premutated(qp: QP, j: str):
    qt = premutate_quiver(qp.quiver, j)
    return qt, bracket_potential(qp, j, qt, bound=10**9)


def _split_composite(inner: str, q: Quiver):
    """Split the inside of a composite name '[x.y]' at the dot joining two
    existing arrow names (names themselves may contain dots/brackets)."""
    for i, ch in enumerate(inner):
        if ch != ".":
            continue
        left, right = inner[:i], inner[i + 1:]
        if left in q.by_name and right in q.by_name:
            return left, right
    raise ValueError(f"cannot split composite arrow name [{inner}]")


def act_with_composites(rep: DecRep, qt: Quiver, elem: PathElement) -> Matrix:
    """Action on ``rep`` of an element written over a quiver ``qt`` that may
    contain composite arrows '[x.y]' of rep's quiver (acting as x after y)."""
    q = rep.qp.quiver

    def arrow_data(name):
        if name in q.by_name:
            a = q.arrow(name)
            return rep.map(name), a.tail, a.head
        a = qt.arrow(name)
        out_name, in_name = _split_composite(name[1:-1], q)
        return rep.map(out_name) * rep.map(in_name), a.tail, a.head

    acc = None
    ends = None
    for p, c in elem.terms.items():
        if p.at is not None:
            m = Matrix.identity(rep.dims[p.at])
            e = (p.at, p.at)
        else:
            mats = [arrow_data(n) for n in p.arrows]
            m = mats[0][0]
            for mm, _, _ in mats[1:]:
                m = m * mm
            e = (mats[-1][1], mats[0][2])
        if ends is None:
            ends = e
        elif ends != e:
            raise ValueError("terms do not share endpoints")
        acc = m.scale(c) if acc is None else acc + m.scale(c)
    if acc is None:
        raise ValueError("cannot act by zero without endpoint data")
    return acc


class BoundaryRep:
    """Plain quiver representation used for vertex-local computations."""

    def __init__(self, quiver: Quiver, dims, maps, j: str):
        self.quiver = quiver
        self.dims = dims
        self.maps = maps
        self.j = j

    def map(self, name: str) -> Matrix:
        return self.maps[name]

    def components(self):
        """Partition of the coordinates into support components.

        Nodes are (vertex, index) pairs; every nonzero matrix entry links
        the source and target coordinates.  Returns a list of
        {vertex: sorted coordinate list} dicts covering all coordinates,
        ordered by their smallest node.
        """
        nodes = [(v, i) for v in self.quiver.vertices for i in range(self.dims[v])]
        index = {nd: k for k, nd in enumerate(nodes)}
        parent = list(range(len(nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for a in self.quiver.arrows:
            m = self.maps[a.name]
            for r in range(m.rows):
                for c in range(m.cols):
                    if m[r, c] != 0:
                        union(index[(a.head, r)], index[(a.tail, c)])
        groups = {}
        for k, nd in enumerate(nodes):
            groups.setdefault(find(k), []).append(nd)
        comps = []
        for root in sorted(groups):
            comp = {}
            for v, i in groups[root]:
                comp.setdefault(v, []).append(i)
            for v in comp:
                comp[v].sort()
            comps.append(comp)
        return comps


def boundary_rep(rep: DecRep, j: str) -> BoundaryRep:
    """Restriction of a representation to the local quiver at j."""
    qp = rep.qp
    q = qp.quiver
    bq = boundary_quiver(qp, j)
    qt, brk = _bracket_on_premutated(qp, j)
    dims = {v: rep.dims[v] for v in bq.vertices}
    maps = {}
    for a in bq.arrows:
        if a.name in q.by_name:
            maps[a.name] = rep.map(a.name)
        else:
            comp = a.name[1:]  # strip leading 'd' -> '[x.y]'
            d = cyclic_derivative(brk, comp)
            if d.is_zero():
                maps[a.name] = Matrix.zero(dims[a.head], dims[a.tail])
            else:
                maps[a.name] = act_with_composites(rep, qt, d)
    return BoundaryRep(bq, dims, maps, j)
