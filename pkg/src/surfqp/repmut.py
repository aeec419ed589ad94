"""Mutation of decorated representations at a vertex.

The construction at a vertex j is pure exact linear algebra on three maps:
the joint action of arrows into j, the joint action of arrows out of j, and
the second-derivative map built from the potential.  The new space at j is
assembled from kernels, images and quotients of these maps with a fixed
deterministic choice of bases (leftmost-pivot echelon everywhere).
"""

from __future__ import annotations

from fractions import Fraction

from .ratmat import Matrix, retraction, Quotient
from .quiver import composite_name, star_name
from .qp import QP, premutate_qp, DEFAULT_TRUNCATION
from .pathalg import cyclic_derivative, split_reduce
from .rep import DecRep, boundary_rep, _bracket_on_premutated, act_with_composites


class MutationWorkspace:
    """The maps at a vertex j: amat (into j), bmat (out of j), cmat (back).

    in_arrows/out_arrows are Arrow lists fixing the summand order of the
    stacked domain/codomain; amat: M_in -> M_j, bmat: M_j -> M_out,
    cmat: M_out -> M_in.
    """

    def __init__(self, rep: DecRep, j: str):
        q = rep.qp.quiver
        self.j = j
        self.rep = rep
        self.in_arrows = list(q.arrows_into(j))
        self.out_arrows = list(q.arrows_out_of(j))
        nj = rep.dims[j]
        ins = [rep.map(a.name) for a in self.in_arrows]
        outs = [rep.map(b.name) for b in self.out_arrows]
        self.amat = Matrix.hstack(ins) if ins else Matrix.zero(nj, 0)
        self.bmat = Matrix.vstack(outs) if outs else Matrix.zero(0, nj)
        qt, brk = _bracket_on_premutated(rep.qp, j)
        self.premutated_quiver = qt
        blocks = []
        for a in self.in_arrows:
            row = []
            for b in self.out_arrows:
                comp = composite_name(b, a)
                d = cyclic_derivative(brk, comp)
                if d.is_zero():
                    row.append(Matrix.zero(rep.dims[a.tail], rep.dims[b.head]))
                else:
                    row.append(act_with_composites(rep, qt, d))
            blocks.append(Matrix.hstack(row) if row else Matrix.zero(rep.dims[a.tail], 0))
        n_in = self.amat.cols
        n_out = self.bmat.rows
        self.cmat = Matrix.vstack(blocks) if blocks else Matrix.zero(n_in, n_out)
        if self.cmat.cols != n_out:  # no in-arrows: fix the empty shape
            self.cmat = Matrix.zero(n_in, n_out)

    def check_identities(self) -> bool:
        """The composition identities satisfied when relations hold."""
        return (self.amat * self.cmat).is_zero() and (self.cmat * self.bmat).is_zero()

    def in_offsets(self):
        offs, n = [], 0
        for a in self.in_arrows:
            offs.append(n)
            n += self.rep.dims[a.tail]
        return offs, n

    def out_offsets(self):
        offs, n = [], 0
        for b in self.out_arrows:
            offs.append(n)
            n += self.rep.dims[b.head]
        return offs, n


def _mutation_core(amat: Matrix, bmat: Matrix, cmat: Matrix, vj: int):
    """The linear algebra of mutation at a vertex.

    Returns (summand dims (q1, rc, q2, vj), bbar: M_out -> new space,
    abar: new space -> M_in, vbar: new decoration dimension).
    """
    n_in, n_out = cmat.rows, cmat.cols
    kc = cmat.kernel_basis()              # ker c  (in M_out)
    cim = cmat.column_space_basis()       # im c   (in M_in)
    ka = amat.kernel_basis()              # ker a  (in M_in)
    rc = cim.cols

    # ker c / im b
    in_kc = kc.solve(bmat) if kc.cols else Matrix.zero(0, bmat.cols)
    if in_kc is None:
        raise ValueError("image of b-maps not contained in ker c (relations fail)")
    quot1 = Quotient(kc.cols, in_kc)
    q1 = quot1.dim
    # ker a / im c
    in_ka = ka.solve(cim) if ka.cols else Matrix.zero(0, rc)
    if in_ka is None:
        raise ValueError("image of c not contained in ker a (relations fail)")
    quot2 = Quotient(ka.cols, in_ka)
    q2 = quot2.dim

    retr_kc = retraction(kc) if kc.cols else Matrix.zero(0, n_out)
    # coordinates of c in the image basis
    c_coords = cim.solve(cmat) if rc else Matrix.zero(0, n_out)
    bbar = Matrix.vstack([
        (quot1.project * retr_kc).scale(-1),
        c_coords.scale(-1),
        Matrix.zero(q2, n_out),
        Matrix.zero(vj, n_out),
    ])
    abar = Matrix.hstack([
        Matrix.zero(n_in, q1),
        cim,
        ka * quot2.section if ka.cols else Matrix.zero(n_in, q2),
        Matrix.zero(n_in, vj),
    ])

    kb = bmat.kernel_basis()
    if kb.cols and amat.cols:
        joint = Matrix.hstack([kb, amat.column_space_basis()])
        inter = kb.cols + amat.rank() - joint.rank()
    else:
        inter = 0
    vbar = kb.cols - inter
    return (q1, rc, q2, vj), bbar, abar, vbar


def premutate_rep(rep: DecRep, j: str, bound: int = DEFAULT_TRUNCATION) -> DecRep:
    """Representation of the premutated QP with the new space at j."""
    ws = MutationWorkspace(rep, j)
    if not ws.check_identities():
        raise ValueError("mutation maps fail a*c = 0 or c*b = 0; relations do not hold")
    dims_sum, bbar, abar, vbar = _mutation_core(ws.amat, ws.bmat, ws.cmat, rep.dec[j])
    new_nj = sum(dims_sum)

    qp_t = premutate_qp(rep.qp, j, bound)
    q = rep.qp.quiver
    dims = dict(rep.dims)
    dims[j] = new_nj
    dec = dict(rep.dec)
    dec[j] = vbar

    maps = {}
    for a in q.arrows:
        if a.tail != j and a.head != j:
            maps[a.name] = rep.map(a.name)
    in_offs, _ = ws.in_offsets()
    out_offs, _ = ws.out_offsets()
    for k, a in enumerate(ws.in_arrows):
        nk = rep.dims[a.tail]
        rows = [abar.row(in_offs[k] + i) for i in range(nk)]
        maps[star_name(a.name)] = Matrix(nk, new_nj, rows)
    for l, b in enumerate(ws.out_arrows):
        nl = rep.dims[b.head]
        cols = [bbar.col(out_offs[l] + i) for i in range(nl)]
        maps[star_name(b.name)] = (
            Matrix(nl, new_nj, cols).transpose() if nl else Matrix.zero(new_nj, 0)
        )
    for b in ws.out_arrows:
        for a in ws.in_arrows:
            maps[composite_name(b, a)] = rep.map(b.name) * rep.map(a.name)
    return DecRep(qp_t, dims, maps, dec)


def mutate_rep(rep: DecRep, j: str, bound: int = DEFAULT_TRUNCATION) -> DecRep:
    """Premutation followed by forgetting the split-off trivial arrows."""
    pre = premutate_rep(rep, j, bound)
    q_red, s_red, _phi = split_reduce(pre.qp.quiver, pre.qp.potential, bound)
    qp_red = QP(q_red, s_red)
    maps = {a.name: pre.maps[a.name] for a in q_red.arrows if a.name in pre.maps}
    return DecRep(qp_red, pre.dims, maps, pre.dec)


def mutate_rep_via_boundary(rep: DecRep, j: str,
                            bound: int = DEFAULT_TRUNCATION) -> DecRep:
    """Mutation computed separately on each support component of the local
    representation at j, then reassembled; isomorphic to mutate_rep."""
    ws = MutationWorkspace(rep, j)
    if not ws.check_identities():
        raise ValueError("mutation maps fail a*c = 0 or c*b = 0; relations do not hold")
    comps = boundary_rep(rep, j).components()
    in_offs, n_in = ws.in_offsets()
    out_offs, n_out = ws.out_offsets()
    nj = rep.dims[j]

    def in_coords(comp):
        sel = []
        for k, a in enumerate(ws.in_arrows):
            for i in comp.get(a.tail, []):
                sel.append(in_offs[k] + i)
        return sel

    def out_coords(comp):
        sel = []
        for l, b in enumerate(ws.out_arrows):
            for i in comp.get(b.head, []):
                sel.append(out_offs[l] + i)
        return sel

    def submatrix(m, rows, cols):
        return Matrix(len(rows), len(cols), [[m[r, c] for c in cols] for r in rows])

    pieces = []
    for comp in comps:
        jrows = comp.get(j, [])
        irows = in_coords(comp)
        orows = out_coords(comp)
        if not (jrows or irows or orows):
            continue
        a_c = submatrix(ws.amat, jrows, irows)
        b_c = submatrix(ws.bmat, orows, jrows)
        c_c = submatrix(ws.cmat, irows, orows)
        dims_sum, bbar_c, abar_c, vbar_c = _mutation_core(a_c, b_c, c_c, 0)
        pieces.append((comp, irows, orows, sum(dims_sum), bbar_c, abar_c, vbar_c))

    vj = rep.dec[j]
    new_nj = sum(p[3] for p in pieces) + vj
    vbar = sum(p[6] for p in pieces)

    # assemble bbar: M_out -> new j-space, abar: new j-space -> M_in
    bbar_rows = []
    abar_cols_blocks = []
    for comp, irows, orows, njc, bbar_c, abar_c, _ in pieces:
        rows = []
        for r in range(njc):
            full = [Fraction(0)] * n_out
            for ci, oc in enumerate(orows):
                full[oc] = bbar_c[r, ci]
            rows.append(full)
        bbar_rows.extend(rows)
        cols = []
        for c in range(njc):
            full = [Fraction(0)] * n_in
            for ri, ic in enumerate(irows):
                full[ic] = abar_c[ri, c]
            cols.append(full)
        abar_cols_blocks.extend(cols)
    for _ in range(vj):  # decoration summand: zero maps
        bbar_rows.append([Fraction(0)] * n_out)
        abar_cols_blocks.append([Fraction(0)] * n_in)
    bbar = Matrix(new_nj, n_out, bbar_rows)
    abar = Matrix(new_nj, n_in, abar_cols_blocks).transpose()

    qp_t = premutate_qp(rep.qp, j, bound)
    q = rep.qp.quiver
    dims = dict(rep.dims)
    dims[j] = new_nj
    dec = dict(rep.dec)
    dec[j] = vbar
    maps = {}
    for a in q.arrows:
        if a.tail != j and a.head != j:
            maps[a.name] = rep.map(a.name)
    for k, a in enumerate(ws.in_arrows):
        nk = rep.dims[a.tail]
        rows = [abar.row(in_offs[k] + i) for i in range(nk)]
        maps[star_name(a.name)] = Matrix(nk, new_nj, rows)
    for l, b in enumerate(ws.out_arrows):
        nl = rep.dims[b.head]
        cols = [bbar.col(out_offs[l] + i) for i in range(nl)]
        maps[star_name(b.name)] = (
            Matrix(nl, new_nj, cols).transpose() if nl else Matrix.zero(new_nj, 0)
        )
    for b in ws.out_arrows:
        for a in ws.in_arrows:
            maps[composite_name(b, a)] = rep.map(b.name) * rep.map(a.name)
    pre = DecRep(qp_t, dims, maps, dec)
    q_red, s_red, _phi = split_reduce(qp_t.quiver, qp_t.potential, bound)
    qp_red = QP(q_red, s_red)
    red_maps = {a.name: pre.maps[a.name] for a in q_red.arrows if a.name in pre.maps}
    return DecRep(qp_red, pre.dims, red_maps, pre.dec)


def g_vector(rep: DecRep) -> dict:
    """Per-vertex integers: dim of the kernel of the local back-map, minus
    the space dimension, plus the decoration dimension."""
    out = {}
    for j in rep.qp.quiver.vertices:
        ws = MutationWorkspace(rep, j)
        ker_dim = ws.cmat.cols - ws.cmat.rank()
        out[j] = ker_dim - rep.dims[j] + rep.dec[j]
    return out


def _rename_element(elem, target_q, rename):
    from .pathalg import Path, PathElement
    terms = {}
    for p, c in elem.terms.items():
        key = Path(tuple(rename.get(n, n) for n in p.arrows), p.at)
        terms[key] = terms.get(key, Fraction(0)) + c
    return PathElement(target_q, terms)


def mutate_rep_twice_relabeled(rep: DecRep, j: str,
                               bound: int = DEFAULT_TRUNCATION) -> DecRep:
    """Mutate twice at j and relabel the resulting arrows canonically.

    Double stars collapse (x** -> x); a surviving second-pass composite
    [x*.y*] is renamed to the arrow that was deleted together with [y.x]
    in the first reduction (they have the same endpoints by construction).
    """
    from .quiver import Quiver
    q0 = rep.qp.quiver
    pre1 = premutate_qp(rep.qp, j, bound)
    partner = {}
    for p, _c in pre1.potential.terms.items():
        if len(p) == 2:
            u, v = p.arrows
            partner[u], partner[v] = v, u
    m1 = mutate_rep(rep, j, bound)
    m2 = mutate_rep(m1, j, bound)
    rename = {}
    for a in m2.qp.quiver.arrows:
        n = a.name
        if n.endswith("**") and n[:-2] in q0.by_name:
            rename[n] = n[:-2]
        elif n.startswith("[") and n.endswith("]"):
            try:
                u, v = _split_composite_names(n, m1.qp.quiver)
            except ValueError:
                continue
            if u.endswith("*") and v.endswith("*"):
                orig = f"[{v[:-1]}.{u[:-1]}]"
                if orig in partner:
                    rename[n] = partner[orig]
    new_q = Quiver(
        m2.qp.quiver.vertices,
        [type(a)(rename.get(a.name, a.name), a.tail, a.head)
         for a in m2.qp.quiver.arrows],
    )
    new_pot = _rename_element(m2.qp.potential, new_q, rename)
    new_qp = QP(new_q, new_pot)
    maps = {rename.get(n, n): m for n, m in m2.maps.items()}
    return DecRep(new_qp, m2.dims, maps, m2.dec)


def _split_composite_names(name: str, q):
    from .rep import _split_composite
    return _split_composite(name[1:-1], q)
