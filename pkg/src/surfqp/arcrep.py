"""Curves crossing a triangulation and the representations they define.

An arc is stored as its sequence of elementary segments: a start segment
leaving a corner of a triangle, interior segments each crossing from one
side of a triangle to another, and an end segment arriving at a corner.
Each interior segment cuts exactly one corner and therefore traverses one
arrow of the unreduced quiver; recording a 1 in that arrow's matrix for the
pair of crossings bounding the segment yields the segment representation.

When the curve makes a full turn around a puncture the segment
representation alone does not satisfy the Jacobian relations; those turns
are recorded as detours and folded in through unipotent detour matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .qp import QP, DEFAULT_TRUNCATION
from .ratmat import Matrix
from .rep import DecRep, negative_simple
from .surface import FlipResult, Triangulation, TriangulationError, surface_qp, unreduced_quiver


class ArcError(ValueError):
    pass


@dataclass(frozen=True)
class Interior:
    triangle: str
    enter: str  # arc label of the side crossed on entry
    leave: str  # arc label of the side crossed on exit


@dataclass(frozen=True)
class Monogon:
    puncture: str
    truncate: int | None = None  # explicit 1-based index of the crossing t


@dataclass(frozen=True)
class ArcCurve:
    name: str
    start: tuple | None = None  # (triangle, corner label)
    segments: tuple = ()
    end: tuple | None = None
    monogon: Monogon | None = None
    tau_arc: str | None = None  # the curve is this arc of the triangulation

    @property
    def crossing_arcs(self) -> tuple:
        if not self.segments:
            return ()
        return tuple(s.enter for s in self.segments) + (self.segments[-1].leave,)


def _slot(t: Triangulation, tri: str, side: str) -> int:
    sides = t.triangles[tri][0]
    if side not in sides:
        raise ArcError(f"{side} is not a side of triangle {tri}")
    return sides.index(side)


def _corner_slot(t: Triangulation, tri: str, corner: str) -> int:
    corners = t.triangles[tri][1]
    hits = [k for k in range(3) if corners[k] == corner]
    if len(hits) != 1:
        raise ArcError(f"corner {corner} of {tri} is missing or ambiguous")
    return hits[0]


def cut_corner_slot(t: Triangulation, seg: Interior) -> int:
    """Slot of the corner shared by the two sides of an interior segment."""
    k_in = _slot(t, seg.triangle, seg.enter)
    k_out = _slot(t, seg.triangle, seg.leave)
    if k_in == k_out:
        raise ArcError(f"segment in {seg.triangle} enters and leaves through {seg.enter}")
    return k_in if (k_in + 1) % 3 == k_out else k_out


def validate_curve(t: Triangulation, arc: ArcCurve) -> None:
    if arc.tau_arc is not None:
        if arc.tau_arc not in t.arcs:
            raise ArcError(f"{arc.tau_arc} is not an arc of the triangulation")
        if arc.segments:
            raise ArcError("a curve marked as a triangulation arc crosses nothing")
        return
    if arc.start is None or not arc.segments:
        raise ArcError(f"arc {arc.name}: need a start and at least one segment")
    for seg in arc.segments:
        if seg.triangle not in t.triangles:
            raise ArcError(f"unknown triangle {seg.triangle}")
        for s in (seg.enter, seg.leave):
            if s not in t.arcs:
                raise ArcError(f"segment side {s} is not an arc")
        cut_corner_slot(t, seg)  # validates enter != leave and membership

    def glue(side, slot_a, slot_b):
        if set(t.side_slots[side]) != {slot_a, slot_b}:
            raise ArcError(f"segments do not glue across {side}")

    tri0, c0 = arc.start
    if tri0 not in t.triangles:
        raise ArcError(f"unknown start triangle {tri0}")
    first = arc.segments[0]
    k0 = _corner_slot(t, tri0, c0)
    if _slot(t, tri0, first.enter) != (k0 + 2) % 3:
        # crossing a side incident to the endpoint leaves a removable
        # half-bigon, so the curve would not be in minimal position
        raise ArcError(
            f"arc {arc.name}: first crossing {first.enter} is adjacent to the "
            f"start corner {c0} of {tri0}")
    glue(first.enter, (tri0, _slot(t, tri0, first.enter)),
         (first.triangle, _slot(t, first.triangle, first.enter)))
    for a, b in zip(arc.segments, arc.segments[1:]):
        if a.leave != b.enter:
            raise ArcError(f"exit {a.leave} does not match next entry {b.enter}")
        glue(a.leave, (a.triangle, _slot(t, a.triangle, a.leave)),
             (b.triangle, _slot(t, b.triangle, b.enter)))
    if arc.end is not None:
        trin, cn = arc.end
        if trin not in t.triangles:
            raise ArcError(f"unknown end triangle {trin}")
        last = arc.segments[-1]
        kn = _corner_slot(t, trin, cn)
        if _slot(t, trin, last.leave) != (kn + 2) % 3:
            raise ArcError(
                f"arc {arc.name}: last crossing {last.leave} is adjacent to "
                f"the end corner {cn} of {trin}")
        glue(last.leave, (last.triangle, _slot(t, last.triangle, last.leave)),
             (trin, _slot(t, trin, last.leave)))


def crossings(arc: ArcCurve, j: str) -> list:
    """Traversal-order positions (0-based) of the arc's crossings with j."""
    return [i for i, a in enumerate(arc.crossing_arcs) if a == j]


# -- detours -------------------------------------------------------------------


@dataclass(frozen=True)
class Detour:
    order: int
    arc: str          # the arc j carrying the two end crossings
    triangle: str     # the triangle housing the first and last segments
    puncture: str     # puncture detoured by the outermost turn
    t1: int           # crossing index of q_{j,t1} (global, 0-based)
    t2: int           # crossing index of q_{j,t2}
    begin: int        # crossing index of b(d)
    end: int          # crossing index of e(d)
    first_puncture: str = ""  # puncture detoured by the order-1 turn


def _segment_info(t: Triangulation, seg: Interior):
    """(cut corner label, cut slot, forward) for an interior segment.

    forward means the segment runs tail-to-head along the arrow sitting in
    the corner it cuts, i.e. counterclockwise around the corner's marked
    point.
    """
    c = cut_corner_slot(t, seg)
    sides, corners = t.triangles[seg.triangle]
    return corners[c], c, seg.enter == sides[c]


def _wrap(t: Triangulation, arc: ArcCurve, k1: int, k2: int):
    """Check crossings k1..k2 for a full fan turn around one puncture.

    Returns (triangle, puncture, forward) when the interior crossings make
    exactly one counterclockwise circuit of a puncture's fan with the first
    and last segments in a common triangle, else None.
    """
    names = arc.crossing_arcs
    if names[k1] != names[k2]:
        return None
    segs = arc.segments[k1:k2]  # segments between crossings k1..k2
    first, last = segs[0], segs[-1]
    if first.triangle != last.triangle:
        return None
    delta = first.triangle
    inner = segs[1:-1]
    if not inner:
        return None
    infos = [_segment_info(t, s) for s in inner]
    p = infos[0][0]
    if p not in t.punctures:
        return None
    if any(c != p for c, _k, _f in infos):
        return None
    if k2 - k1 - 1 != t.valence(p):
        return None
    forwards = {f for _c, _k, f in infos}
    if len(forwards) != 1:
        raise ArcError(f"inconsistent turn direction around {p}")
    # the inner segments must cut every corner at p except the one in delta
    cut = {(s.triangle, k) for s, (_c, k, _f) in zip(inner, infos)}
    all_p = set(t.corners_at(p))
    delta_p = {(tri, k) for tri, k in all_p if tri == delta}
    if cut != all_p - delta_p or len(delta_p) != 1:
        return None
    # the flanking segments cut corners of delta other than p
    for s in (first, last):
        if _segment_info(t, s)[0] == p:
            return None
    return delta, p, forwards.pop()


def _arc_punctures(t: Triangulation, j: str) -> list:
    """Punctures among the two endpoints of arc j."""
    pts = []
    for tri, k in t.side_slots[j]:
        corners = t.triangles[tri][1]
        for c in (corners[k], corners[(k - 1) % 3]):
            if c in t.punctures and c not in pts:
                pts.append(c)
    return pts


def find_detours(t: Triangulation, arc: ArcCurve) -> list:
    """All detours of the curve, of every order.

    A full counterclockwise fan turn around a puncture, entered and left
    through the same triangle and bounded by two crossings of one arc, is an
    order-1 detour; a detour extends to order n+1 when the turn continues
    from its end around the alternate endpoint puncture of the arc carrying
    the begin crossing, closing again inside the same triangle.
    """
    names = arc.crossing_arcs
    n = len(names)
    found = []
    base = []
    for k1 in range(n):
        for k2 in range(k1 + 2, n):
            w = _wrap(t, arc, k1, k2)
            if w is None:
                continue
            delta, p, forward = w
            if forward:
                d = Detour(1, names[k1], delta, p, t1=k1, t2=k2,
                           begin=k1 + 1, end=k2, first_puncture=p)
            else:
                d = Detour(1, names[k1], delta, p, t1=k2, t2=k1,
                           begin=k2 - 1, end=k1, first_puncture=p)
            found.append(d)
            base.append(d)
    frontier = base
    seen = {(d.order, d.t1, d.t2, d.triangle) for d in base}
    while frontier:
        nxt = []
        for d in frontier:
            for nd in _extend_detour(t, arc, d):
                key = (nd.order, nd.t1, nd.t2, nd.triangle)
                if key in seen:
                    continue
                seen.add(key)
                found.append(nd)
                nxt.append(nd)
        frontier = nxt
    return found


def _extend_detour(t: Triangulation, arc: ArcCurve, d: Detour) -> list:
    """Order n+1 detours built on top of the order-n detour d.

    The continuation leaves the end crossing of d in the same traversal
    direction, makes valence-1 further crossings turning around the
    alternate endpoint puncture of the arc carrying the begin point, and
    closes on the arc of the begin point's other neighbouring crossing,
    with the flank and closing segments in a common triangle.
    """
    names = arc.crossing_arcs
    n = len(names)
    alts = [q for q in _arc_punctures(t, names[d.begin]) if q != d.puncture]
    if len(alts) != 1:
        return []
    q = alts[0]
    l = t.valence(q)
    out = []
    direction = 1 if d.t2 > d.t1 else -1
    t2 = d.end + direction * (l - 1)
    if not 0 <= t2 < n:
        return []
    # the l-2 inner segments of the continuation all cut a corner at q,
    # turning counterclockwise around it
    lo = min(d.end, t2 - direction)
    inner = arc.segments[lo:lo + l - 2]
    infos = [_segment_info(t, s) for s in inner]
    if any(c != q for c, _k, _f in infos):
        return []
    if any(f != (direction > 0) for _c, _k, f in infos):
        return []
    closing = arc.segments[min(t2, t2 - direction)]
    delta = closing.triangle
    if _segment_info(t, closing)[0] == q:
        return []
    if sum(1 for tri, _k in t.corners_at(q) if tri == delta) != 1:
        return []
    for t1 in (d.begin - 1, d.begin + 1):
        if not 0 <= t1 < n or names[t1] != names[t2] or t1 == t2:
            continue
        flank = arc.segments[min(t1, d.begin)]
        if flank.triangle != delta:
            continue
        out.append(Detour(d.order + 1, names[t2], delta, q,
                          t1=t1, t2=t2, begin=d.begin, end=t2,
                          first_puncture=d.first_puncture))
    return out


def detour_matrix(t: Triangulation, arc: ArcCurve, j: str, delta: str,
                  detours=None) -> Matrix:
    """Identity on the crossing basis of j plus one entry per detour in delta."""
    pos = {g: i for i, g in enumerate(crossings(arc, j))}
    m = [[Fraction(1) if r == c else Fraction(0) for c in range(len(pos))]
         for r in range(len(pos))]
    if detours is None:
        detours = find_detours(t, arc)
    for d in detours:
        if d.arc != j or d.triangle != delta:
            continue
        n = d.order
        pts = _arc_punctures(t, arc.crossing_arcs[d.begin])
        e_first = (n + 1) // 2
        exps = {d.first_puncture: e_first}
        others = [q for q in pts if q != d.first_puncture]
        if n - e_first:
            if not others:
                raise ArcError("chained detour needs two endpoint punctures")
            exps[others[0]] = n - e_first
        val = Fraction(-1) ** n
        for p, e in exps.items():
            val *= t.scalars[p] ** e
        m[pos[d.t2]][pos[d.t1]] += val
    return Matrix.from_rows(m)


# -- representations -----------------------------------------------------------


def segment_representation(t: Triangulation, arc: ArcCurve):
    """(dims, maps) of the crossing module over the unreduced quiver."""
    validate_curve(t, arc)
    names = arc.crossing_arcs
    dims = {a: 0 for a in t.arcs}
    pos = []
    for a in names:
        pos.append(dims[a])
        dims[a] += 1
    maps = {}
    for k, seg in enumerate(arc.segments):
        c = cut_corner_slot(t, seg)
        sides = t.triangles[seg.triangle][0]
        tail, head = sides[c], sides[(c + 1) % 3]
        name = t.arrow_name(seg.triangle, c)
        if seg.enter == tail:
            col, row = pos[k], pos[k + 1]
        else:
            col, row = pos[k + 1], pos[k]
        m = maps.get(name)
        if m is None:
            m = [[Fraction(0)] * dims[tail] for _ in range(dims[head])]
            maps[name] = m
        m[row][col] = Fraction(1)
    return dims, {n: Matrix.from_rows(m) for n, m in maps.items()}


def monogon_truncate(t: Triangulation, arc: ArcCurve):
    """(iota, t_index, i_prime) for a loop cutting out a punctured monogon.

    iota is the prefix of the loop ending at the first crossing after the
    innermost complete fan turn around the enclosed puncture; i_prime is the
    arc carrying that crossing. An explicit truncation index overrides the
    detection.
    """
    if arc.monogon is None:
        raise ArcError("curve is not flagged as a monogon loop")
    validate_curve(t, arc)
    p = arc.monogon.puncture
    if p not in t.punctures:
        raise ArcError(f"{p} is not a puncture")
    names = arc.crossing_arcs
    n = len(names)
    if arc.monogon.truncate is not None:
        t_idx = arc.monogon.truncate - 1
        if not 0 <= t_idx < n:
            raise ArcError("explicit truncation index out of range")
    else:
        v = t.valence(p)
        t_idx = None
        for k in range(n - v):
            infos = [_segment_info(t, s) for s in arc.segments[k:k + v - 1]]
            if all(c == p for c, _k, _f in infos):
                t_idx = k + v
                break
        if t_idx is None or t_idx >= n:
            raise ArcError(f"no complete turn around {p} found; supply truncate=")
    iota = ArcCurve(name=arc.name + ".iota", start=arc.start,
                    segments=arc.segments[:t_idx], end=None)
    return iota, t_idx, names[t_idx]


def arc_representation(t: Triangulation, arc: ArcCurve,
                       bound: int = DEFAULT_TRUNCATION,
                       qp: QP | None = None) -> DecRep:
    """The detour-corrected representation of the reduced surface QP."""
    if qp is None:
        qp = surface_qp(t, bound)
    if arc.tau_arc is not None:
        validate_curve(t, arc)
        return negative_simple(qp, arc.tau_arc)
    proj = incl = None
    i_prime = None
    curve = arc
    if arc.monogon is not None:
        curve, t_idx, i_prime = monogon_truncate(t, arc)
        last = len(crossings(curve, i_prime)) - 1
        d = last + 1
        proj = Matrix.from_rows(
            [[1 if c == r else 0 for c in range(d)] for r in range(d) if r != last])
        incl = proj.transpose()
    else:
        validate_curve(t, curve)
    dims, maps = segment_representation(t, curve)
    detours = find_detours(t, curve)
    dmats = {}

    def dmat(j, delta):
        key = (j, delta)
        if key not in dmats:
            dmats[key] = detour_matrix(t, curve, j, delta, detours)
        return dmats[key]

    out_dims = dict(dims)
    if i_prime is not None:
        out_dims[i_prime] -= 1
    out_maps = {}
    for a in qp.quiver.arrows:
        delta = a.name.split(":", 1)[0]
        m = maps.get(a.name)
        if m is None:
            m = Matrix.zero(dims[a.head], dims[a.tail])
        m = dmat(a.head, delta) * m
        if a.tail == i_prime:
            m = m * incl
        if a.head == i_prime:
            m = proj * m
        if not m.is_zero():
            out_maps[a.name] = m
    return DecRep(qp, out_dims, out_maps, {})


# -- rerouting across a flip -----------------------------------------------------


def reroute_arc(t: Triangulation, arc: ArcCurve, fr: FlipResult) -> ArcCurve:
    """Re-express a curve of t across the flip recorded in fr.

    Maximal runs through the flipped quadrilateral are replaced by their
    minimal position against the new diagonal, determined by the entry and
    exit points alone (the quadrilateral is a disk).
    """
    validate_curve(t, arc)
    j = fr.arc
    if arc.tau_arc is not None:
        if arc.tau_arc == j:
            raise ArcError("the flipped arc itself has no expression after the flip")
        return arc
    quad = {fr.tri1, fr.tri2}
    new_t = fr.triangulation
    # role of each non-diagonal quadrilateral side, identified by old slot
    side_role = {}
    for tri, role_pair in ((fr.tri1, ("u1", "u2")), (fr.tri2, ("v1", "v2"))):
        sides = t.triangles[tri][0]
        kj = sides.index(j)
        side_role[(tri, (kj + 1) % 3)] = role_pair[0]
        side_role[(tri, (kj + 2) % 3)] = role_pair[1]
    corner_role = {}
    for tri, roles in ((fr.tri1, ("x", "w", "y")), (fr.tri2, ("y", "z", "x"))):
        sides = t.triangles[tri][0]
        kj = sides.index(j)
        for i, r in enumerate(roles):
            corner_role[(tri, (kj + i) % 3)] = r
    x_side = {"u1", "v2", "x"}
    y_side = {"u2", "v1", "y"}
    new_tri_of = {"x": fr.tri1, "y": fr.tri2}  # new triangle containing each side set
    label = dict(fr.sides)

    def new_seg(tri_key, a, b):
        return Interior(new_tri_of[tri_key], a, b)

    def route(entry, exit_):
        """entry/exit: ('side', role) or ('corner', role); returns
        (start_corner|None, [segments], end_corner|None)."""
        segs = []

        def side_of(item):
            kind, role = item
            if kind == "corner":
                if role == "w":
                    return None  # on the new diagonal
                if role == "z":
                    return None
                return "x" if role in x_side else "y"
            return "x" if role in x_side else "y"

        se, sx = side_of(entry), side_of(exit_)
        if se is None and sx is None:
            raise ArcError("curve runs along the new diagonal; it is the arc j")
        if se is None:
            se = sx
        if sx is None:
            sx = se
        start_corner = end_corner = None
        cur = se
        if entry[0] == "corner":
            start_corner = (new_tri_of[se], fr.corners[entry[1]])
        if se == sx:
            if entry[0] == "side" and exit_[0] == "side":
                segs.append(new_seg(se, label[entry[1]], label[exit_[1]]))
        else:
            if entry[0] == "side":
                segs.append(new_seg(se, label[entry[1]], j))
            if exit_[0] == "side":
                segs.append(new_seg(sx, j, label[exit_[1]]))
            else:
                # ends at a corner just across the diagonal: record no segment;
                # the diagonal crossing comes from the entry-side segment
                pass
            cur = sx
        if exit_[0] == "corner":
            end_corner = (new_tri_of[cur], fr.corners[exit_[1]])
        return start_corner, segs, end_corner

    out_segs = []
    new_start = arc.start
    new_end = arc.end
    segs = list(arc.segments)
    i = 0
    n = len(segs)
    start_in_quad = arc.start is not None and arc.start[0] in quad

    def seg_entry_item(k):
        s = segs[k]
        return ("side", side_role[(s.triangle, _slot(t, s.triangle, s.enter))])

    def seg_exit_item(k):
        s = segs[k]
        return ("side", side_role[(s.triangle, _slot(t, s.triangle, s.leave))])

    while i < n:
        if segs[i].triangle not in quad:
            out_segs.append(segs[i])
            i += 1
            continue
        # collect the maximal quad run
        k = i
        while k < n and segs[k].triangle in quad:
            k += 1
        run_first, run_last = i, k - 1
        if i == 0 and start_in_quad:
            tri0, c0 = arc.start
            entry = ("corner", corner_role[(tri0, _corner_slot(t, tri0, c0))])
        else:
            entry = seg_entry_item(run_first)
        if k == n and arc.end is not None and arc.end[0] in quad:
            trin, cn = arc.end
            exit_ = ("corner", corner_role[(trin, _corner_slot(t, trin, cn))])
            sc, r_segs, ec = route(entry, exit_)
            if sc is not None:
                new_start = sc
            out_segs.extend(r_segs)
            new_end = ec
            i = k
            continue
        if k == n and arc.end is None:
            # truncated curve ends mid-quad (monogon iota); drop the tail run
            exit_ = seg_exit_item(run_last)
            sc, r_segs, _ec = route(entry, exit_)
            if sc is not None:
                new_start = sc
            out_segs.extend(r_segs)
            i = k
            continue
        exit_ = seg_exit_item(run_last)
        sc, r_segs, _ec = route(entry, exit_)
        if sc is not None:
            new_start = sc
        out_segs.extend(r_segs)
        i = k
    def endpoint_target(role, f_label):
        """Place a curve endpoint whose corner lies in the quad when the
        adjacent piece of the curve crosses no old quad side.  f_label is
        the nearest crossing of the rerouted curve.  Returns the new home
        triangle and, for endpoints separated from that crossing by the new
        diagonal, the triangle the extra diagonal crossing passes through.
        """
        f_roles = [r for r in ("u1", "u2", "v1", "v2") if label[r] == f_label]
        f_sides = {"x" if r in x_side else "y" for r in f_roles}
        if len(f_sides) != 1:
            raise ArcError(
                f"cannot place curve endpoint after flipping {j}: the adjacent "
                f"crossing {f_label} does not determine a side of the diagonal")
        f_side = f_sides.pop()
        if role in ("w", "z"):
            # the new diagonal ends here and splits the old corner in two;
            # the curve stays on the side its nearest crossing lies on
            return new_tri_of[f_side], None
        my_side = "x" if role == "x" else "y"
        home = new_tri_of[my_side]
        if f_side == my_side:
            return home, None
        return home, (fr.tri2 if home == fr.tri1 else fr.tri1)

    if start_in_quad and arc.start is not None and not (segs and segs[0].triangle in quad):
        # start corner inside the quad but first segment outside: the start
        # piece crossed no old quad side, but may cross the new diagonal
        tri0, c0 = arc.start
        role = corner_role[(tri0, _corner_slot(t, tri0, c0))]
        home, cross_tri = endpoint_target(role, out_segs[0].enter)
        new_start = (home, fr.corners[role])
        if cross_tri is not None:
            out_segs.insert(0, Interior(cross_tri, j, out_segs[0].enter))
    end_in_quad = arc.end is not None and arc.end[0] in quad
    if end_in_quad and not (segs and segs[-1].triangle in quad):
        trin, cn = arc.end
        role = corner_role[(trin, _corner_slot(t, trin, cn))]
        home, cross_tri = endpoint_target(role, out_segs[-1].leave)
        new_end = (home, fr.corners[role])
        if cross_tri is not None:
            out_segs.append(Interior(cross_tri, out_segs[-1].leave, j))
    out = ArcCurve(name=arc.name, start=new_start, segments=tuple(out_segs),
                   end=new_end, monogon=arc.monogon)
    validate_curve(new_t, out)
    return out


# -- flip versus mutation --------------------------------------------------------


def verify_flip_mutation(t: Triangulation, arc: ArcCurve, j: str,
                         bound: int = DEFAULT_TRUNCATION):
    """Compare mutation at j of the arc representation with the flipped one.

    Returns (status, details) where status is True, False, or None when the
    sampled isomorphism search is inconclusive. The mutated representation is
    relabeled along the flip correspondence and the two reversed star arrows
    change sign before comparison.
    """
    from .rep import is_isomorphic
    from .repmut import mutate_rep
    from .surface import flip, flip_matches_mutation

    fr = flip(t, j)
    sigma = fr.triangulation
    ok, rename = flip_matches_mutation(t, j, bound)
    if not ok:
        return False, {"reason": "quiver mutation does not match the flip"}
    qp_sigma = surface_qp(sigma, bound)
    m_tau = arc_representation(t, arc, bound)
    mu = mutate_rep(m_tau, j, bound)
    maps = {}
    for name, m in mu.maps.items():
        new = rename.get(name, name)
        if name in fr.twist_arrows:
            m = -m
        maps[new] = m
    relabeled = DecRep(qp_sigma, mu.dims, maps, mu.dec)
    arc_sigma = reroute_arc(t, arc, fr)
    m_sigma = arc_representation(sigma, arc_sigma, bound, qp=qp_sigma)
    status = is_isomorphic(relabeled, m_sigma)
    details = {
        "mutated_dims": dict(mu.dims),
        "flipped_dims": dict(m_sigma.dims),
        "mutated_dec": dict(mu.dec),
        "flipped_dec": dict(m_sigma.dec),
        "mutated_rep": relabeled,
        "flipped_rep": m_sigma,
    }
    return status, details


# -- text format -----------------------------------------------------------------


def arc_to_text(arc: ArcCurve) -> str:
    if arc.tau_arc is not None:
        return f"arc {arc.name}: tau {arc.tau_arc}\n"
    parts = [f"start {arc.start[0]}@{arc.start[1]}"]
    parts += [f"seg {s.triangle} {s.enter} {s.leave}" for s in arc.segments]
    if arc.end is not None:
        parts.append(f"end {arc.end[0]}@{arc.end[1]}")
    lines = [f"arc {arc.name}: " + " ; ".join(parts)]
    if arc.monogon is not None:
        extra = f"monogon puncture={arc.monogon.puncture}"
        if arc.monogon.truncate is not None:
            extra += f" truncate={arc.monogon.truncate}"
        lines.append(extra)
    return "\n".join(lines) + "\n"


def arc_from_text(text: str, t: Triangulation | None = None) -> ArcCurve:
    name = None
    start = end = None
    segments = []
    tau = None
    monogon = None
    body = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("arc "):
            head, _, rest = line.partition(":")
            name = head[4:].strip()
            body += [p.strip() for p in rest.split(";") if p.strip()]
        elif line.startswith("monogon"):
            opts = dict(kv.split("=", 1) for kv in line.split()[1:])
            if "puncture" not in opts:
                raise ArcError("monogon directive needs puncture=")
            trunc = int(opts["truncate"]) if "truncate" in opts else None
            monogon = Monogon(opts["puncture"], trunc)
        else:
            body += [p.strip() for p in line.split(";") if p.strip()]
    if name is None:
        raise ArcError("missing 'arc <name>:' header")
    for part in body:
        words = part.split()
        if words[0] == "start":
            tri, _, c = words[1].partition("@")
            start = (tri, c)
        elif words[0] == "end":
            tri, _, c = words[1].partition("@")
            end = (tri, c)
        elif words[0] == "seg":
            if len(words) != 4:
                raise ArcError(f"bad segment: {part}")
            tri, a, b = words[1], words[2], words[3]
            if t is not None:
                sides = t.triangles[tri][0]
                if a.isdigit() and a not in sides:
                    a = sides[int(a)]
                if b.isdigit() and b not in sides:
                    b = sides[int(b)]
            segments.append(Interior(tri, a, b))
        elif words[0] == "tau":
            tau = words[1]
        else:
            raise ArcError(f"unknown directive: {part}")
    arc = ArcCurve(name=name, start=start, segments=tuple(segments), end=end,
                   monogon=monogon, tau_arc=tau)
    if t is not None:
        validate_curve(t, arc)
    return arc
