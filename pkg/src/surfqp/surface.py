"""Triangulated surfaces: glued ideal triangles, their quiver with
potential, and diagonal flips.

A triangulation is a set of named triangles; each triangle lists its three
sides in the clockwise order induced by the orientation, together with the
marked point at each corner (corner k sits between sides k and k+1 mod 3).
Arcs are sides shared by two triangle slots; boundary sides belong to one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quiver import Quiver, Arrow, delete_two_cycles, composite_name, star_name
from .pathalg import Path, PathElement, cyclic_normalize, split_reduce
from .qp import QP


class TriangulationError(ValueError):
    pass


class Triangulation:
    def __init__(self, triangles, boundary=(), scalars=None):
        """triangles: mapping name -> (sides 3-tuple, corners 3-tuple)."""
        self.triangles = {}
        for name, (sides, corners) in triangles.items():
            sides = tuple(sides)
            corners = tuple(corners)
            if len(sides) != 3 or len(corners) != 3:
                raise TriangulationError(f"triangle {name}: need 3 sides and 3 corners")
            if len(set(sides)) != 3:
                raise TriangulationError(
                    f"triangle {name}: repeated side (self-folded triangles unsupported)"
                )
            self.triangles[name] = (sides, corners)
        self.boundary = set(boundary)
        self.scalars = {k: Fraction(v) for k, v in (scalars or {}).items()}
        self._validate()

    # -- derived structure ----------------------------------------------------

    def _validate(self):
        slots = {}
        for t, (sides, _corners) in self.triangles.items():
            for k, s in enumerate(sides):
                slots.setdefault(s, []).append((t, k))
        self.side_slots = slots
        self.arcs = sorted(s for s in slots if s not in self.boundary)
        for s, sl in slots.items():
            want = 1 if s in self.boundary else 2
            if len(sl) != want:
                raise TriangulationError(
                    f"side {s} occurs in {len(sl)} slot(s); expected {want}"
                )
        for s in self.boundary:
            if s not in slots:
                raise TriangulationError(f"declared boundary side {s} is unused")
        # gluing consistency of corner labels
        for s in self.arcs:
            (t1, k1), (t2, k2) = slots[s]
            c1 = self.triangles[t1][1]
            c2 = self.triangles[t2][1]
            if c1[(k1 - 1) % 3] != c2[k2] or c1[k1] != c2[(k2 - 1) % 3]:
                raise TriangulationError(
                    f"corner labels disagree across the gluing of side {s}"
                )
        # classify marked points
        self.marked_points = []
        boundary_points = set()
        for t, (sides, corners) in self.triangles.items():
            for k, c in enumerate(corners):
                if c not in self.marked_points:
                    self.marked_points.append(c)
                if sides[k] in self.boundary or sides[(k + 1) % 3] in self.boundary:
                    boundary_points.add(c)
        self.punctures = sorted(c for c in self.marked_points if c not in boundary_points)
        for p in self.punctures:
            self.scalars.setdefault(p, Fraction(1))
            self.puncture_walk(p)  # raises if the fan does not close

    def other_slot(self, side, tri, k):
        for t, kk in self.side_slots[side]:
            if (t, kk) != (tri, k):
                return (t, kk)
        raise TriangulationError(f"side {side} has no gluing partner")

    def corner_successor(self, tri, k):
        """Next corner counterclockwise around the marked point at (tri, k)."""
        sides = self.triangles[tri][0]
        s = sides[(k + 1) % 3]
        if s in self.boundary:
            raise TriangulationError(
                f"walk around a boundary marked point at triangle {tri}"
            )
        return self.other_slot(s, tri, (k + 1) % 3)

    def corners_at(self, point):
        return [
            (t, k)
            for t, (_sides, corners) in self.triangles.items()
            for k in range(3)
            if corners[k] == point
        ]

    def puncture_walk(self, p):
        """The corner slots around puncture p in counterclockwise order."""
        corners = self.corners_at(p)
        if not corners:
            raise TriangulationError(f"unknown puncture {p}")
        start = min(corners)
        walk = [start]
        cur = self.corner_successor(*start)
        while cur != start:
            if len(walk) > len(corners):
                raise TriangulationError(f"walk around {p} does not close")
            walk.append(cur)
            cur = self.corner_successor(*cur)
        if len(walk) != len(corners):
            raise TriangulationError(f"walk around {p} misses corners")
        return walk

    def valence(self, p):
        """Arc-ends at p, counted with multiplicity."""
        return len(self.corners_at(p))

    def arrow_name(self, tri, k):
        sides = self.triangles[tri][0]
        return f"{tri}:{sides[k]}->{sides[(k + 1) % 3]}"

    def __repr__(self):
        return (
            f"Triangulation({len(self.triangles)} triangles, "
            f"{len(self.arcs)} arcs, punctures {self.punctures})"
        )


# -- quiver and potential ----------------------------------------------------


def unreduced_quiver(t: Triangulation) -> Quiver:
    """One vertex per arc; per triangle, an arrow between each clockwise-
    consecutive pair of arc sides."""
    arrows = []
    for tri in sorted(t.triangles):
        sides, _ = t.triangles[tri]
        for k in range(3):
            s_from, s_to = sides[k], sides[(k + 1) % 3]
            if s_from in t.boundary or s_to in t.boundary:
                continue
            arrows.append(Arrow(t.arrow_name(tri, k), s_from, s_to))
    return Quiver(t.arcs, arrows)


def reduced_quiver(t: Triangulation) -> Quiver:
    return delete_two_cycles(unreduced_quiver(t))


def unreduced_potential(t: Triangulation, q: Quiver | None = None) -> PathElement:
    """Triangle 3-cycles over interior triangles plus, per puncture p, the
    scalar x_p times the counterclockwise cycle of arrows around p."""
    if q is None:
        q = unreduced_quiver(t)
    s = PathElement.zero(q)
    for tri in sorted(t.triangles):
        sides, _ = t.triangles[tri]
        if any(x in t.boundary for x in sides):
            continue
        cyc = Path((t.arrow_name(tri, 2), t.arrow_name(tri, 1), t.arrow_name(tri, 0)))
        s = s + PathElement(q, {cyc: Fraction(1)})
    for p in t.punctures:
        walk = t.puncture_walk(p)
        names = [t.arrow_name(tri, k) for tri, k in walk]
        # consecutive walk arrows compose head-to-tail; the path tuple lists
        # the latest-acting arrow first.
        cyc = Path(tuple(reversed(names)))
        s = s + PathElement(q, {cyc: t.scalars[p]})
    return cyclic_normalize(s)


def surface_qp(t: Triangulation, bound: int = 16) -> QP:
    q = unreduced_quiver(t)
    s = unreduced_potential(t, q)
    q_red, s_red, _phi = split_reduce(q, s, bound)
    return QP(q_red, s_red)


# -- flips ---------------------------------------------------------------------


@dataclass
class FlipResult:
    triangulation: Triangulation
    arc: str
    tri1: str
    tri2: str
    sides: dict      # roles u1, u2, v1, v2 -> side labels
    corners: dict    # roles w, x, y, z -> marked points
    roles: dict      # roles alpha..eta -> arrow names of the unflipped quiver
    correspondence: dict  # mutated-quiver arrow name -> flipped-quiver arrow name
    twist_arrows: tuple   # the two star arrows whose maps change sign


def _rotate_to(sides, corners, j):
    k = sides.index(j)
    return (
        tuple(sides[(k + i) % 3] for i in range(3)),
        tuple(corners[(k + i) % 3] for i in range(3)),
    )


def flip(t: Triangulation, j: str) -> FlipResult:
    """Replace the diagonal j of its quadrilateral by the other diagonal.

    The two new triangles reuse the names of the old ones and the new arc
    keeps the label j.
    """
    if j not in t.arcs:
        raise TriangulationError(f"{j} is not an arc")
    (t1, k1), (t2, k2) = t.side_slots[j]
    s1, c1 = _rotate_to(*t.triangles[t1], j)
    s2, c2 = _rotate_to(*t.triangles[t2], j)
    _, u1, u2 = s1
    _, v1, v2 = s2
    x, w, y = c1
    y2, z, x2 = c2
    if (x, y) != (x2, y2):
        raise TriangulationError(f"gluing of {j} is inconsistent")
    if u1 == v2 or v1 == u2:
        raise TriangulationError(
            f"flipping {j} would create a self-folded triangle"
        )
    new_tris = dict(t.triangles)
    new_tris[t1] = ((u1, j, v2), (w, z, x))
    new_tris[t2] = ((v1, j, u2), (z, w, y))
    new_t = Triangulation(new_tris, t.boundary, t.scalars)

    def old(tri, frm, to):
        return f"{tri}:{frm}->{to}"

    roles = {
        "alpha": old(t1, u1, u2),
        "beta": old(t1, j, u1),
        "gamma": old(t1, u2, j),
        "delta": old(t2, v1, v2),
        "epsilon": old(t2, j, v1),
        "eta": old(t2, v2, j),
    }
    beta, gamma = roles["beta"], roles["gamma"]
    eps, eta = roles["epsilon"], roles["eta"]
    correspondence = {
        star_name(beta): old(t1, u1, j),
        star_name(gamma): old(t2, j, u2),
        star_name(eps): old(t2, v1, j),
        star_name(eta): old(t1, j, v2),
        f"[{beta}.{eta}]": old(t1, v2, u1),
        f"[{eps}.{gamma}]": old(t2, u2, v1),
    }
    return FlipResult(
        triangulation=new_t,
        arc=j,
        tri1=t1,
        tri2=t2,
        sides={"u1": u1, "u2": u2, "v1": v1, "v2": v2},
        corners={"w": w, "x": x, "y": y, "z": z},
        roles=roles,
        correspondence=correspondence,
        twist_arrows=(star_name(beta), star_name(eta)),
    )


# -- serialization ---------------------------------------------------------------


def triangulation_to_text(t: Triangulation) -> str:
    lines = []
    for name in sorted(t.triangles):
        sides, corners = t.triangles[name]
        bits = " ".join(f"{s}@{c}" for s, c in zip(sides, corners))
        lines.append(f"triangle {name}: {bits}")
    if t.boundary:
        lines.append("boundary: " + " ".join(sorted(t.boundary)))
    for p in sorted(t.scalars):
        v = t.scalars[p]
        lines.append(f"scalar {p}={v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


def triangulation_from_text(text: str) -> Triangulation:
    triangles = {}
    boundary = []
    scalars = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("triangle "):
            head, _, rest = line.partition(":")
            name = head[len("triangle "):].strip()
            toks = rest.split()
            if len(toks) != 3 or any("@" not in tok for tok in toks):
                raise TriangulationError(f"line {ln}: expected 3 side@corner tokens")
            sides, corners = zip(*(tok.split("@", 1) for tok in toks))
            if name in triangles:
                raise TriangulationError(f"line {ln}: duplicate triangle {name}")
            triangles[name] = (sides, corners)
        elif line.startswith("boundary:"):
            boundary.extend(line[len("boundary:"):].split())
        elif line.startswith("scalar "):
            body = line[len("scalar "):]
            name, _, val = body.partition("=")
            scalars[name.strip()] = Fraction(val.strip())
        else:
            raise TriangulationError(f"line {ln}: unrecognized directive")
    if not triangles:
        raise TriangulationError("no triangles defined")
    return Triangulation(triangles, boundary, scalars)


def flip_matches_mutation(t: Triangulation, j: str, bound: int = 16):
    """Compare the flipped triangulation's QP quiver with the mutated one.

    Mutation is potential-guided (the reduction pairs each 2-cycle with the
    partner from the degree-2 terms).  Mutated arrows are renamed through
    the quadrilateral correspondence; any arrows still unmatched must pair
    up uniquely by endpoints (this happens when a triangle adjacent to the
    flip quadrilateral shares two sides with another, so the two reductions
    delete different members of a parallel pair).  Returns (equal, renaming).
    """
    from .qp import mutate_qp

    fr = flip(t, j)
    qp_tau = surface_qp(t, bound)
    mut, _deleted, _phi = mutate_qp(qp_tau, j, bound)
    qp_sigma = surface_qp(fr.triangulation, bound)
    rename = dict(fr.correspondence)
    mut_named = {rename.get(a.name, a.name): (a.tail, a.head) for a in mut.quiver.arrows}
    sig_named = {a.name: (a.tail, a.head) for a in qp_sigma.quiver.arrows}
    left_m = {n: e for n, e in mut_named.items() if n not in sig_named}
    left_s = {n: e for n, e in sig_named.items() if n not in mut_named}
    matched = {
        n: e for n, e in mut_named.items() if n in sig_named and sig_named[n] == e
    }
    if len(matched) + len(left_m) != len(mut_named):
        return False, rename  # a shared name with different endpoints
    # leftover arrows must biject by endpoints, one parallel arrow per side
    by_ends_m = {}
    for n, e in sorted(left_m.items()):
        by_ends_m.setdefault(e, []).append(n)
    by_ends_s = {}
    for n, e in sorted(left_s.items()):
        by_ends_s.setdefault(e, []).append(n)
    if sorted(by_ends_m) != sorted(by_ends_s):
        return False, rename
    for e, names_m in by_ends_m.items():
        names_s = by_ends_s[e]
        if len(names_m) != len(names_s):
            return False, rename
        for nm, ns in zip(names_m, names_s):
            rename[nm] = ns
    return True, rename
