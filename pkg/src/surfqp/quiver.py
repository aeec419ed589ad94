"""Quivers (finite directed multigraphs) and quiver mutation.

Arrows carry string ids.  Mutation at a vertex j follows the three-step
recipe: add a composite arrow ``[a.b]`` for every 2-path through j, reverse
the arrows incident to j (``a`` becomes ``a*``), then delete 2-cycles until
none remain.  Premutation is the first two steps only.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


class Quiver:
    """Vertices and arrows, arrow order preserved from construction."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(*a)
            if a.tail not in vs or a.head not in vs:
                raise ValueError(f"arrow {a.name} has endpoint outside vertex set")
            arrs.append(a)
        self.arrows = tuple(arrs)
        self.by_name = {a.name: a for a in self.arrows}
        if len(self.by_name) != len(self.arrows):
            raise ValueError("duplicate arrow name")

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def arrow(self, name: str) -> Arrow:
        return self.by_name[name]

    def arrows_into(self, v: str):
        return [a for a in self.arrows if a.head == v]

    def arrows_out_of(self, v: str):
        return [a for a in self.arrows if a.tail == v]

    def has_loop_or_two_cycle_at(self, j: str) -> bool:
        if any(a.tail == j and a.head == j for a in self.arrows):
            return True
        ins = {a.tail for a in self.arrows_into(j)}
        outs = {a.head for a in self.arrows_out_of(j)}
        return bool(ins & outs)

    def is_two_acyclic(self) -> bool:
        pairs = {(a.tail, a.head) for a in self.arrows}
        return not any(t == h or (h, t) in pairs for t, h in pairs)

    def same_arrow_counts(self, other: "Quiver") -> bool:
        """Equality as a labeled quiver: same vertices, same number of
        arrows between each ordered vertex pair."""
        if set(self.vertices) != set(other.vertices):
            return False

        def counts(q):
            c: dict[tuple[str, str], int] = {}
            for a in q.arrows:
                c[(a.tail, a.head)] = c.get((a.tail, a.head), 0) + 1
            return c

        return counts(self) == counts(other)


def composite_name(out_arrow: Arrow, in_arrow: Arrow) -> str:
    return f"[{out_arrow.name}.{in_arrow.name}]"


def star_name(name: str) -> str:
    return name + "*"


def hooks(q: Quiver, j: str):
    """All 2-paths through j: pairs (a, b) with tail(a) = j = head(b).

    The pair represents the path "a after b"; arrow order follows the
    quiver's arrow list (outer loop over a, inner over b).
    """
    outs = q.arrows_out_of(j)
    ins = q.arrows_into(j)
    return [(a, b) for a in outs for b in ins]


def premutate_quiver(q: Quiver, j: str) -> Quiver:
    """Steps 1-2 of mutation: composites for hooks, reverse arrows at j."""
    if j not in q.vertices:
        raise ValueError(f"unknown vertex {j}")
    if q.has_loop_or_two_cycle_at(j):
        raise ValueError(f"mutation undefined: loop or 2-cycle at {j}")
    new_arrows: list[Arrow] = []
    for a in q.arrows:
        if a.tail == j or a.head == j:
            new_arrows.append(Arrow(star_name(a.name), a.head, a.tail))
        else:
            new_arrows.append(a)
    for a, b in hooks(q, j):
        new_arrows.append(Arrow(composite_name(a, b), b.tail, a.head))
    return Quiver(q.vertices, new_arrows)


def delete_two_cycles(q: Quiver) -> Quiver:
    """Delete 2-cycles pairwise, scanning the arrow list in order, until the
    quiver is 2-acyclic."""
    arrows = list(q.arrows)
    while True:
        found = None
        for i, a in enumerate(arrows):
            for k in range(i + 1, len(arrows)):
                b = arrows[k]
                if a.tail == b.head and a.head == b.tail:
                    found = (i, k)
                    break
            if found:
                break
        if not found:
            break
        i, k = found
        del arrows[k]
        del arrows[i]
    return Quiver(q.vertices, arrows)


def mutate_quiver(q: Quiver, j: str) -> Quiver:
    return delete_two_cycles(premutate_quiver(q, j))


def restrict_quiver(q: Quiver, keep) -> Quiver:
    """Keep only arrows with both endpoints in ``keep``; vertex set unchanged."""
    keep = set(keep)
    if not keep <= set(q.vertices):
        raise ValueError("restriction set contains unknown vertices")
    return Quiver(q.vertices, [a for a in q.arrows if a.tail in keep and a.head in keep])


# -- serialization ---------------------------------------------------------


def quiver_to_text(q: Quiver) -> str:
    lines = ["vertices: " + " ".join(q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name}: {a.tail} -> {a.head}")
    return "\n".join(lines) + "\n"


def quiver_from_text(text: str) -> Quiver:
    vertices = None
    arrows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            vertices = line[len("vertices:"):].split()
        elif line.startswith("arrow "):
            head, _, rest = line[len("arrow "):].partition(":")
            name = head.strip()
            parts = rest.split("->")
            if len(parts) != 2:
                raise ValueError(f"bad arrow line: {raw!r}")
            arrows.append(Arrow(name, parts[0].strip(), parts[1].strip()))
        else:
            raise ValueError(f"unrecognized line: {raw!r}")
    if vertices is None:
        raise ValueError("missing 'vertices:' line")
    return Quiver(vertices, arrows)
