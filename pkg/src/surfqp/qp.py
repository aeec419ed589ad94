"""Quivers with potentials and their mutation.

A QP couples a 2-acyclic quiver with a potential (sum of cycles, coefficients
in Q).  Mutation at a vertex j is premutation (composites + reversal, with
the potential rewritten through the composite arrows) followed by splitting
off the trivial degree-2 part.
"""

from __future__ import annotations

from fractions import Fraction

from .quiver import Quiver, hooks, premutate_quiver, restrict_quiver, composite_name, star_name
from .pathalg import (
    Path,
    PathElement,
    cyclic_normalize,
    is_cycle,
    rotate_off_vertex,
    split_reduce,
    is_rigid_truncated as _is_rigid,
    jacobian_membership,
    jacobian_nilpotency_bound,
)

DEFAULT_TRUNCATION = 16


class QP:
    def __init__(self, quiver: Quiver, potential: PathElement):
        if potential.q is not quiver:
            potential = PathElement(quiver, {p: c for p, c in potential.terms.items()})
        for p in potential.terms:
            if not is_cycle(quiver, p):
                raise ValueError(f"potential term {p.arrows} is not a cycle")
        self.quiver = quiver
        self.potential = cyclic_normalize(potential)

    def __repr__(self):
        return f"QP({self.quiver!r}, {len(self.potential.terms)} potential terms)"


def bracket_potential(qp: QP, j: str, target: Quiver, bound: int) -> PathElement:
    """The potential rewritten on the premutated quiver: every term is
    rotated so it is not based at j, and each passage through j (a hook) is
    replaced by the corresponding composite arrow."""
    q = qp.quiver
    out_terms = {}
    for p, c in qp.potential.terms.items():
        if len(p) > bound:
            continue
        arrs = rotate_off_vertex(p, q, j).arrows
        new = []
        i = 0
        while i < len(arrs):
            a = q.arrow(arrs[i])
            if a.tail == j:
                # arrs[i] acts after arrs[i+1]; the pair is a hook through j
                b = q.arrow(arrs[i + 1])
                assert b.head == j
                new.append(composite_name(a, b))
                i += 2
            else:
                new.append(arrs[i])
                i += 1
        key = Path(tuple(new))
        out_terms[key] = out_terms.get(key, Fraction(0)) + c
    return cyclic_normalize(PathElement(target, out_terms))


def premutate_qp(qp: QP, j: str, bound: int = DEFAULT_TRUNCATION) -> QP:
    q = qp.quiver
    qt = premutate_quiver(q, j)
    s = bracket_potential(qp, j, qt, bound)
    for a, b in hooks(q, j):
        extra = PathElement.path(
            qt, (star_name(b.name), star_name(a.name), composite_name(a, b))
        )
        s = s + extra
    return QP(qt, cyclic_normalize(s).truncate(bound))


def mutate_qp(qp: QP, j: str, bound: int = DEFAULT_TRUNCATION):
    """Returns (mutated QP, deleted arrow names, substitution record)."""
    pre = premutate_qp(qp, j, bound)
    q_red, s_red, phi = split_reduce(pre.quiver, pre.potential, bound)
    deleted = set(pre.quiver.by_name) - set(q_red.by_name)
    return QP(q_red, s_red), deleted, phi


def restrict_qp(qp: QP, keep) -> QP:
    keep = set(keep)
    q_r = restrict_quiver(qp.quiver, keep)
    kept_names = set(q_r.by_name)
    terms = {p: c for p, c in qp.potential.terms.items() if set(p.arrows) <= kept_names}
    return QP(q_r, PathElement(q_r, terms))


def direct_sum_qp(qp1: QP, qp2: QP) -> QP:
    """Direct sum of two QPs on the same vertex set (disjoint arrow names)."""
    if set(qp1.quiver.vertices) != set(qp2.quiver.vertices):
        raise ValueError("direct sum requires identical vertex sets")
    if set(qp1.quiver.by_name) & set(qp2.quiver.by_name):
        raise ValueError("direct sum requires disjoint arrow names")
    q = Quiver(qp1.quiver.vertices, list(qp1.quiver.arrows) + list(qp2.quiver.arrows))
    terms = {}
    for src in (qp1.potential, qp2.potential):
        for p, c in src.terms.items():
            terms[p] = c
    return QP(q, PathElement(q, terms))


def is_rigid_truncated(qp: QP, cycle_bound: int, bound: int = DEFAULT_TRUNCATION) -> bool:
    return _is_rigid(qp.quiver, qp.potential, cycle_bound, bound)


def qp_jacobian_membership(qp: QP, elem, bound: int = DEFAULT_TRUNCATION) -> bool:
    return jacobian_membership(qp.quiver, qp.potential, elem, bound)


def qp_nilpotency_bound(qp: QP, bound: int = DEFAULT_TRUNCATION):
    return jacobian_nilpotency_bound(qp.quiver, qp.potential, bound)
