"""Path algebra elements over Q, potentials, and the truncated Jacobian ideal.

Paths compose like functions: in a path ``(a1, a2, ..., ad)`` the arrow
``ad`` acts first, so the path runs from ``tail(ad)`` to ``head(a1)``, and
the product ``u * v`` is "u after v" (concatenation ``u + v``), defined when
``tail(u) == head(v)``.

Infinite sums from the complete path algebra are handled by truncating at a
degree bound N: every operation takes or carries a bound and drops longer
paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quiver import Quiver


@dataclass(frozen=True)
class Path:
    """A path: tuple of arrow names in composition order, or an idempotent.

    Idempotents have an empty arrow tuple plus the vertex in ``at``.
    """

    arrows: tuple[str, ...]
    at: str | None = None

    def __post_init__(self):
        if (len(self.arrows) == 0) != (self.at is not None):
            raise ValueError("idempotent paths need 'at', others must not set it")

    def __len__(self):
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.at or "")


def idem(v: str) -> Path:
    return Path((), v)


def path_tail(q: Quiver, p: Path) -> str:
    return p.at if p.at is not None else q.arrow(p.arrows[-1]).tail


def path_head(q: Quiver, p: Path) -> str:
    return p.at if p.at is not None else q.arrow(p.arrows[0]).head


def is_composable(q: Quiver, p: Path) -> bool:
    for i in range(len(p.arrows) - 1):
        if q.arrow(p.arrows[i]).tail != q.arrow(p.arrows[i + 1]).head:
            return False
    return True


def is_cycle(q: Quiver, p: Path) -> bool:
    return len(p) > 0 and path_tail(q, p) == path_head(q, p)


class PathElement:
    """Finite Q-linear combination of paths of a fixed quiver."""

    def __init__(self, q: Quiver, terms=None):
        self.q = q
        self.terms: dict[Path, Fraction] = {}
        if terms:
            for p, c in (terms.items() if isinstance(terms, dict) else terms):
                if not isinstance(p, Path):
                    p = Path(tuple(p)) if p else None
                c = Fraction(c)
                if c == 0:
                    continue
                if not is_composable(q, p):
                    raise ValueError(f"non-composable path {p.arrows}")
                self.terms[p] = self.terms.get(p, Fraction(0)) + c
                if self.terms[p] == 0:
                    del self.terms[p]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(q: Quiver) -> "PathElement":
        return PathElement(q)

    @staticmethod
    def arrow(q: Quiver, name: str, coeff=1) -> "PathElement":
        return PathElement(q, {Path((name,)): Fraction(coeff)})

    @staticmethod
    def path(q: Quiver, arrows, coeff=1) -> "PathElement":
        return PathElement(q, {Path(tuple(arrows)): Fraction(coeff)})

    @staticmethod
    def idempotent(q: Quiver, v: str) -> "PathElement":
        return PathElement(q, {idem(v): Fraction(1)})

    # -- basics ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, PathElement)
            and self.q is other.q
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "PathElement(0)"
        bits = []
        for p in sorted(self.terms, key=Path.sort_key):
            c = self.terms[p]
            word = " ".join(p.arrows) if p.arrows else f"e_{p.at}"
            bits.append(f"{c} * {word}")
        return "PathElement(" + " + ".join(bits) + ")"

    def copy(self) -> "PathElement":
        out = PathElement(self.q)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "PathElement") -> "PathElement":
        out = self.copy()
        for p, c in other.terms.items():
            out.terms[p] = out.terms.get(p, Fraction(0)) + c
            if out.terms[p] == 0:
                del out.terms[p]
        return out

    def __sub__(self, other: "PathElement") -> "PathElement":
        return self + other.scale(-1)

    def scale(self, c) -> "PathElement":
        c = Fraction(c)
        out = PathElement(self.q)
        if c != 0:
            out.terms = {p: c * v for p, v in self.terms.items()}
        return out

    def __mul__(self, other: "PathElement") -> "PathElement":
        """Bilinear product; incomposable path pairs multiply to zero."""
        out = PathElement(self.q)
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                if p1.at is not None:
                    if p1.at != path_head(self.q, p2):
                        continue
                    prod = p2
                elif p2.at is not None:
                    if path_tail(self.q, p1) != p2.at:
                        continue
                    prod = p1
                else:
                    if path_tail(self.q, p1) != path_head(self.q, p2):
                        continue
                    prod = Path(p1.arrows + p2.arrows)
                out.terms[prod] = out.terms.get(prod, Fraction(0)) + c1 * c2
                if out.terms[prod] == 0:
                    del out.terms[prod]
        return out

    def truncate(self, bound: int) -> "PathElement":
        out = PathElement(self.q)
        out.terms = {p: c for p, c in self.terms.items() if len(p) <= bound}
        return out

    def min_degree(self) -> int | None:
        return min((len(p) for p in self.terms), default=None)

    def arrows_used(self) -> set[str]:
        return {a for p in self.terms for a in p.arrows}


# -- cyclic structure ---------------------------------------------------------


def rotations(p: Path):
    return [Path(p.arrows[i:] + p.arrows[:i]) for i in range(len(p.arrows))]


def cyclic_normal_form(p: Path) -> Path:
    """Lexicographically least rotation of the arrow-name sequence."""
    if not p.arrows:
        return p
    return min(rotations(p), key=lambda r: r.arrows)


def cyclic_normalize(elem: PathElement) -> PathElement:
    """Replace every cycle term by its cyclic normal form (idempotents and
    cycles only are expected in potentials, but any element is accepted:
    non-cycles pass through unchanged)."""
    out = PathElement(elem.q)
    for p, c in elem.terms.items():
        key = cyclic_normal_form(p) if is_cycle(elem.q, p) else p
        out.terms[key] = out.terms.get(key, Fraction(0)) + c
        if out.terms[key] == 0:
            del out.terms[key]
    return out


def cyclically_equivalent(s1: PathElement, s2: PathElement) -> bool:
    return cyclic_normalize(s1).terms == cyclic_normalize(s2).terms


def cyclic_derivative(s: PathElement, arrow_name: str) -> PathElement:
    """Sum over occurrences of the arrow in each cycle of the rotated
    remainder; invariant under cyclic equivalence of the input."""
    q = s.q
    out = PathElement(q)
    for p, c in s.terms.items():
        arrs = p.arrows
        for i, a in enumerate(arrs):
            if a != arrow_name:
                continue
            rest = arrs[i + 1:] + arrs[:i]
            key = Path(rest) if rest else idem(q.arrow(arrow_name).tail)
            out.terms[key] = out.terms.get(key, Fraction(0)) + c
            if out.terms[key] == 0:
                del out.terms[key]
    return out


def rotate_off_vertex(p: Path, q: Quiver, j: str) -> Path:
    """Rotate a cycle so its basepoint (tail of the last arrow) is not j."""
    for r in rotations(p):
        if path_tail(q, r) != j:
            return r
    raise ValueError(f"cycle {p.arrows} passes only through {j}")


# -- substitution ------------------------------------------------------------


def substitute(elem: PathElement, images: dict[str, PathElement],
               target: Quiver, bound: int) -> PathElement:
    """Apply the algebra homomorphism sending each arrow to its image.

    Arrows absent from ``images`` map to themselves (they must exist in the
    target quiver).  Truncates at ``bound``.
    """
    out = PathElement(target)
    for p, c in elem.terms.items():
        if p.at is not None:
            acc = PathElement.idempotent(target, p.at)
        else:
            acc = None
            for a in p.arrows:
                img = images.get(a)
                if img is None:
                    img = PathElement.arrow(target, a)
                acc = img if acc is None else (acc * img).truncate(bound)
        for pp, cc in acc.terms.items():
            out.terms[pp] = out.terms.get(pp, Fraction(0)) + c * cc
            if out.terms[pp] == 0:
                del out.terms[pp]
    return out.truncate(bound)


# -- splitting / reduction -----------------------------------------------------


class SplitError(ValueError):
    pass


def split_reduce(q: Quiver, s: PathElement, bound: int):
    """Split off the trivial (degree-2) part of a potential.

    Handles the case where the degree-2 component is a sum of 2-cycles in
    which no arrow occurs twice.  Performs iterated substitutions until no
    arrow of a 2-cycle occurs elsewhere in the potential, then deletes those
    arrows.

    Returns (q_red, s_red, phi) where phi maps each eliminated arrow to its
    accumulated image (kept arrows are untouched, i.e. map identically).
    """
    s = cyclic_normalize(s).truncate(bound)
    pairs = []  # (u, v, coeff) for terms coeff * (u, v)
    paired: set[str] = set()
    for p, c in s.terms.items():
        if len(p) == 2:
            u, v = p.arrows
            if u == v:
                raise SplitError("general splitting required: repeated arrow in a 2-cycle")
            if u in paired or v in paired:
                raise SplitError("general splitting required: arrow shared between 2-cycles")
            paired.update((u, v))
            pairs.append((u, v, c))
        elif len(p) < 2:
            raise SplitError("potential has terms of degree < 2")
    # arrows of 2-cycles must not be hit twice across different pairs either;
    # the 'paired' bookkeeping above already guarantees that.
    phi: dict[str, PathElement] = {}
    for _round in range(bound + 2):
        dirty = False
        for (u, v, c) in pairs:
            du = cyclic_derivative(s, u)  # = c*v + extra, endpoints of v
            dv = cyclic_derivative(s, v)
            eu = du - PathElement.arrow(q, v, c)
            ev = dv - PathElement.arrow(q, u, c)
            if eu.is_zero() and ev.is_zero():
                continue
            dirty = True
            rho = {
                v: PathElement.arrow(q, v) - eu.scale(Fraction(1, c)),
                u: PathElement.arrow(q, u) - ev.scale(Fraction(1, c)),
            }
            s = cyclic_normalize(substitute(s, rho, q, bound))
            for a in list(phi):
                phi[a] = substitute(phi[a], rho, q, bound)
            for a, img in rho.items():
                if a not in phi:
                    phi[a] = img
        if not dirty:
            break
    else:
        raise SplitError("splitting did not converge within the truncation bound")

    deleted = paired
    kept_arrows = [a for a in q.arrows if a.name not in deleted]
    q_red = Quiver(q.vertices, kept_arrows)
    s_red = PathElement(q_red)
    for p, c in s.terms.items():
        if len(p) == 2 and set(p.arrows) <= deleted:
            continue
        if set(p.arrows) & deleted:
            raise SplitError("residual term still uses a deleted arrow")
        s_red.terms[p] = c
    return q_red, s_red, phi


# -- truncated Jacobian ideal ---------------------------------------------------


class _UnionFind:
    """Union-find with multiplicative Fraction weights and zero-marking.

    value[i] = weight[i] * value[root(i)]; a zeroed root means every class
    member is in the ideal span.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.weight = [Fraction(1)] * n
        self.zero = [False] * n

    def find(self, i: int):
        path = []
        while self.parent[i] != i:
            path.append(i)
            i = self.parent[i]
        w = Fraction(1)
        for j in reversed(path):
            w = w * self.weight[j]
            self.weight[j] = w
            self.parent[j] = i
        return i

    def weight_to_root(self, i: int) -> Fraction:
        self.find(i)
        return self.weight[i] if self.parent[i] != i else Fraction(1)

    def mark_zero(self, i: int):
        self.zero[self.find(i)] = True

    def is_zero(self, i: int) -> bool:
        return self.zero[self.find(i)]

    def union(self, i: int, j: int, ratio: Fraction):
        """Impose value[i] = ratio * value[j]."""
        ri, rj = self.find(i), self.find(j)
        wi = self.weight[i] if self.parent[i] != i else Fraction(1)
        wj = self.weight[j] if self.parent[j] != j else Fraction(1)
        if ri == rj:
            # value[i] = wi*root, value[j] = wj*root: consistency needs
            # wi == ratio * wj, otherwise the whole class collapses to 0.
            if wi != ratio * wj:
                self.zero[ri] = True
            return
        # value[ri] = (ratio * wj / wi) * value[rj]
        self.parent[ri] = rj
        self.weight[ri] = ratio * wj / wi
        if self.zero[ri]:
            self.zero[rj] = True


class JacobianIdeal:
    """Span of { p * (d S / d a) * r : length <= N } inside paths of length <= N.

    Uses an exact weighted union-find when every cyclic derivative has at
    most two path terms (true for triangulation potentials), and a sparse
    echelon saturation otherwise.  Both routes compute the same span.
    """

    def __init__(self, q: Quiver, s: PathElement, bound: int,
                 with_rotations: bool = False):
        self.q = q
        self.bound = bound
        s = cyclic_normalize(s).truncate(bound)
        relations = []
        for a in q.arrows:
            d = cyclic_derivative(s, a.name).truncate(bound)
            if any(p.at is not None for p in d.terms):
                raise ValueError("potentials with loops are not supported")
            if not d.is_zero():
                relations.append(d)
        if any(len(r.terms) > 2 for r in relations):
            self._impl = _EchelonIdeal(q, s, relations, bound, with_rotations)
        else:
            self._impl = _BinomialIdeal(q, relations, bound, with_rotations)

    def contains(self, elem: PathElement) -> bool:
        elem = elem.truncate(self.bound)
        if any(p.at is not None for p in elem.terms):
            return False
        return self._impl.contains(elem)

    def contains_path(self, arrows: tuple[str, ...]) -> bool:
        return self.contains(PathElement.path(self.q, arrows))

    def all_paths_of_length(self, length: int):
        return self._impl.paths_of_length(length)


def _enumerate_paths(q: Quiver, bound: int):
    """All composable arrow sequences of length 1..bound, in application
    order (first arrow applied is first in the tuple)."""
    out_by_vertex: dict[str, list] = {v: [] for v in q.vertices}
    for a in q.arrows:
        out_by_vertex[a.tail].append(a)
    paths = []
    frontier = [((a.name,), a.head) for a in q.arrows]
    for _ in range(bound):
        paths.extend(frontier)
        nxt = []
        for word, end in frontier:
            if len(word) == bound:
                continue
            for a in out_by_vertex[end]:
                nxt.append((word + (a.name,), a.head))
        if not nxt:
            break
        frontier = nxt
    return [w for w, _ in paths]


def _to_application_order(p: Path) -> tuple[str, ...]:
    return tuple(reversed(p.arrows))


class _BinomialIdeal:
    def __init__(self, q: Quiver, relations, bound: int, with_rotations: bool):
        self.q = q
        self.bound = bound
        names = sorted({a.name for a in q.arrows})
        # encode arrow names as single characters for fast substring scans
        self.code = {n: chr(33 + i) for i, n in enumerate(names)}
        words = _enumerate_paths(q, bound)
        self.encoded = ["".join(self.code[a] for a in w) for w in words]
        self.index = {w: i for i, w in enumerate(self.encoded)}
        self.word_len = [len(w) for w in self.encoded]
        self.uf = _UnionFind(len(self.encoded))
        rels = []
        for r in relations:
            terms = [( "".join(self.code[a] for a in _to_application_order(p)), c)
                     for p, c in r.terms.items()]
            rels.append(terms)
        for terms in rels:
            if len(terms) == 1:
                self._scan_monomial(terms[0][0])
            else:
                (u, cu), (v, cv) = terms
                self._scan_binomial(u, cu, v, cv)
        if with_rotations:
            self._add_rotations()

    def _occurrences(self, sub: str):
        for i, w in enumerate(self.encoded):
            pos = w.find(sub)
            while pos != -1:
                yield i, w, pos
                pos = w.find(sub, pos + 1)

    def _scan_monomial(self, u: str):
        for i, _, _ in self._occurrences(u):
            self.uf.mark_zero(i)

    def _scan_binomial(self, u: str, cu: Fraction, v: str, cv: Fraction):
        # generator cu * (p u r) + cv * (p v r): value(puq) = -(cv/cu) value(pvr)
        for i, w, pos in self._occurrences(u):
            partner = w[:pos] + v + w[pos + len(u):]
            if len(partner) <= self.bound:
                j = self.index[partner]
                self.uf.union(i, j, -cv / cu)
            else:
                self.uf.mark_zero(i)
        for i, w, pos in self._occurrences(v):
            partner = w[:pos] + u + w[pos + len(v):]
            if len(partner) > self.bound:
                self.uf.mark_zero(i)

    def _add_rotations(self):
        heads = {self.code[a.name]: a.head for a in self.q.arrows}
        tails = {self.code[a.name]: a.tail for a in self.q.arrows}
        for i, w in enumerate(self.encoded):
            if tails[w[0]] != heads[w[-1]]:
                continue
            rot = w[1:] + w[0]
            self.uf.union(i, self.index[rot], Fraction(1))

    def contains(self, elem: PathElement) -> bool:
        sums: dict[int, Fraction] = {}
        for p, c in elem.terms.items():
            w = "".join(self.code[a] for a in _to_application_order(p))
            i = self.index.get(w)
            if i is None:
                return False
            if self.uf.is_zero(i):
                continue
            root = self.uf.find(i)
            sums[root] = sums.get(root, Fraction(0)) + c * self.uf.weight_to_root(i)
        return all(v == 0 for v in sums.values())

    def paths_of_length(self, length: int):
        inv = {v: k for k, v in self.code.items()}
        for w in self.encoded:
            if len(w) == length:
                yield tuple(reversed([inv[ch] for ch in w]))


class _EchelonIdeal:
    """Sparse echelon saturation; fine for small quivers and bounds."""

    def __init__(self, q: Quiver, s: PathElement, relations, bound: int,
                 with_rotations: bool):
        self.q = q
        self.bound = bound
        self.basis: dict[tuple, dict] = {}  # leading word -> vector(word->coeff)
        queue = []
        for r in relations:
            v = {_to_application_order(p): c for p, c in r.terms.items()}
            if v:
                queue.append(v)
        heads = {v: [a for a in q.arrows if a.tail == v] for v in q.vertices}
        tails = {v: [a for a in q.arrows if a.head == v] for v in q.vertices}
        while queue:
            vec = queue.pop()
            red = self._reduce(vec)
            if not red:
                continue
            lead = min(red, key=lambda w: (len(w), w))
            c = red[lead]
            red = {w: x / c for w, x in red.items()}
            self.basis[lead] = red
            # close under multiplication by single arrows on both sides
            start = self.q.arrow(lead[0]).tail  # common start/end across the
            end = self.q.arrow(lead[-1]).head   # vector (relations are uniform)
            for a in tails[start]:
                nv = {}
                for w, x in red.items():
                    nw = (a.name,) + w
                    if len(nw) <= bound:
                        nv[nw] = x
                if nv:
                    queue.append(nv)
            for a in heads[end]:
                nv = {}
                for w, x in red.items():
                    nw = w + (a.name,)
                    if len(nw) <= bound:
                        nv[nw] = x
                if nv:
                    queue.append(nv)
        if with_rotations:
            # rotation differences are added to the span without closing
            # under multiplication (they generate a subspace, not an ideal)
            for w in _enumerate_paths(q, bound):
                if q.arrow(w[0]).tail != q.arrow(w[-1]).head:
                    continue
                rot = w[1:] + (w[0],)
                vec = {w: Fraction(1)}
                vec[rot] = vec.get(rot, Fraction(0)) - Fraction(1)
                red = self._reduce({k: v for k, v in vec.items() if v})
                if red:
                    lead = min(red, key=lambda t: (len(t), t))
                    c = red[lead]
                    self.basis[lead] = {t: x / c for t, x in red.items()}

    def _reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        while vec:
            lead = min(vec, key=lambda w: (len(w), w))
            b = self.basis.get(lead)
            if b is None:
                return vec
            c = vec[lead]
            for w, x in b.items():
                vec[w] = vec.get(w, Fraction(0)) - c * x
                if vec[w] == 0:
                    del vec[w]
        return vec

    def contains(self, elem: PathElement) -> bool:
        vec = {_to_application_order(p): c for p, c in elem.terms.items()}
        return not self._reduce(vec)

    def paths_of_length(self, length: int):
        for w in _enumerate_paths(self.q, length):
            if len(w) == length:
                yield tuple(reversed(w))


def jacobian_membership(q: Quiver, s: PathElement, elem: PathElement,
                        bound: int) -> bool:
    return JacobianIdeal(q, s, bound).contains(elem)


def jacobian_nilpotency_bound(q: Quiver, s: PathElement, bound: int):
    """Smallest L <= bound such that every path of length L lies in the
    truncated Jacobian ideal; None if no such L exists below the bound."""
    ideal = JacobianIdeal(q, s, bound)
    for L in range(1, bound + 1):
        if all(ideal.contains_path(w) for w in ideal.all_paths_of_length(L)):
            return L
    return None


def is_rigid_truncated(q: Quiver, s: PathElement, cycle_bound: int,
                       bound: int) -> bool:
    """True if every cycle of length <= cycle_bound is cyclically equivalent
    to an element of the truncated Jacobian ideal."""
    ideal = JacobianIdeal(q, s, bound, with_rotations=True)
    seen = set()
    for w in _enumerate_paths(q, cycle_bound):
        if q.arrow(w[0]).tail != q.arrow(w[-1]).head:
            continue
        p = cyclic_normal_form(Path(tuple(reversed(w))))
        if p in seen:
            continue
        seen.add(p)
        if not ideal.contains(PathElement(q, {p: Fraction(1)})):
            return False
    return True


# -- serialization -------------------------------------------------------------


def potential_to_text(s: PathElement) -> str:
    lines = []
    for p in sorted(s.terms, key=Path.sort_key):
        lines.append(f"{s.terms[p]} * " + " ".join(p.arrows))
    return "\n".join(lines) + ("\n" if lines else "")


def potential_from_text(q: Quiver, text: str) -> PathElement:
    terms = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        coeff, _, word = line.partition("*")
        arrows = tuple(word.split())
        p = Path(arrows)
        terms[p] = terms.get(p, Fraction(0)) + Fraction(coeff.strip())
    return PathElement(q, terms)
