"""Command-line interface: load surface and curve files, run the pipelines.

Every command prints a deterministic report.  Exit status: 0 when every
check passes, 1 when some check fails, 2 when an isomorphism search is
inconclusive (the intertwiner space is dumped for inspection).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .arcrep import (arc_from_text, arc_representation, find_detours,
                     verify_flip_mutation)
from .pathalg import JacobianIdeal, potential_to_text
from .qp import DEFAULT_TRUNCATION
from .quiver import mutate_quiver, quiver_to_text
from .rep import DecRep, ISO_SEED, _intertwiner_space, is_isomorphic, negative_simple
from .repmut import g_vector, mutate_rep
from .surface import (Triangulation, flip, flip_matches_mutation, reduced_quiver,
                      surface_qp, triangulation_from_text, triangulation_to_text)

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


class Report:
    """Accumulates named checks and renders them in text or machine form."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.checks = []
        self.lines = []

    def emit(self, text: str):
        self.lines.append(text)

    def kv(self, key: str, value):
        if self.fmt == "machine":
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(f"{key}: {value}")

    def check(self, name: str, status: str, details: str = ""):
        self.checks.append((name, status))
        if self.fmt == "machine":
            self.lines.append(f"check.{name}={status}")
            if details:
                self.lines.append(f"check.{name}.details={details}")
        else:
            msg = f"[{status.upper()}] {name}"
            if details:
                msg += f" ({details})"
            self.lines.append(msg)

    def exit_code(self) -> int:
        statuses = [s for _n, s in self.checks]
        if any(s == FAIL for s in statuses):
            return 1
        if any(s == UNDETERMINED for s in statuses):
            return 2
        return 0

    def render(self) -> str:
        return "\n".join(self.lines)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_matrix(m) -> str:
    return "[" + "; ".join(
        " ".join(_fmt_frac(x) for x in row) for row in m.data
    ) + "]"


def _load_triangulation(path: str, scalars: str | None) -> Triangulation:
    t = triangulation_from_text(Path(path).read_text())
    if scalars:
        new = dict(t.scalars)
        for part in scalars.split(","):
            name, _, val = part.partition("=")
            new[name.strip()] = Fraction(val.strip())
        t = Triangulation(t.triangles, t.boundary, new)
    return t


def _load_arc(path: str, t: Triangulation):
    return arc_from_text(Path(path).read_text(), t)


def _print_rep(rep: DecRep, rpt: Report):
    for v in sorted(rep.dims):
        rpt.kv(f"dim.{v}", rep.dims[v])
    for v in sorted(rep.dec):
        if rep.dec[v]:
            rpt.kv(f"dec.{v}", rep.dec[v])
    for name in sorted(rep.maps):
        m = rep.maps[name]
        if m.rows and m.cols and any(x for row in m.data for x in row):
            rpt.kv(f"map.{name}", _fmt_matrix(m))


def _dump_hom_space(r1: DecRep, r2: DecRep, rpt: Report):
    offsets, basis = _intertwiner_space(r1, r2)
    rpt.kv("hom.dimension", basis.cols)
    for k in range(basis.cols):
        col = [basis[i, k] for i in range(basis.rows)]
        rpt.kv(f"hom.basis.{k}",
               " ".join(_fmt_frac(x) for x in col))


# -- subcommands -----------------------------------------------------------------


def cmd_surface_qp(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    qp = surface_qp(t, args.truncate)
    rpt.emit(quiver_to_text(qp.quiver).rstrip())
    rpt.kv("potential", potential_to_text(qp.potential).replace("\n", " + "))
    rpt.check("load", PASS)


def cmd_flip(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    fr = flip(t, args.arc)
    rpt.emit(triangulation_to_text(fr.triangulation).rstrip())
    ok, _rename = flip_matches_mutation(t, args.arc, args.truncate)
    mutated = mutate_quiver(reduced_quiver(t), args.arc)
    flipped = reduced_quiver(fr.triangulation)
    counts_ok = mutated.same_arrow_counts(flipped)
    rpt.check("quiver-mutation-matches-flip",
              PASS if (ok and counts_ok) else FAIL)


def cmd_arc_rep(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    arc = _load_arc(args.arc_file, t)
    rep = arc_representation(t, arc, args.truncate)
    _print_rep(rep, rpt)
    for d in find_detours(t, arc):
        rpt.kv(f"detour.{d.arc}.{d.t1}.{d.t2}",
               f"order={d.order} triangle={d.triangle} puncture={d.puncture}")
    rpt.check("relations", PASS if rep.check_relations() else FAIL)
    rpt.check("nilpotent", PASS if rep.check_nilpotent() else FAIL)


def cmd_verify_flip_mutation(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    arc = _load_arc(args.arc_file, t)
    status, details = verify_flip_mutation(t, arc, args.arc, args.truncate)
    for key, val in sorted(details.items()):
        if isinstance(val, dict):
            for v, x in sorted(val.items()):
                rpt.kv(f"{key}.{v}", x)
        elif isinstance(val, (str, int, bool)):
            rpt.kv(key, val)
    if status is None:
        rpt.check("mutation-equals-flip", UNDETERMINED)
        _dump_hom_space(details["mutated_rep"], details["flipped_rep"], rpt)
    else:
        rpt.check("mutation-equals-flip", PASS if status else FAIL)


def cmd_mutation_chain(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    arc = _load_arc(args.arc_file, t)
    rep = arc_representation(t, arc, args.truncate)
    for j in args.vertices:
        rep = mutate_rep(rep, j, args.truncate)
    _print_rep(rep, rpt)
    rpt.kv("potential", potential_to_text(rep.qp.potential).replace("\n", " + "))
    if args.negative_simple:
        target = negative_simple(rep.qp, args.negative_simple)
        verdict = is_isomorphic(rep, target, seed=args.seed)
        if verdict is None:
            rpt.check("negative-simple", UNDETERMINED)
            _dump_hom_space(rep, target, rpt)
        else:
            rpt.check("negative-simple", PASS if verdict else FAIL)
    else:
        rpt.check("chain", PASS)


def cmd_jacobian(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    qp = surface_qp(t, args.truncate)
    ideal = JacobianIdeal(qp.quiver, qp.potential, args.truncate)
    bound = None
    for length in range(1, args.truncate + 1):
        if all(ideal.contains_path(w) for w in ideal.all_paths_of_length(length)):
            bound = length
            break
    rpt.kv("nilpotency-bound", bound)
    if args.vanish_length is not None:
        ln = args.vanish_length
        paths = list(ideal.all_paths_of_length(ln))
        bad = [w for w in paths if not ideal.contains_path(w)]
        rpt.kv(f"paths-of-length-{ln}", len(paths))
        if bad:
            rpt.check(f"length-{ln}-vanishes", FAIL,
                      f"survivors: {[' '.join(w) for w in bad[:5]]}")
        else:
            rpt.check(f"length-{ln}-vanishes", PASS)
    else:
        rpt.check("nilpotency", PASS if bound is not None else FAIL)


def cmd_gvector(args, rpt: Report) -> None:
    t = _load_triangulation(args.triangulation, args.scalars)
    arc = _load_arc(args.arc_file, t)
    rep = arc_representation(t, arc, args.truncate)
    g = g_vector(rep)
    for v in sorted(g):
        rpt.kv(f"g.{v}", g[v])
    rpt.check("gvector", PASS)


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="surfqp",
        description="Quivers with potentials from triangulated surfaces, "
                    "arc representations, and their mutations.")
    p.add_argument("--truncate", type=int, default=DEFAULT_TRUNCATION,
                   help="potential/ideal truncation length")
    p.add_argument("--scalars", default=None,
                   help="override puncture scalars, e.g. 'p=2,q=3'")
    p.add_argument("--seed", default=hex(ISO_SEED),
                   help="hex seed for the isomorphism search")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("surface-qp", help="print the QP of a triangulation")
    sp.add_argument("triangulation")
    sp.set_defaults(func=cmd_surface_qp)

    fp = sub.add_parser("flip", help="flip an arc and cross-check quiver mutation")
    fp.add_argument("triangulation")
    fp.add_argument("arc")
    fp.set_defaults(func=cmd_flip)

    ap = sub.add_parser("arc-rep", help="print the arc representation")
    ap.add_argument("triangulation")
    ap.add_argument("arc_file")
    ap.set_defaults(func=cmd_arc_rep)

    vp = sub.add_parser("verify-flip-mutation",
                        help="compare mutation with the flipped representation")
    vp.add_argument("triangulation")
    vp.add_argument("arc_file")
    vp.add_argument("arc")
    vp.set_defaults(func=cmd_verify_flip_mutation)

    mp = sub.add_parser("mutation-chain", help="mutate a representation along vertices")
    mp.add_argument("triangulation")
    mp.add_argument("arc_file")
    mp.add_argument("vertices", nargs="+")
    mp.add_argument("--negative-simple", default=None, metavar="VERTEX",
                    help="compare the final representation with the negative "
                         "simple at VERTEX")
    mp.set_defaults(func=cmd_mutation_chain)

    jp = sub.add_parser("jacobian", help="nilpotency and path-vanishing checks")
    jp.add_argument("triangulation")
    jp.add_argument("--vanish-length", type=int, default=None,
                    help="assert every path of this length lies in the ideal")
    jp.set_defaults(func=cmd_jacobian)

    gp = sub.add_parser("gvector", help="print the g-vector of an arc representation")
    gp.add_argument("triangulation")
    gp.add_argument("arc_file")
    gp.set_defaults(func=cmd_gvector)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    args.seed = int(str(args.seed), 16)
    rpt = Report(args.format)
    try:
        args.func(args, rpt)
    except Exception as ex:  # surface a clean error for malformed input
        rpt.kv("error", str(ex))
        rpt.check("run", FAIL, type(ex).__name__)
    print(rpt.render())
    return rpt.exit_code()


if __name__ == "__main__":
    sys.exit(main())
