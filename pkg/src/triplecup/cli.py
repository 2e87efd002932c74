"""Command-line front end.

Every verb prints a deterministic ``key=value`` report on stdout.  Problems
go to stderr as ``error: <kind>: <message>``.  Exit status is 0 on success,
1 when a verification fails and 2 on usage errors.

``--in`` takes a complex file or a generator expression such as
``circle:3``, ``torus:3``, ``torus:3:6`` or ``product:torus:3,torus:3,torus:3``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path


from . import complex as cx
from . import cupgate, homology, modelsearch, product
from .code import EXHAUSTIVE_DIM, IndexOutOfRange, css_from_complex, distance, parameters_report, subsystem_select
from .gf2 import CapacityExceeded, format_coords, rank


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ inputs


def _generator(expr: str) -> cx.SimplicialComplex:
    kind, _, rest = expr.partition(":")
    if kind == "point":
        return cx.point()
    if kind == "circle":
        return cx.circle(int(rest))
    if kind == "torus":
        parts = rest.split(":")
        return cx.torus(int(parts[0]), int(parts[1]) if len(parts) > 1 else 2)
    if kind == "product":
        return cx.product_of(*[_generator(p) for p in rest.split(",")])
    raise UsageError(f"unknown generator {expr!r}")


def load_complex(spec: str) -> cx.SimplicialComplex:
    path = Path(spec)
    if path.exists():
        return cx.read_complex(path)
    try:
        return _generator(spec)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"cannot read complex {spec!r}: {exc}") from None


def _degrees(text: str | None, n: int) -> tuple[int, int, int]:
    if text is None:
        if n % 3:
            raise UsageError(f"--q needed: dimension {n} is not divisible by 3")
        return (n // 3,) * 3
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        parts *= 3
    if len(parts) != 3:
        raise UsageError("--q takes one degree or three comma-separated degrees")
    return tuple(parts)


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [int(x) for x in text.split(",") if x != ""]


def _basis(sc: cx.SimplicialComplex, q: int, kind: str) -> homology.HomologyBasis:
    if kind == "echelon" or not sc.factors:
        return homology.homology_basis(cx.chain_complex_of(sc, verify=False), q)
    return product.kunneth_basis(sc, q)


def _bases(sc, degrees, kind):
    cache = {}
    for q in degrees:
        if q not in cache:
            cache[q] = _basis(sc, q, kind)
    return [cache[q] for q in degrees]


def _out(lines) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


# ------------------------------------------------------------------- verbs


def cmd_build(args) -> int:
    if args.spec:
        sc = _generator(args.spec)
    elif args.product:
        sc = cx.product_of(*[load_complex(p) for p in args.product])
    elif args.connected_sum:
        a, b = (load_complex(p) for p in args.connected_sum)
        sc = cx.connected_sum(a, b)
    elif args.circle:
        sc = cx.circle(args.circle)
    elif args.torus:
        sc = cx.torus(args.torus, args.dim)
    else:
        raise UsageError("build needs --spec, --circle, --torus, --product or --connected-sum")
    if args.delete_top is not None:
        sc = sc.delete_top(args.delete_top)
    if args.out:
        cx.write_complex(sc, args.out)
    _out([f"dim={sc.dim}", f"vertices={sc.n_vertices}", "f=" + ",".join(map(str, sc.f_vector)), f"closed={int(sc.is_closed_manifold)}"])
    return 0


def cmd_homology(args) -> int:
    sc = load_complex(args.input)
    cc = cx.chain_complex_of(sc, verify=False)
    betti = homology.betti_numbers(cc)
    lines = ["betti=" + ",".join(map(str, betti))]
    if args.q is not None:
        basis = _basis(sc, args.q, args.basis)
        lines.append(f"q={args.q}")
        lines.append(f"classes={basis.betti}")
        text = homology.format_basis(basis)
        if args.out:
            Path(args.out).write_text(text)
        else:
            lines += text.splitlines()
    _out(lines)
    return 0


def _code(args):
    sc = load_complex(args.input)
    cc = cx.chain_complex_of(sc, verify=False)
    code = css_from_complex(cc, args.q, logical=_basis(sc, args.q, args.basis))
    keep = _ints(args.keep)
    if keep is not None:
        code = subsystem_select(code, keep)
    return sc, code


def cmd_code(args) -> int:
    sc, code = _code(args)
    lines = parameters_report(code, budget=args.budget, seed=args.seed, threshold=args.threshold)
    if args.export:
        prefix = args.export
        Path(prefix + ".hx").write_text(format_coords(code.hx))
        Path(prefix + ".hz").write_text(format_coords(code.hz))
        Path(prefix + ".basis").write_text(homology.format_basis(code.logical))
    _out(lines)
    return 0


def cmd_distance(args) -> int:
    _, code = _code(args)
    rep = distance(code, budget=args.budget, seed=args.seed, threshold=args.threshold)
    _out([f"N={code.n_qubits}", f"K={code.k}"] + rep.lines())
    return 0


def _circuit_setup(args):
    sc = load_complex(args.input)
    degrees = _degrees(args.q, sc.dim)
    circuit = cupgate.synthesize_circuit(sc, *degrees)
    return sc, degrees, circuit


def cmd_circuit(args) -> int:
    sc, degrees, circuit = _circuit_setup(args)
    if args.out:
        Path(args.out).write_text(cupgate.format_circuit(circuit))
    bound = cupgate.max_top_cofaces(sc)
    worst = cupgate.max_gates_per_qubit(circuit)
    _out(
        [
            "q=" + ",".join(map(str, degrees)),
            f"gates={len(circuit)}",
            f"max_gates_per_qubit={worst}",
            f"vertex_star_bound={bound}",
        ]
    )
    return 0 if worst <= bound else 1


def _tensor(args):
    sc, degrees, circuit = _circuit_setup(args)
    bases = _bases(sc, degrees, args.basis)
    return sc, degrees, circuit, bases, cupgate.logical_action(circuit, bases)


def cmd_logical_action(args) -> int:
    sc, degrees, _, bases, tensor = _tensor(args)
    bad = cupgate.cross_check(sc, tensor, bases, degrees)
    lines = ["q=" + ",".join(map(str, degrees)), "dims=" + ",".join(map(str, tensor.dims)), f"entries={len(tensor)}"]
    lines += [f"{a} {b} {c}" for a, b, c in tensor.entries]
    lines.append(f"cross_check_mismatches={len(bad)}")
    _out(lines)
    return 0 if not bad else 1


def cmd_verify(args) -> int:
    if args.seed is None:
        raise UsageError("verify needs --seed")
    sc = load_complex(args.input)
    degrees = _degrees(args.q, sc.dim)
    bases = _bases(sc, degrees, args.basis)
    target = sc.delete_top(args.delete_top) if args.delete_top is not None else sc
    circuit = cupgate.synthesize_circuit(target, *degrees)
    phase = cupgate.phase_polynomial_check(target, circuit, bases, args.trials, args.seed)
    stokes = cupgate.stokes_check(target, min(args.trials, 100), args.seed)
    lines = [f"seed={args.seed}", "q=" + ",".join(map(str, degrees))]
    if args.delete_top is not None:
        lines.append(f"deleted_top={args.delete_top}")
    lines += [f"phase_trials={phase.trials}", f"phase_passed={phase.passed}", f"phase_failed={phase.failed}"]
    lines += [f"stokes_passed={stokes.passed}", f"stokes_failed={stokes.failed}"]
    ok = phase.ok and stokes.ok
    if not args.skip_poincare:
        if target.is_closed_manifold:
            full = []
            for p in range(target.dim + 1):
                m = homology.poincare_pairing(target, p, _basis(target, p, args.basis), _basis(target, target.dim - p, args.basis))
                full.append(int(m.shape[0] == m.shape[1] and rank(m) == m.shape[0]))
            lines.append("poincare_full_rank=" + ",".join(map(str, full)))
            ok = ok and all(full)
        else:
            lines.append("poincare_full_rank=skipped_not_closed")
            ok = False
    lines.append(f"status={'pass' if ok else 'fail'}")
    _out(lines)
    return 0 if ok else 1


def cmd_hypergraph(args) -> int:
    _, _, _, _, tensor = _tensor(args)
    h = cupgate.interaction_hypergraph(tensor)
    text = cupgate.format_hypergraph(h)
    if args.out:
        Path(args.out).write_text(text)
        _out([f"vertices={sum(h.sizes)}", f"hyperedges={len(h)}"])
    else:
        sys.stdout.write(text)
    return 0


def cmd_fountain(args) -> int:
    if args.hypergraph:
        h = cupgate.parse_hypergraph(Path(args.hypergraph).read_text())
    else:
        _, _, _, _, tensor = _tensor(args)
        h = cupgate.interaction_hypergraph(tensor)
    sched = cupgate.fountain_schedule(h, induced=args.induced)
    disjoint = cupgate.edges_disjoint(h.edges[sched.selected])
    touch = cupgate.unselected_touch_zero(h, sched)
    sys.stdout.write(cupgate.format_fountain(sched))
    _out([f"disjoint={int(disjoint)}", f"unselected_touch_zero={int(touch)}"])
    return 0 if disjoint else 1


def _families(args, sc, q):
    basis = product.kunneth_basis(sc, q)
    pairs = _ints(args.pairs)
    patterns = None
    if pairs:
        patterns = product.patterns_from_pairs([(pairs[0], pairs[1]), (pairs[2], pairs[3]), (pairs[4], pairs[5])])
    return basis, product.kunneth_families(basis, q, patterns)


def cmd_families(args) -> int:
    sc = load_complex(args.input)
    q = int(args.q) if args.q and "," not in args.q else _degrees(args.q, sc.dim)[0]
    basis, fams = _families(args, sc, q)
    text = product.format_family_table(basis, fams)
    if args.out:
        Path(args.out).write_text(text)
    lines = [f"q={q}"] + [f"{name}={len(fams[name])}" for name in product.FAMILY_NAMES + ("residual",)]
    _out(lines + ([] if args.out else text.splitlines()))
    return 0


def cmd_ccz_count(args) -> int:
    sc = load_complex(args.input)
    degrees = _degrees(args.q, sc.dim)
    if len(set(degrees)) != 1:
        raise UsageError("ccz-count needs equal degrees in the three copies")
    basis, fams = _families(args, sc, degrees[0])
    circuit = cupgate.synthesize_circuit(sc, *degrees)
    tensor = cupgate.logical_action(circuit, [basis] * 3)
    count = product.ccz_count(sc, tensor, [basis] * 3, fams)
    lines = ["q=" + ",".join(map(str, degrees))]
    lines += [f"labels_{name}={count.family_sizes[name]}" for name in product.FAMILY_NAMES + ("residual",)]
    lines.append(f"aligned_entries={count.total}")
    lines += [f"{a} {b} {c}" for a, b, c in count.aligned]
    lines.append(f"factorized_mismatches={count.mismatches}")
    lines.append(f"tensor_entries={len(tensor)}")
    for combo, n in sorted(count.counts.items()):
        if n:
            lines.append(f"block {'/'.join(combo)} {n}")
    _out(lines)
    return 0 if count.mismatches == 0 else 1


def cmd_search(args) -> int:
    lines = []
    for q, sets in modelsearch.search_min_q(args.qmax, args.qmin, args.convention, args.margin):
        for s in sets:
            lines.append(" ".join(str(v) for v in (q,) + s.flat()))
    _out(lines)
    return 0


def cmd_bad_dims(args) -> int:
    I = modelsearch.ParameterSet.from_flat(_ints(args.set))
    bad = modelsearch.bad_dimensions(I, args.convention)
    gap = modelsearch.gaps(I, args.convention)
    _out(
        [
            f"q={I.q}",
            "r=" + ",".join(map(str, I.r)),
            "bad=" + ",".join(map(str, bad)),
            "gaps=" + ",".join(map(str, gap)),
            f"valid={int(modelsearch.valid(I, args.convention, args.margin))}",
        ]
    )
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triplecup", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_input(p, q_help="degree"):
        p.add_argument("--in", dest="input", required=True, help="complex file or generator expression")
        p.add_argument("--q", help=q_help)
        p.add_argument("--basis", choices=("auto", "echelon"), default="auto", help="product bases by default")

    p = sub.add_parser("build", help="write a complex file")
    p.add_argument("--spec", help="generator expression")
    p.add_argument("--circle", type=int)
    p.add_argument("--torus", type=int)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--product", nargs="+")
    p.add_argument("--connected-sum", nargs=2)
    p.add_argument("--delete-top", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="Betti numbers and representatives")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--basis", choices=("auto", "echelon"), default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homology)

    for name, func in (("code", cmd_code), ("distance", cmd_distance)):
        p = sub.add_parser(name, help=f"{name} report")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--basis", choices=("auto", "echelon"), default="auto")
        p.add_argument("--keep", help="comma-separated logical indices to keep")
        p.add_argument("--budget", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threshold", type=int, default=EXHAUSTIVE_DIM)
        if name == "code":
            p.add_argument("--export", help="path prefix for .hx, .hz and .basis files")
        p.set_defaults(func=func)

    p = sub.add_parser("circuit", help="synthesize the CCZ circuit")
    with_input(p, "q or q1,q2,q3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("logical-action", help="logical CCZ tensor")
    with_input(p, "q or q1,q2,q3")
    p.set_defaults(func=cmd_logical_action)

    p = sub.add_parser("verify", help="coboundary-shift, Stokes and Poincaré checks")
    with_input(p, "q or q1,q2,q3")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--delete-top", type=int, help="negative control: drop one top simplex")
    p.add_argument("--skip-poincare", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hypergraph", help="interaction hypergraph")
    with_input(p, "q or q1,q2,q3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("fountain", help="greedy fountain schedule")
    p.add_argument("--in", dest="input")
    p.add_argument("--q")
    p.add_argument("--basis", choices=("auto", "echelon"), default="auto")
    p.add_argument("--hypergraph", help="read a hypergraph file instead of a complex")
    p.add_argument("--induced", action="store_true", help="keep every unselected edge touching the zero set")
    p.set_defaults(func=cmd_fountain)

    for name, func in (("families", cmd_families), ("ccz-count", cmd_ccz_count)):
        p = sub.add_parser(name, help=f"{name} of a triple product")
        with_input(p, "code degree")
        p.add_argument("--pairs", help="p0,s0,p1,s1,p2,s2 family degrees")
        if name == "families":
            p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("search", help="usable parameter sets up to qmax")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--qmin", type=int, default=11)
    p.add_argument("--convention", choices=tuple(modelsearch.CONVENTIONS), default="published")
    p.add_argument("--margin", type=int, default=modelsearch.DEFAULT_MARGIN)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bad-dims", help="bad degrees of a parameter set")
    p.add_argument("--set", required=True, help="p0,s0,p1,s1,p2,s2")
    p.add_argument("--convention", choices=tuple(modelsearch.CONVENTIONS), default="published")
    p.add_argument("--margin", type=int, default=modelsearch.DEFAULT_MARGIN)
    p.set_defaults(func=cmd_bad_dims)
    return parser


USAGE_ERRORS = (
    UsageError,
    cx.DegreeOutOfRange,
    cx.TooSmall,
    modelsearch.InvalidParameterSet,
    cupgate.DegreeMismatch,
    cupgate.DegreeOverflow,
    IndexOutOfRange,
    cupgate.BasisMismatch,
    product.LabelMismatch,
    CapacityExceeded,
    FileNotFoundError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    except (cx.NotAComplex, homology.DegeneratePairing, homology.NotClosedManifold) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
