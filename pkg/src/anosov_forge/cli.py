"""Command-line interface.

Commands: analyze, lift, chambers, normal-forms, selftest.
Exit codes: 0 = hypotheses verified, 1 = some hypothesis refuted,
2 = undecided at the precision cap, 3 = input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .actions import ValidatedAction, validate
from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import AnosovForgeError, RankUnsupported, InputError
from .graded import GradedAlgebraAction, validate_graded
from .report import (
    audit_action,
    audit_graded,
    chambers_json,
    chambers_svg,
    exit_code_for,
    frac_str,
    report_to_json,
)

EXIT_TRUE, EXIT_FALSE, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2, 3


def _frac(x, field: str) -> Fraction:
    try:
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, int):
            return Fraction(x)
    except (ValueError, ZeroDivisionError):
        pass
    raise InputError(f"{field}: expected an integer or 'p/q' string, got {x!r}")


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise InputError(f"{where}: unknown field(s) {', '.join(extra)}")


def _unflatten(flat, dim: int, field: str):
    if not isinstance(flat, list) or len(flat) != dim * dim:
        raise InputError(f"{field}: expected a row-major array of {dim * dim} entries")
    return [flat[r * dim : (r + 1) * dim] for r in range(dim)]


OPTION_FIELDS = {"max_den", "precision_cap_bits", "witness_cap", "seed"}


def _parse_options(doc: dict, path: str) -> dict:
    opts = doc.get("options", {})
    if not isinstance(opts, dict):
        raise InputError(f"{path}: options must be an object")
    _reject_unknown(opts, OPTION_FIELDS, f"{path}: options")
    for key, val in opts.items():
        if not isinstance(val, int) or val < 0:
            raise InputError(f"{path}: options.{key} must be a non-negative integer")
    return dict(opts)


def load_action_file(path: str):
    """Parse an ActionFile; returns ValidatedAction or GradedAlgebraAction.
    Use load_action_file_with_options to also read the embedded options."""
    return load_action_file_with_options(path)[0]


def load_action_file_with_options(path: str):
    """Parse an ActionFile; returns (action, options dict).

    Options embedded in the file configure precision/search limits;
    command-line flags take precedence over them."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    if doc.get("schema_version") != 1:
        raise InputError(f"{path}: schema_version must be 1")
    kind = doc.get("kind")
    options = _parse_options(doc, path)
    if kind == "torus":
        _reject_unknown(
            doc,
            {"schema_version", "kind", "name", "dim", "rank", "generators", "options"},
            path,
        )
        dim = doc.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise InputError(f"{path}: dim must be a positive integer")
        gens_raw = doc.get("generators")
        if not isinstance(gens_raw, list) or not gens_raw:
            raise InputError(f"{path}: generators must be a non-empty array")
        gens = []
        for gi, flat in enumerate(gens_raw):
            mat = _unflatten(flat, dim, f"{path}: generators[{gi}]")
            for row in mat:
                for v in row:
                    if not isinstance(v, int):
                        raise InputError(
                            f"{path}: generators[{gi}]: entries must be integers"
                        )
            gens.append(mat)
        rank = doc.get("rank")
        if rank is not None and rank != len(gens):
            raise InputError(
                f"{path}: rank {rank} does not match {len(gens)} generators"
            )
        return validate(gens, name=doc.get("name", "")), options
    if kind == "graded":
        _reject_unknown(
            doc,
            {
                "schema_version",
                "kind",
                "name",
                "grading",
                "structure_constants",
                "generators",
                "options",
            },
            path,
        )
        grading = doc.get("grading")
        if not isinstance(grading, list) or not all(
            isinstance(g, int) and g >= 0 for g in grading
        ):
            raise InputError(
                f"{path}: grading must list the graded component dimensions"
            )
        dim = sum(grading)
        sc = []
        for qi, quad in enumerate(doc.get("structure_constants", [])):
            if not isinstance(quad, list) or len(quad) != 4:
                raise InputError(
                    f"{path}: structure_constants[{qi}] must be [a, b, c, value]"
                )
            a, b, c, val = quad
            if not all(isinstance(t, int) for t in (a, b, c)):
                raise InputError(
                    f"{path}: structure_constants[{qi}]: indices must be integers"
                )
            sc.append((a, b, c, _frac(val, f"{path}: structure_constants[{qi}]")))
        gens_raw = doc.get("generators")
        if not isinstance(gens_raw, list) or not gens_raw:
            raise InputError(f"{path}: generators must be a non-empty array")
        gens = []
        for gi, flat in enumerate(gens_raw):
            mat = _unflatten(flat, dim, f"{path}: generators[{gi}]")
            gens.append(
                [
                    [_frac(v, f"{path}: generators[{gi}]") for v in row]
                    for row in mat
                ]
            )
        return validate_graded(grading, sc, gens, name=doc.get("name", "")), options
    raise InputError(f"{path}: kind must be 'torus' or 'graded'")


def graded_action_file(g: GradedAlgebraAction) -> dict:
    """Serialize a graded action back to the ActionFile schema."""
    sc = []
    for a, b, coords in g.brackets:
        for c, val in enumerate(coords):
            if val:
                sc.append([a, b, c, frac_str(val)])
    return {
        "schema_version": 1,
        "kind": "graded",
        "name": g.name,
        "grading": list(g.grading),
        "structure_constants": sc,
        "generators": [
            [frac_str(v) for row in gen for v in row] for gen in g.generators
        ],
    }


def _config_from_args(args, file_options: dict | None = None) -> ToolkitConfig:
    import dataclasses

    cfg = DEFAULT_CONFIG.with_env_override()
    kwargs = dict(file_options or {})
    if getattr(args, "bits", None) is not None:
        kwargs["initial_bits"] = args.bits
    if getattr(args, "max_den", None) is not None:
        kwargs["max_den"] = args.max_den
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    if getattr(args, "witness_cap", None) is not None:
        kwargs["witness_cap"] = args.witness_cap
    return dataclasses.replace(cfg, **kwargs) if kwargs else cfg


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _analyze_one(path: str, args) -> dict:
    obj, options = load_action_file_with_options(path)
    cfg = _config_from_args(args, options)
    if isinstance(obj, GradedAlgebraAction):
        return audit_graded(obj, cfg)
    return audit_action(obj, cfg)


def cmd_analyze(args) -> int:
    reports = []
    if args.jobs > 1 and len(args.files) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_analyze_one, args.files, [args] * len(args.files)))
    else:
        reports = [_analyze_one(p, args) for p in args.files]
    payload = reports[0] if len(reports) == 1 else {"reports": reports}
    if args.json is not None:
        _emit(report_to_json(payload), args.json or None)
    else:
        for rep in reports:
            _print_summary(rep)
    codes = [exit_code_for(r) for r in reports]
    return max(codes)


def _print_summary(rep: dict) -> None:
    name = rep.get("name") or "<unnamed>"
    print(f"{name} ({rep['kind']}, dim {rep['dim']}, rank {rep['rank']})")
    for key in sorted(rep["hypotheses"]):
        print(f"  {key}: {rep['hypotheses'][key]['kind']}")
    agg = rep["theorem_1_1_hypotheses"]["kind"]
    print(f"  => hypotheses of the global rigidity theorem: {agg}")


def cmd_chambers(args) -> int:
    from .weyl import coarse_classes, lyapunov_data, weyl_chambers

    obj, options = load_action_file_with_options(args.file)
    cfg = _config_from_args(args, options)
    if isinstance(obj, GradedAlgebraAction):
        obj = validate(
            [[[int(v) for v in row] for row in g] for g in obj.generators],
            name=obj.name,
        )
    classes = coarse_classes(lyapunov_data(obj, cfg), cfg)
    chambers = weyl_chambers(classes, obj.rank, cfg)
    if args.format == "svg":
        if obj.rank != 2:
            raise RankUnsupported(
                f"SVG chamber diagrams require rank 2, got rank {obj.rank}"
            )
        _emit(chambers_svg(classes, chambers), args.out)
    else:
        _emit(
            json.dumps(chambers_json(classes, chambers), indent=2, sort_keys=True)
            + "\n",
            args.out,
        )
    return EXIT_TRUE


def cmd_lift(args) -> int:
    from .freenil import free_nilpotent_lift

    obj, options = load_action_file_with_options(args.file)
    cfg = _config_from_args(args, options)
    if isinstance(obj, GradedAlgebraAction):
        raise InputError(f"{args.file}: lift requires a torus action")
    if args.step < 2:
        raise InputError(f"lift step must be at least 2, got {args.step}")
    lift = free_nilpotent_lift(obj, args.step, cfg)
    if args.out:
        _emit(
            json.dumps(graded_action_file(lift.to_graded()), indent=2, sort_keys=True)
            + "\n",
            args.out,
        )
    rep = audit_action(lift.to_validated(), cfg)
    rep["kind"] = "free_nilpotent_lift"
    rep["step"] = lift.step
    rep["base_dim"] = lift.base.dim
    rep["degree_dimensions"] = list(lift.hall.degree_dimensions())
    text = json.dumps(rep, indent=2, sort_keys=True) + "\n"
    _emit(text, args.json or None)
    kind = rep["theorem_1_1_hypotheses"]["kind"]
    return {"true": EXIT_TRUE, "false": EXIT_FALSE, "undecided": EXIT_UNDECIDED}[kind]


def cmd_normal_forms(args) -> int:
    from .normalforms import ContractionSpectrum, sr_group_dimension, subresonance_indices
    from .weyl import coarse_classes, lyapunov_data, stable_set

    cfg = _config_from_args(args)
    with open(args.file) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.file}: invalid JSON ({exc})")
    if isinstance(doc, dict) and doc.get("kind") == "spectrum":
        _reject_unknown(
            doc, {"schema_version", "kind", "exponents", "multiplicities"}, args.file
        )
        exps = [_frac(x, f"{args.file}: exponents") for x in doc.get("exponents", [])]
        mults = doc.get("multiplicities")
        spec = ContractionSpectrum.build(exps, mults, cfg)
    else:
        if args.element is None:
            raise InputError(
                "--element is required when the input is an action file"
            )
        obj, options = load_action_file_with_options(args.file)
        cfg = _config_from_args(args, options)
        if isinstance(obj, GradedAlgebraAction):
            raise InputError(f"{args.file}: normal-forms requires a torus action")
        b = tuple(int(x) for x in args.element.split(","))
        classes = coarse_classes(lyapunov_data(obj, cfg), cfg)
        stable = stable_set(classes, b, cfg)
        if not stable:
            raise InputError(f"element {b} has no stable classes")
        vals = sorted(
            ((c.value_at(b), c.total_multiplicity) for c in stable),
            key=lambda p: p[0].midpoint(128),
            reverse=True,
        )
        spec = ContractionSpectrum.build(
            [v for v, _ in vals], [m for _, m in vals], cfg
        )
    indices = subresonance_indices(spec, config=cfg)
    out = {
        "exponents": [
            frac_str(e.const)
            if not e.terms
            else f"{float(e.midpoint(128)):.12f}"
            for e in spec.exponents
        ],
        "multiplicities": list(spec.multiplicities),
        "subresonance_indices": [
            {"target": ix.target, "degrees": list(ix.degrees)} for ix in indices
        ],
        "sr_group_dimension": sr_group_dimension(spec, config=cfg),
    }
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.json or None)
    return EXIT_TRUE


def cmd_selftest(args) -> int:
    """Fast end-to-end sanity checks on built-in examples."""
    cfg = _config_from_args(args)
    from .freenil import hall_basis
    from .modulus import has_unit_modulus_root
    from .intpoly import IntPolynomial
    from .weyl import coarse_classes, is_tns, lyapunov_data, weyl_chambers

    checks = []
    fib = validate([[[1, 1], [1, 0]]], name="fib")
    fs = lyapunov_data(fib, cfg)
    checks.append(("rank-1 functional count", len(fs) == 2))
    checks.append(
        ("golden mean not on unit circle",
         not has_unit_modulus_root(IntPolynomial((-1, -1, 1)))),
    )
    checks.append(
        ("cyclotomic on unit circle",
         has_unit_modulus_root(IntPolynomial((1, -1, 1)))),
    )
    a1 = [[0, 0, -1], [1, 0, 3], [0, 1, 0]]
    a2 = [[a1[i][j] - (i == j) for j in range(3)] for i in range(3)]
    cartan = validate([a1, a2], name="cartan")
    classes = coarse_classes(lyapunov_data(cartan, cfg), cfg)
    checks.append(("cartan T^3 coarse classes", len(classes) == 3))
    verdict, _ = is_tns(classes, cfg)
    checks.append(("cartan T^3 is TNS", verdict.kind == "true"))
    checks.append(
        ("cartan T^3 chamber count", len(weyl_chambers(classes, 2, cfg)) == 6)
    )
    checks.append(
        ("free 2-step Hall dimensions on 3 generators",
         hall_basis(3, 2, cfg).degree_dimensions() == (3, 3)),
    )
    ok = True
    for label, passed in checks:
        print(f"[{'ok' if passed else 'FAIL'}] {label}")
        ok = ok and passed
    return EXIT_TRUE if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="anosov-forge",
        description="Certified checks for higher-rank actions by toral and "
        "nilmanifold automorphisms.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--bits", type=int, help="initial working precision")
        sp.add_argument("--max-den", type=int, help="rational search denominator cap")
        sp.add_argument("--seed", type=int, help="seed for randomized searches")
        sp.add_argument("--witness-cap", type=int, help="integer witness size cap")
        sp.add_argument("--json", metavar="PATH", nargs="?", const="", default=None,
                        help="emit JSON (to PATH, or stdout when no PATH)")

    sp = sub.add_parser("analyze", help="audit theorem hypotheses for action files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--jobs", type=int, default=1, help="parallel workers")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("chambers", help="Weyl chamber arrangement (JSON or SVG)")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("json", "svg"), default="json")
    sp.add_argument("--out", metavar="PATH")
    common(sp)
    sp.set_defaults(func=cmd_chambers)

    sp = sub.add_parser("lift", help="free nilpotent lift of a torus action")
    sp.add_argument("file")
    sp.add_argument("--step", type=int, required=True, help="nilpotency step")
    sp.add_argument("--out", metavar="PATH", help="write lifted graded ActionFile")
    common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser(
        "normal-forms", help="subresonance data for a spectrum or chamber element"
    )
    sp.add_argument("file")
    sp.add_argument("--element", help="comma-separated integer element, e.g. '1,0'")
    common(sp)
    sp.set_defaults(func=cmd_normal_forms)

    sp = sub.add_parser("selftest", help="run built-in sanity checks")
    common(sp)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AnosovForgeError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
