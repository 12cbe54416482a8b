"""Audit reports: JSON-serializable hypothesis verdicts and SVG diagrams.

Reports are deterministic byte for byte given (input, options): rationals
serialize as "p/q" strings, floats as fixed-precision decimals derived from
certified midpoints, and no timestamps are embedded unless explicitly
requested.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .actions import ValidatedAction, is_semisimple, is_totally_reducible
from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import NotAnosovAction, UndecidedProportionality
from .graded import GradedAlgebraAction, degree_one_action, is_totally_reducible_graded
from .verdict import Verdict3
from .weyl import (
    CoarseClass,
    LyapunovFunctional,
    WeylChamber,
    anosov_in_every_chamber,
    coarse_classes,
    is_tns,
    lyapunov_data,
    weyl_chambers,
)


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _dec(x: float) -> str:
    return f"{x:.12f}"


def verdict_json(v: Verdict3) -> dict:
    out = {"kind": v.kind}
    if v.kind == "undecided":
        out["precision_bits"] = v.precision_bits
    return out


def functional_json(f: LyapunovFunctional) -> dict:
    return {
        "log_values": [_dec(x) for x in f.approx(128)],
        "multiplicity": f.multiplicity,
        "origin": f.origin,
    }


def class_json(c: CoarseClass) -> dict:
    return {
        "index": c.index,
        "member_count": len(c.members),
        "total_multiplicity": c.total_multiplicity,
        "normal": [_dec(x) for x in c.hyperplane_normal.approx(128)],
    }


def chamber_json(ch: WeylChamber) -> dict:
    return {
        "signs": list(ch.signs),
        "witness": list(ch.witness),
        "witness_anosov": ch.witness_anosov,
    }


def _config_echo(config: ToolkitConfig) -> dict:
    return {
        "initial_bits": config.initial_bits,
        "precision_cap_bits": config.precision_cap_bits,
        "max_den": config.max_den,
        "witness_cap": config.witness_cap,
        "size_cap": config.size_cap,
        "seed": config.seed,
    }


def audit_action(
    action: ValidatedAction,
    config: ToolkitConfig = DEFAULT_CONFIG,
    include_timing: bool = False,
) -> dict:
    """Full Theorem-1.1-hypothesis audit of a validated toral action."""
    import time

    t0 = time.perf_counter()
    report: dict = {
        "name": action.name,
        "kind": "torus",
        "dim": action.dim,
        "rank": action.rank,
        "config": _config_echo(config),
        "hypotheses": {},
        "arrangement": {},
        "note": (
            "verdicts concern the linearization; Lyapunov hyperplanes and "
            "Weyl chambers of the nonlinear action agree with it"
        ),
    }
    hyp = report["hypotheses"]
    hyp["commuting"] = {"kind": "true"}
    hyp["unimodular"] = {"kind": "true"}
    semi = is_semisimple(action)
    hyp["semisimple"] = {"kind": "true" if semi else "false"}
    reducible, witness = is_totally_reducible(action)
    hyp["totally_reducible"] = {
        "kind": "true" if reducible else "false",
        "witness_components": None
        if witness is None
        else [
            {
                "dimension": len(comp["basis"]),
                "labels": [
                    [frac_str(c) for c in factor.coeffs]
                    for factor, _ in comp["labels"]
                ],
            }
            for comp in witness
        ],
    }

    functionals = lyapunov_data(action, config)
    report["arrangement"]["functionals"] = [functional_json(f) for f in functionals]
    aggregate = "true"
    try:
        classes = coarse_classes(functionals, config)
    except NotAnosovAction:
        hyp["tns"] = {"kind": "false", "reason": "zero Lyapunov functional"}
        hyp["anosov_in_every_chamber"] = {
            "kind": "false",
            "reason": "no element is Anosov (zero functional)",
        }
        report["arrangement"]["classes"] = []
        report["arrangement"]["chambers"] = []
        _finish(report, "false", semi, t0, include_timing)
        return report
    except UndecidedProportionality as exc:
        hyp["tns"] = {
            "kind": "undecided",
            "pair": list(exc.pair),
            "precision_bits": exc.bits,
        }
        hyp["anosov_in_every_chamber"] = {"kind": "undecided"}
        report["arrangement"]["classes"] = []
        report["arrangement"]["chambers"] = []
        _finish(report, "undecided", semi, t0, include_timing)
        return report

    report["arrangement"]["classes"] = [class_json(c) for c in classes]
    tns_verdict, tns_info = is_tns(classes, config)
    hyp["tns"] = verdict_json(tns_verdict)
    if tns_verdict.kind == "true":
        hyp["tns"]["joint_contraction_witnesses"] = {
            f"{i},{j}": list(w) for (i, j), w in sorted(tns_info["witnesses"].items())
        }
    elif tns_verdict.kind == "false":
        hyp["tns"]["negative_pair"] = list(tns_info["negative_pair"])
        if tns_info.get("ratio") is not None:
            hyp["tns"]["ratio"] = frac_str(tns_info["ratio"])

    chambers = weyl_chambers(classes, action.rank, config)
    ok, table = anosov_in_every_chamber(action, chambers, config)
    report["arrangement"]["chambers"] = [
        {
            "signs": list(row["signs"]),
            "witness": list(row["witness"]),
            "witness_anosov": row["anosov"],
        }
        for row in table
    ]
    hyp["anosov_in_every_chamber"] = {"kind": "true" if ok else "false"}

    if tns_verdict.kind == "undecided":
        aggregate = "undecided"
    elif not (semi and tns_verdict.kind == "true" and ok):
        aggregate = "false"
    _finish(report, aggregate, semi, t0, include_timing)
    return report


def _finish(report, aggregate, semi, t0, include_timing):
    import time

    report["theorem_1_1_hypotheses"] = {"kind": aggregate}
    if include_timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 6)


def audit_graded(
    g: GradedAlgebraAction,
    config: ToolkitConfig = DEFAULT_CONFIG,
    include_timing: bool = False,
) -> dict:
    """Audit a graded (nilmanifold) action: the spectral hypotheses run on
    the full lattice matrices; total reducibility uses the graded criterion."""
    from .actions import validate

    full = validate(
        [[[int(x) for x in row] for row in gen] for gen in g.generators],
        name=g.name,
    )
    report = audit_action(full, config, include_timing)
    report["kind"] = "graded"
    report["grading"] = list(g.grading)
    reducible, witness = is_totally_reducible_graded(g)
    report["hypotheses"]["totally_reducible"] = {
        "kind": "true" if reducible else "false",
        "degree1_totally_reducible": witness["degree1_totally_reducible"],
        "derived_dimension": witness["derived_dimension"],
        "has_derived_complement": witness["derived_complement"] is not None,
    }
    quotient = degree_one_action(g)
    report["hypotheses"]["semisimple_degree1"] = {
        "kind": "true" if is_semisimple(quotient) else "false"
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def exit_code_for(report: dict) -> int:
    kind = report["theorem_1_1_hypotheses"]["kind"]
    return {"true": 0, "false": 1, "undecided": 2}[kind]


# -- SVG chamber diagrams (rank 2 only) ---------------------------------------


def chambers_svg(classes: list[CoarseClass], chambers: list[WeylChamber]) -> str:
    """Unit-disk sector diagram: oriented kernel lines plus witness dots.

    Deterministic text output; geometry uses certified midpoints only."""
    import math

    size, r = 420, 180
    cx = cy = size // 2

    def pt(x: float, y: float) -> tuple[float, float]:
        return cx + r * x, cy - r * y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#999"/>',
    ]
    for c in classes:
        gx, gy = (float(v.midpoint(128)) for v in c.hyperplane_normal.values)
        norm = math.hypot(gx, gy)
        # kernel line direction is the normal rotated a quarter turn
        dx, dy = -gy / norm, gx / norm
        x1, y1 = pt(-dx, -dy)
        x2, y2 = pt(dx, dy)
        parts.append(
            f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            f'stroke="#333" stroke-width="1.2"/>'
        )
        lx, ly = pt(0.72 * gx / norm, 0.72 * gy / norm)
        parts.append(
            f'<text x="{lx:.3f}" y="{ly:.3f}" font-size="12" fill="#06c">'
            f"L{c.index + 1}+</text>"
        )
    for ch in chambers:
        wx, wy = ch.witness
        norm = math.hypot(wx, wy)
        px, py = pt(0.88 * wx / norm, 0.88 * wy / norm)
        parts.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="4" fill="#c33"/>')
        label = "".join("+" if s > 0 else "-" for s in ch.signs)
        parts.append(
            f'<text x="{px + 6:.3f}" y="{py - 6:.3f}" font-size="10" '
            f'fill="#c33">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def chambers_json(
    classes: list[CoarseClass],
    chambers: list[WeylChamber],
    bits: int = 128,
) -> dict:
    from math import floor

    def outward(x: Fraction, up: bool) -> str:
        # round to 1e-18 away from the interval interior
        scaled = x * 10**18
        n = -floor(-scaled) if up else floor(scaled)
        sign, n = ("-", -n) if n < 0 else ("", n)
        return f"{sign}{n // 10 ** 18}.{n % 10 ** 18:018d}"

    lines = []
    for c in classes:
        enclosures = []
        for v in c.hyperplane_normal.values:
            lo, hi = v.interval(bits)
            enclosures.append([outward(lo, False), outward(hi, True)])
        lines.append({"class": c.index, "normal_enclosures": enclosures})
    return {
        "lines": lines,
        "chambers": [chamber_json(ch) for ch in chambers],
    }
