"""Command-line entry point.

Exit statuses: 0 success, 2 validation error, 3 inference error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import approx, fuzzy
from .config import ExperimentConfig, dump_config, load_config
from .errors import FlexError, InferenceError, ValidationError
from .inference import at_method, degree_inference, natural_inference, parallel_degree_inference
from .report import APPROX_COLUMNS, COMPARE_COLUMNS, approx_svg, fmt, read_csv, to_csv

EXIT_OK, EXIT_VALIDATION, EXIT_INFERENCE, EXIT_IO = 0, 2, 3, 4

INFER_METHODS = ("natural", "degree", "at", "parallel", "mamdani", "cri")
COMPARE_METHODS = ("degree", "at", "mamdani", "cri")


class CliFailure(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rules(cfg: ExperimentConfig, names: str):
    return [cfg.rule(n.strip()) for n in names.split(",") if n.strip()]


def _strongest_truth(rules, x0: float) -> float:
    return max(r.antecedent.membership(x0) for r in rules)


def evaluate(cfg: ExperimentConfig, rules, x0: Sequence[float], method: str) -> list:
    """One CSV record (COMPARE_COLUMNS order) for ``method`` at ``x0``.

    Inference failures propagate as exceptions.
    """
    label = ",".join(r.name for r in rules)
    xs = list(x0)
    x_out = xs[0] if len(xs) == 1 else ";".join(fmt(float(x)) for x in xs)

    if method == "natural":
        if len(rules) != 1:
            raise ValidationError("natural inference takes exactly one rule")
        res = natural_inference(rules[0], xs if len(xs) > 1 else xs[0])
        if res is None:
            raise InferenceError("no near-true conclusion")
        value, t = res
        return [x_out, method, label, t.value, None, None, None, ""]

    if len(xs) != 1:
        raise ValidationError(f"method {method!r} takes a single numeric input")
    x = xs[0]
    if method in ("degree", "at"):
        if len(rules) != 1:
            raise ValidationError(f"method {method!r} takes exactly one rule")
        res = (degree_inference if method == "degree" else at_method)(rules[0], x)
        return [x, method, label, res.truth.value, res.numeric, res.side.value, res.in_extended_core, ""]
    if method == "parallel":
        res = parallel_degree_inference(rules, x)
        return [x, method, label, res.truth.value, res.numeric, res.side.value, res.in_extended_core, ""]
    if method in ("mamdani", "cri"):
        selected = approx.strongest_rule(rules, x)
        b = selected.consequent
        if method == "mamdani":
            y = fuzzy.mamdani_pipeline(rules, x, fuzzy.Grid(b.universe, cfg.grid_points))
        else:
            if len(rules) != 1:
                raise ValidationError("cri takes exactly one rule")
            a = selected.antecedent
            y = fuzzy.cri_pipeline(
                selected, x, fuzzy.Grid(a.universe, cfg.grid_points), fuzzy.Grid(b.universe, cfg.grid_points)
            )
        inside = b.consistency(y) >= 0.5 - 1e-9
        return [x, method, label, _strongest_truth(rules, x), y, None, inside, ""]
    raise ValidationError(f"unknown method {method!r}")


def _out_dir(args, cfg: ExperimentConfig) -> Path | None:
    out = args.out or cfg.outputs
    return Path(out) if out else None


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise CliFailure(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _load(args) -> ExperimentConfig:
    try:
        cfg = load_config(args.config)
    except OSError as exc:
        raise CliFailure(f"cannot read config: {exc}", EXIT_IO) from exc
    if args.seed is not None:
        cfg.seed = args.seed
    if args.grid is not None:
        if args.grid < 11:
            raise ValidationError("--grid must be >= 11")
        cfg.grid_points = args.grid
    return cfg


def cmd_define(args) -> int:
    cfg = _load(args)
    if args.dump:
        print(json.dumps(dump_config(cfg), indent=2))
    else:
        n_members = sum(len(p) for p in cfg.partitions.values())
        print(
            f"ok: {len(cfg.universes)} universes, {len(cfg.values)} values, "
            f"{len(cfg.partitions)} partitions ({n_members} members), {len(cfg.rules)} rules"
        )
    return EXIT_OK


def cmd_infer(args) -> int:
    cfg = _load(args)
    rules = _rules(cfg, args.rule)
    row = evaluate(cfg, rules, args.x0, args.method)
    text = to_csv(COMPARE_COLUMNS, [row])
    sys.stdout.write(text)
    out = _out_dir(args, cfg)
    if out:
        _write(out / "infer.csv", text)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _load(args)
    rules = _rules(cfg, args.rule)
    label = ",".join(r.name for r in rules)
    rows, ok = [], False
    for x in args.x0:
        for method in COMPARE_METHODS:
            try:
                rows.append(evaluate(cfg, rules, [x], method))
                ok = True
            except FlexError as exc:
                rows.append([x, method, label, None, None, None, None, str(exc)])
    text = to_csv(COMPARE_COLUMNS, rows)
    sys.stdout.write(text)
    out = _out_dir(args, cfg)
    if out:
        _write(out / "compare.csv", text)
    return EXIT_OK if ok else EXIT_INFERENCE


def cmd_approx(args) -> int:
    cfg = _load(args)
    f, xu, yu = approx.FUNCTIONS[args.function]
    rows = approx.refine_study(
        f, xu, yu, args.schedule, args.evaluator, samples=args.samples, seed=cfg.seed, grid_points=cfg.grid_points
    )
    records = [[r.n_granules, r.h, r.method, r.sup_error, r.mean_error] for r in rows]
    text = to_csv(APPROX_COLUMNS, records)
    sys.stdout.write(text)
    out = _out_dir(args, cfg) or Path(".")
    _write(out / "approx.csv", text)
    _write(out / "approx.svg", approx_svg(read_csv(text)))
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise CliFailure(f"cannot read {args.input}: {exc}", EXIT_IO) from exc
    rows = read_csv(text)
    if not rows or "sup_error" not in rows[0]:
        raise ValidationError(f"{args.input}: not an approx CSV (needs n_granules and sup_error columns)")
    _write(Path(args.svg), approx_svg(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flexinfer", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", required=True, help="JSON experiment config")
    common.add_argument("--out", help="output directory (overrides config)")
    common.add_argument("--seed", type=int, help="random seed (overrides config)")
    common.add_argument("--grid", type=int, help="grid points per universe (overrides config)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("define", parents=[common], help="validate a config")
    p.add_argument("--dump", action="store_true", help="print the normalized config")
    p.set_defaults(func=cmd_define)

    p = sub.add_parser("infer", parents=[common], help="run one inference")
    p.add_argument("--rule", required=True, help="rule name (comma list for parallel/mamdani)")
    p.add_argument("--x0", required=True, type=_floats, help="input value (comma list for multi-condition)")
    p.add_argument("--method", required=True, choices=INFER_METHODS)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("compare", parents=[common], help="flexible vs fuzzy side by side")
    p.add_argument("--rule", required=True)
    p.add_argument("--x0", required=True, type=_floats, help="comma-separated inputs")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("approx", parents=[common], help="granule refinement study")
    p.add_argument("--function", required=True, choices=sorted(approx.FUNCTIONS))
    p.add_argument("--schedule", required=True, type=_ints, help="comma-separated granule counts")
    p.add_argument("--evaluator", default="interpolation", choices=approx.EVALUATORS)
    p.add_argument("--samples", type=int, default=approx.DEFAULT_SAMPLES)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("report", help="render an approx CSV as SVG")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--svg", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InferenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFERENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
