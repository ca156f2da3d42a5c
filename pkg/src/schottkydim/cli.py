"""Command-line orchestration.

Subcommands: schedule | certify | estimate | render | explore.
Exit codes: 0 success (and certificate verdict "certified" for certify),
1 failed certification check, 2 invalid configuration.
Flag precedence: command-line flags > config file > defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import certify as certify_mod
from . import estimators, explore, render
from .scalars import IntervalContext, parse_rational
from .schedule import GeneratorSchedule, load_schedule, paper_schedule, validate_schedule
from .words import ReducedWord

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_CONFIG = 2


class ConfigError(Exception):
    pass


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--backend", default=None,
                        help="exact | hiprec:<bits> (default: exact, 256-bit enclosures)")
    parser.add_argument("--out", default=None, help="output path")
    parser.add_argument("--jobs", type=int, default=None,
                        help="parallel word-subtree workers (deterministic output)")
    parser.add_argument("--config", default=None,
                        help="JSON config file; flags override its values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schottkydim",
        description="Inversion-group dimension certification and diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schedule", help="emit a generator schedule as JSON")
    p.add_argument("--paper", action="store_true", default=None,
                   help="use the built-in doubly-exponential schedule")
    p.add_argument("--count", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("certify", help="certify a dimension upper bound")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--alpha", default=None, help="rational exponent, e.g. 1/4")
    p.add_argument("--m", type=int, default=None, help="window size")
    p.add_argument("--n", type=int, default=None, help="max word length checked")
    p.add_argument("--schedule", default=None, help="schedule JSON (default: built-in)")
    _add_common(p)

    p = sub.add_parser("estimate", help="level-sum bisection and box counting")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--schedule", default=None)
    _add_common(p)

    p = sub.add_parser("render", help="SVG of the nested disk tree")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--width", type=int, default=None, help="pixel width")
    p.add_argument("--no-color-by-level", action="store_true", default=None)
    p.add_argument("--schedule", default=None)
    _add_common(p)

    p = sub.add_parser("explore", help="ray diagnostics for a word-specified limit point")
    p.add_argument("--word", default=None, help="comma-separated indices, e.g. 1,2")
    p.add_argument("--periodic", action="store_true", default=None)
    p.add_argument("--escalate", action="store_true", default=None,
                   help="continue the word with strictly increasing indices")
    p.add_argument("--horizon", type=float, default=None)
    p.add_argument("--ball", type=int, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--depth", type=int, default=None,
                   help="nested-disk depth for the limit point estimate")
    p.add_argument("--basepoint", default=None, help="x,y in the half-plane")
    _add_common(p)

    return parser


def _load_config(args) -> dict:
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        return data
    return {}


def _resolve(args, config: dict, key: str, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in config:
        return config[key]
    return default


def _context(backend: str) -> IntervalContext:
    if backend == "exact":
        return IntervalContext(256)
    if backend.startswith("hiprec:"):
        try:
            bits = int(backend.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad backend spec: {backend}") from exc
        if bits < 64:
            raise ConfigError("backend bits must be >= 64")
        return IntervalContext(bits)
    raise ConfigError(f"unknown backend: {backend}")


def _schedule_for(path: Optional[str], needed_max_index: int) -> GeneratorSchedule:
    if path:
        return load_schedule(path)
    return paper_schedule(needed_max_index)


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_schedule(args, config) -> int:
    count = int(_resolve(args, config, "count", 8))
    if count < 1:
        raise ConfigError("--count must be >= 1")
    use_paper = _resolve(args, config, "paper", True)
    if not use_paper:
        raise ConfigError("only the built-in schedule can be emitted; "
                          "user schedules are authored as JSON directly")
    sched = paper_schedule(count)
    report = validate_schedule(sched)
    if not report.ok:
        raise ConfigError("generated schedule failed validation:\n" + report.summary())
    _write(_resolve(args, config, "out", None), sched.to_json())
    return EXIT_OK


def cmd_certify(args, config) -> int:
    k = _resolve(args, config, "k", None)
    alpha_text = _resolve(args, config, "alpha", None)
    if k is None or alpha_text is None:
        raise ConfigError("certify requires --k and --alpha")
    k = int(k)
    if k < 1:
        raise ConfigError("--k must be >= 1")
    try:
        alpha = parse_rational(str(alpha_text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad alpha: {alpha_text}") from exc
    if not (0 < alpha <= 1):
        raise ConfigError("alpha must be a positive rational <= 1")
    m = int(_resolve(args, config, "m", 6))
    if m < 2:
        raise ConfigError("--m must be >= 2")
    n_max = int(_resolve(args, config, "n", 4))
    jobs = int(_resolve(args, config, "jobs", 1))
    ctx = _context(str(_resolve(args, config, "backend", "exact")))
    sched = _schedule_for(_resolve(args, config, "schedule", None), k + m)
    cert = certify_mod.certify_dimension_upper(sched, k, m, n_max, alpha,
                                               ctx, jobs=jobs)
    out = _resolve(args, config, "out", "certificate.json")
    _write(out, cert.to_json())
    print(cert.summary())
    if not cert.certified:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_estimate(args, config) -> int:
    k = int(_resolve(args, config, "k", 2))
    m = int(_resolve(args, config, "m", 4))
    n_max = int(_resolve(args, config, "n_max", 3))
    if m < 2 or n_max < 1:
        raise ConfigError("need --m >= 2 and --n-max >= 1")
    sched = _schedule_for(_resolve(args, config, "schedule", None), k + m)
    lines = ["n,alpha_n,residual"]
    for n in range(1, n_max + 1):
        try:
            res = estimators.level_dimension_bisect(sched, k, m, n)
            lines.append(f"{n},{res.alpha!r},{res.residual!r}")
        except estimators.BracketError as exc:
            lines.append(f"{n},ERROR,{exc}")
    from .words import disk_tree
    depth = min(n_max + 1, 4)
    tree = disk_tree(sched, k, m, depth, prune_radius=Fraction(0),
                     verify=False)
    points = [float(node.disk.center) for node in tree.leaves()]
    scales = [2.0 ** (-j) for j in range(4, 9)]
    try:
        box = estimators.box_count(points, scales)
        lines.append(f"box_count_depth{depth},{box.slope!r},"
                     f"counts={'|'.join(map(str, box.counts))}")
    except ValueError as exc:
        lines.append(f"box_count_depth{depth},ERROR,{exc}")
    _write(_resolve(args, config, "out", None), "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_render(args, config) -> int:
    k = int(_resolve(args, config, "k", 2))
    m = int(_resolve(args, config, "m", 3))
    depth = int(_resolve(args, config, "depth", 2))
    width = int(_resolve(args, config, "width", 1200))
    no_color = bool(_resolve(args, config, "no_color_by_level", False))
    sched = _schedule_for(_resolve(args, config, "schedule", None), k + m)
    try:
        svg = render.svg_disk_tree(sched, k, m, depth, width_px=width,
                                   color_by_level=not no_color)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _write(_resolve(args, config, "out", None), svg)
    return EXIT_OK


def cmd_explore(args, config) -> int:
    word_text = _resolve(args, config, "word", None)
    if not word_text:
        raise ConfigError("explore requires --word")
    try:
        word = ReducedWord.parse(str(word_text))
    except ValueError as exc:
        raise ConfigError(f"word is not reduced: {exc}") from exc
    periodic = bool(_resolve(args, config, "periodic", False))
    escalate = bool(_resolve(args, config, "escalate", False))
    if periodic and escalate:
        raise ConfigError("--periodic and --escalate are mutually exclusive")
    horizon = float(_resolve(args, config, "horizon", 50.0))
    ball = int(_resolve(args, config, "ball", 4))
    step = float(_resolve(args, config, "step", 0.25))
    depth = int(_resolve(args, config, "depth", 0))
    basepoint_text = _resolve(args, config, "basepoint", None)

    if periodic:
        try:
            path = explore.WordPath.periodic(word.indices)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if depth <= 0:
            depth = max(8, 2 * len(word))
    elif escalate:
        path = explore.WordPath.escalating(word.indices)
        if depth <= 0:
            depth = len(word) + 2
    else:
        path = explore.WordPath.finite(word.indices)
        if depth <= 0:
            depth = len(word)

    max_index = max(max(path.prefix(depth)), max(word.indices))
    sched_path = _resolve(args, config, "schedule", None)
    sched = _schedule_for(sched_path, max_index)

    target_point, err = explore.limit_point(sched, path, depth)
    target = target_point.value  # exact rational: keeps sub-ulp offsets
    if basepoint_text is None:
        p = explore.default_basepoint(sched, word.indices[0])
    else:
        try:
            bx, by = (parse_rational(v) for v in str(basepoint_text).split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad basepoint: {basepoint_text}") from exc
        if by <= 0:
            raise ConfigError("basepoint must lie in the upper half-plane")
        p = (bx, by)
    alphabet = sched.indices[:min(4, len(sched.indices))]
    profile = explore.conicality_profile(sched, p, target, horizon, ball,
                                         step, alphabet=alphabet)
    out_prefix = _resolve(args, config, "out", "explore")
    _write(f"{out_prefix}_profile.csv", profile.to_csv())
    summary = profile.summary_dict()
    summary["word"] = str(word)
    summary["path"] = path.description
    summary["limit_point_estimate"] = float(target)
    summary["limit_point_error_radius"] = float(err)
    _write(f"{out_prefix}_summary.json",
           json.dumps(summary, indent=2, sort_keys=True) + "\n")
    print(f"classification: {profile.classification}")
    return EXIT_OK


COMMANDS = {
    "schedule": cmd_schedule,
    "certify": cmd_certify,
    "estimate": cmd_estimate,
    "render": cmd_render,
    "explore": cmd_explore,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        return COMMANDS[args.command](args, config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def entrypoint():
    raise SystemExit(main())
