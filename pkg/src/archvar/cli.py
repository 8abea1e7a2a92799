"""Command-line interface.

Exit status: 0 success, 1 the models have errors, 2 the invocation is wrong.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .checks import check_model_set
from .diagnostics import has_errors, print_diagnostics
from .export import FORMATS, render
from .model import ModelSet
from .parser import load_paths
from .resolution import ResolutionError, find_config, flatten
from .varspace import DEFAULT_LIMIT, EnumerationLimitExceeded, enumerate_configs

OK, MODEL_ERROR, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="archvar", description="Check, flatten and enumerate variable component models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="report syntax and well-formedness diagnostics")
    c.add_argument("paths", nargs="+")

    for name, needs_format in (("flatten", False), ("export", True)):
        f = sub.add_parser(name, help="derive the flat architecture of a configuration")
        f.add_argument("--config", required=True, help="qualified configuration name")
        f.add_argument("--format", choices=FORMATS, required=needs_format, default=None if needs_format else "json")
        f.add_argument("-o", "--output", help="write to this file instead of standard output")
        f.add_argument("paths", nargs="+")

    e = sub.add_parser("enumerate", help="list every valid complete configuration of a component")
    e.add_argument("--component", required=True, help="qualified component name")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT)
    e.add_argument("paths", nargs="+")
    return p


def _load(paths: Sequence[str], out) -> Optional[ModelSet]:
    """Parse and check; prints diagnostics and returns None when there are errors."""
    for p in paths:
        if not Path(p).exists():
            raise UsageError(f"no such file or directory: {p}")
    try:
        model_set, diags = load_paths(paths)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None
    if not has_errors(diags):
        diags = check_model_set(model_set)
    print_diagnostics(diags, out)
    return None if has_errors(diags) else model_set


def _check(args) -> int:
    return OK if _load(args.paths, sys.stdout) is not None else MODEL_ERROR


def _flatten(args) -> int:
    model_set = _load(args.paths, sys.stderr)
    if model_set is None:
        return MODEL_ERROR
    qname = find_config(model_set, args.config)
    if qname is None:
        raise UsageError(f"no configuration named {args.config}")
    warnings: list = []
    try:
        flat = flatten(model_set.configs[qname], model_set, warnings)
    except ResolutionError as exc:
        issues = getattr(exc, "issues", None) or [exc.diagnostic()]
        print_diagnostics(issues, sys.stderr)
        return MODEL_ERROR
    print_diagnostics(warnings, sys.stderr)
    text = render(flat, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def _enumerate(args) -> int:
    model_set = _load(args.paths, sys.stderr)
    if model_set is None:
        return MODEL_ERROR
    hit = model_set.find_component(tuple(args.component.split(".")), top_level_only=False)
    if hit is None or hit[1] != len(args.component.split(".")):
        raise UsageError(f"no component named {args.component}")
    try:
        configs = enumerate_configs(hit[0], model_set, args.limit)
    except EnumerationLimitExceeded as exc:
        print(f"archvar: {exc}", file=sys.stderr)
        return MODEL_ERROR
    if args.count_only:
        print(len(configs))
    else:
        for c in configs:
            print(c.render())
    return OK


COMMANDS = {"check": _check, "flatten": _flatten, "export": _flatten, "enumerate": _enumerate}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"archvar: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
