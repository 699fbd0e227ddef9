"""``scatterdiag`` command-line front end.

Exit codes: 0 success or consistent, 1 inconsistent, 2 schema error,
3 unsupported operation, 4 non-generic path.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .completion import complete
from .diagrams import Loop, is_consistent, path_ordered_product
from .errors import ConfigurationError, DegenerateGradingError, ScatterError, SchemaError
from .render import LABEL_MODES, SvgOptions, render_svg
from .serialize import dumps, format_lie, load_diagram, report_to_json, wall_label

COMMANDS = ("complete", "check", "product", "render", "print")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Path
    output: Optional[Path] = None
    order: Optional[int] = None
    loop: Optional[tuple] = None
    svg_size: int = 480
    svg_labels: str = "leading"
    reverse: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {self.command!r}")
        if self.order is not None and self.order < 1:
            raise ConfigurationError("--order must be >= 1")
        if self.command == "product" and not self.loop:
            raise ConfigurationError("product needs --loop")
        if self.command in ("render", "complete") and self.output is None:
            raise ConfigurationError(f"{self.command} needs an output path")


def parse_loop(text: str) -> tuple:
    """``"x1,y1;x2,y2;..."`` with integer or p/q coordinates."""
    from fractions import Fraction

    pts = []
    for i, chunk in enumerate(p for p in text.split(";") if p.strip()):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ConfigurationError(f"loop vertex {i}: expected 'x,y', got {chunk.strip()!r}")
        try:
            pts.append((Fraction(parts[0].strip()), Fraction(parts[1].strip())))
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError(f"loop vertex {i}: bad coordinates {chunk.strip()!r}") from None
    return tuple(pts)


def _read(cfg: RunConfig):
    try:
        text = Path(cfg.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {cfg.input}: {exc.strerror}") from None
    return load_diagram(text, cfg.order)


def _write(path: Path, text: str):
    Path(path).write_text(text, encoding="utf-8")


def run(cfg: RunConfig, stdout: Optional[TextIO] = None) -> int:
    """Execute one command; returns the exit status. Scatter errors propagate."""
    stdout = stdout or sys.stdout
    d = _read(cfg)
    if cfg.command == "complete":
        report = complete(d, reverse=cfg.reverse)
        _write(cfg.output, dumps(report_to_json(report)))
        print(f"added {len(report.added)} ray(s); consistent mod t^{d.order + 1}", file=stdout)
        return 0
    if cfg.command == "check":
        res = is_consistent(d)
        if res.consistent:
            print(f"consistent mod t^{d.order + 1}", file=stdout)
            return 0
        print(f"inconsistent: defect of t-order {res.defect.leading_order()}", file=stdout)
        print(f"defect = {format_lie(res.defect)}", file=stdout)
        return 1
    if cfg.command == "product":
        g = path_ordered_product(d, Loop(cfg.loop))
        print("log = " + ("0 (identity)" if g.is_identity() else format_lie(g.log)), file=stdout)
        return 0
    if cfg.command == "render":
        _write(cfg.output, render_svg(d, SvgOptions(cfg.svg_size, cfg.svg_labels)))
        return 0
    print(f"{d.flavor} diagram, order {d.order}, {len(d.walls)} wall(s)", file=stdout)
    for i, w in enumerate(d.walls):
        b = f"({w.base[0]}, {w.base[1]})"
        head = f"wall {i}: {w.kind} from {b} along {w.direction}, grade {w.grade}"
        if d.flavor.tag == "tropical":
            print(f"{head}: f = {wall_label(w, 'full', unicode=False)}", file=stdout)
        else:
            print(f"{head}: log = {format_lie(w.log)}", file=stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scatterdiag", description="Exact scattering-diagram computations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", "-i", required=True, type=Path, help="diagram JSON file")
        sp.add_argument("--order", "-N", type=int, default=None, help="truncation order override")

    sp = sub.add_parser("complete", help="saturate a single-vertex diagram")
    common(sp)
    sp.add_argument("--output", "-o", required=True, type=Path)
    sp.add_argument("--reverse", action="store_true", help="process graded components in reverse order")
    common(sub.add_parser("check", help="test consistency around the common vertex"))
    sp = sub.add_parser("product", help="path-ordered product along a loop")
    common(sp)
    sp.add_argument("--loop", required=True, help='vertices "x1,y1;x2,y2;..."')
    sp = sub.add_parser("render", help="write an SVG picture")
    common(sp)
    sp.add_argument("--svg", "--output", dest="output", required=True, type=Path)
    sp.add_argument("--size", type=int, default=480)
    sp.add_argument("--labels", choices=LABEL_MODES, default="leading")
    common(sub.add_parser("print", help="list walls with their wall functions or logs"))
    return p


def _config_from_args(ns) -> RunConfig:
    loop = parse_loop(ns.loop) if getattr(ns, "loop", None) else None
    return RunConfig(
        command=ns.command,
        input=ns.input,
        output=getattr(ns, "output", None),
        order=ns.order,
        loop=loop,
        svg_size=getattr(ns, "size", 480),
        svg_labels=getattr(ns, "labels", "leading"),
        reverse=getattr(ns, "reverse", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(ns)
        return run(cfg)
    except (ConfigurationError, DegenerateGradingError) as exc:
        # bad arguments or malformed geometry in the input
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ScatterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
