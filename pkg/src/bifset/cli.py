"""Command-line interface: bifset <subcommand> [options]."""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath

from . import __version__
from .cf import LT, Interval, compare, format_exact, parse, to_decimal
from .dims import SWEEP_HEADER, dim_estimate, sweep
from .exceptional import EmptySetError, ell, in_E, pseudocenter
from .feigen import SCALING_HEADER, scaling_limit, scaling_product
from .gaps import gaps, gaps_csv_rows, in_B
from .sturmian import section_dim
from .tuning import (InfinitelyRenormalizable, cascade, renorm_decompose,
                     retune)

DIGITS = 12
DEFAULT_EFFORT = 6
GAPS_HEADER = "label_p,label_q,m,lo,hi,lo_dec,hi_dec"


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def show(x) -> str:
    return f"{format_exact(x)} ≈ {to_decimal(x, DIGITS)}"


def fnum(v) -> str:
    return mpmath.nstr(mpmath.mpf(v), DIGITS)


def read_config(path: Optional[str]) -> dict:
    cfg = {}
    if not path:
        return cfg
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            cfg[k] = v
    return cfg


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.chmod(tmp, 0o644)
    os.replace(tmp, path)


def csv_text(kind: str, header: str, rows: List[List[str]]) -> str:
    buf = io.StringIO()
    buf.write(f"# bifset {kind} v1\n")
    buf.write(header + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def svg_polyline(points, title: str, xlabel: str, ylabel: str,
                 width: int = 640, height: int = 400) -> str:
    """A bare line chart; enough to eyeball the shape of a curve."""
    pad = 50
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(max(ys), 1e-9)
    sx = lambda x: pad + (x - x0) / ((x1 - x0) or 1) * (width - 2 * pad)
    sy = lambda y: height - pad - (y - y0) / ((y1 - y0) or 1) * (height - 2 * pad)
    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in points)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        f'<text x="{width / 2}" y="20" text-anchor="middle">{title}</text>\n'
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<text x="{pad}" y="{height - pad + 20}">{x0:.4f}</text>\n'
        f'<text x="{width - pad}" y="{height - pad + 20}" text-anchor="end">{x1:.4f}</text>\n'
        f'<text x="{pad - 5}" y="{pad}" text-anchor="end">{y1:.3f}</text>\n'
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>\n'
        f'<text x="15" y="{height / 2}" transform="rotate(-90 15 {height / 2})" '
        f'text-anchor="middle">{ylabel}</text>\n'
        f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{pts}"/>\n'
        f'</svg>\n')


# -- subcommands --------------------------------------------------------------

def cmd_ell(a, out):
    out.write(show(ell(parse(a.t))) + "\n")


def cmd_member(a, out):
    x, t = parse(a.x), parse(a.t)
    if a.set == "B":
        ok = in_B(x, t)
    else:
        ok = in_E(x) and compare(x, t) != LT
    out.write(("true" if ok else "false") + "\n")


def cmd_gaps(a, out):
    t = parse(a.t)
    gs = gaps(t, a.qmax)
    for g in gs:
        r = g.label.r
        iv = g.interval
        lb = "[" if iv.lo_closed else "("
        rb = "]" if iv.hi_closed else ")"
        out.write(f"V_{r}  m={g.label.running_time}  {lb}{format_exact(g.lo)}, "
                  f"{format_exact(g.hi)}{rb}  ≈ {lb}{to_decimal(g.lo, DIGITS)}, "
                  f"{to_decimal(g.hi, DIGITS)}{rb}\n")
    if a.csv:
        write_atomic(a.csv, csv_text("gaps", GAPS_HEADER, gaps_csv_rows(gs)))


def cmd_dim(a, out):
    enc = dim_estimate(parse(a.t), a.set, a.effort)
    out.write(f"[{fnum(enc.lo)}, {fnum(enc.hi)}]\n")


def cmd_sweep(a, out):
    rows = sweep(parse(a.from_), parse(a.to), a.steps, a.set, a.effort)
    table = []
    for r in rows:
        table.append([str(r.t),
                      format_exact(r.ell) if r.ell is not None else "empty",
                      fnum(r.lo), fnum(r.hi), str(r.effort), r.mode])
    text = csv_text("sweep", SWEEP_HEADER, table)
    out.write(text)
    if a.csv:
        write_atomic(a.csv, text)
    if a.svg:
        pts = [(float(r.t), r.hi) for r in rows]
        write_atomic(a.svg, svg_polyline(pts, f"dim upper bound, {a.set}-set, effort {a.effort}",
                                         "t", "dim_hi"))


def cmd_cascade(a, out):
    for k, x in enumerate(cascade(Fraction(a.r), a.n)):
        out.write(f"{k}  {show(x)}\n")


def cmd_scaling(a, out):
    if not 1 <= a.n <= 10:
        raise ValueError("n must be in 1..10")
    out.write(SCALING_HEADER + "\n")
    for n in range(1, a.n + 1):
        out.write(",".join(scaling_product(n).csv(DIGITS)) + "\n")
    out.write(f"# limit 5 log((sqrt5+1)/2) = {fnum(scaling_limit())}\n")


def cmd_pseudocenter(a, out):
    lo, hi = parse(a.lo), parse(a.hi)
    if compare(lo, hi) != LT:
        raise ValueError("need lo < hi")
    out.write(str(pseudocenter(Interval(lo, hi, False, False))) + "\n")


def cmd_spectrum(a, out):
    enc = section_dim(a.N, a.effort)
    out.write(f"section [{a.N + 2}, {a.N + 3}]  dim in [{fnum(enc.lo)}, {fnum(enc.hi)}]\n")


def cmd_decompose(a, out):
    x = parse(a.x)
    try:
        chain, res = renorm_decompose(x)
    except InfinitelyRenormalizable as e:
        out.write(f"{e}\n")
        return
    assert retune(chain, res) == x
    names = ", ".join(str(r) for r in chain)
    out.write(f"chain [{names}]\nresidual {show(res)}\n")


def build_parser() -> argparse.ArgumentParser:
    p = Parser(prog="bifset", description="Bifurcation sets of continued fractions.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="key=value file (effort, outdir)")
    sub = p.add_subparsers(dest="cmd", parser_class=Parser)
    sub.required = True

    s = sub.add_parser("ell", help="ell(t) = min B(t)")
    s.add_argument("--t", required=True)
    s.set_defaults(func=cmd_ell)

    s = sub.add_parser("member", help="membership in B(t) or E(t)")
    s.add_argument("--x", required=True)
    s.add_argument("--t", required=True)
    s.add_argument("--set", choices=["B", "E"], required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("gaps", help="gaps of B(t) from t-labels")
    s.add_argument("--t", required=True)
    s.add_argument("--qmax", type=int, required=True)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_gaps)

    s = sub.add_parser("dim", help="dimension enclosure")
    s.add_argument("--t", required=True)
    s.add_argument("--set", choices=["B", "E"], required=True)
    s.add_argument("--effort", type=int)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("sweep", help="dimension over a grid of t")
    s.add_argument("--from", dest="from_", required=True)
    s.add_argument("--to", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--set", choices=["B", "E"], required=True)
    s.add_argument("--effort", type=int)
    s.add_argument("--csv")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("cascade", help="tau_r of the period-doubling cascade")
    s.add_argument("--r", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cascade)

    s = sub.add_parser("scaling", help="scaling law table")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_scaling)

    s = sub.add_parser("pseudocenter", help="pseudocenter of (lo, hi)")
    s.add_argument("--lo", required=True)
    s.add_argument("--hi", required=True)
    s.set_defaults(func=cmd_pseudocenter)

    s = sub.add_parser("spectrum", help="dimension of a recurrence spectrum section")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--effort", type=int)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("decompose", help="renormalization chain of x")
    s.add_argument("--x", required=True)
    s.set_defaults(func=cmd_decompose)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = read_config(a.config)
    except (OSError, UsageError) as e:
        sys.stderr.write(f"bifset: {e}\n")
        return 1
    if hasattr(a, "effort") and a.effort is None:
        a.effort = int(cfg.get("effort", DEFAULT_EFFORT))
    outdir = cfg.get("outdir")
    for name in ("csv", "svg"):
        path = getattr(a, name, None)
        if path and outdir and not os.path.isabs(path):
            setattr(a, name, os.path.join(outdir, path))
    try:
        a.func(a, out)
    except (ValueError, ZeroDivisionError, EmptySetError) as e:
        sys.stderr.write(f"bifset: {e}\n")
        return 2
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
