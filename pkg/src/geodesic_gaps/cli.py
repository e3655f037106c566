"""Command-line interface: ``geodesic-gaps <command> ...``.

Exit codes are 0 on success, 2 for bad input or a violated hypothesis, 3 when
a resource cap stops a computation and 4 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import gap_bounds as gb
from . import render
from .cache import CacheHeader, read_cache, resolve_path, write_cache
from .errors import CapExceeded, DomainError, VerificationFailure
from .exact import ExactTrace
from .fuchsian import DEFAULT_WORD_CAP, ConjClass, bolza_group, enumerate_classes, epsilon_net, map_classes
from .hyperbolic_plane import Point
from .simple_geodesics import families, is_simple
from .verify import FAULTS, run_suite

# deeper families take far longer and sit behind --stretch
STRETCH_LIMIT = ExactTrace(109, 77)


def trace_arg(text: str) -> ExactTrace | float:
    """``"a+b√2"`` or an integer gives an exact trace; a decimal stays a float."""
    try:
        return ExactTrace.parse(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a+b√2' or a number, got {text!r}") from None


def _fmt_trace(t) -> str:
    return str(t) if isinstance(t, ExactTrace) else format(float(t), ".12g")


def _at_most(t, limit) -> bool:
    if isinstance(t, ExactTrace) and isinstance(limit, ExactTrace):
        return t <= limit
    return float(t) <= float(limit) + 1e-12


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _family_table(fams) -> list[str]:
    rows = [f"{'length':>14}  {'multiplicity':>12}  half_trace"]
    for f in fams:
        rows.append(f"{f.length:14.9f}  {f.multiplicity:12d}  {_fmt_trace(f.half_trace)}")
    return rows


# --- enumerate -----------------------------------------------------------------------------


def _load(path: Path):
    if not path.exists():
        return None
    try:
        return read_cache(path)
    except (DomainError, ValueError, KeyError) as exc:
        _err(f"ignoring unreadable cache {path}: {exc}")
        return None


def cmd_enumerate(args) -> int:
    limit = args.max_trace
    if not float(limit) > 1.0:
        raise DomainError("--max-trace must exceed 1")
    if float(limit) > float(STRETCH_LIMIT) + 1e-9 and not args.stretch:
        raise DomainError(f"--max-trace above {STRETCH_LIMIT} is a long run; pass --stretch to allow it")
    G = bolza_group(args.rotation)
    path = resolve_path(args.cache)
    t0 = time.perf_counter()
    old = _load(path)
    if old is not None and old[0].covers(G, limit):
        classes = [c for c in old[1] if _at_most(c.half_trace, limit)]
        _err(f"cache hit: {path}")
        source = "cache hit"
    else:
        known = {c.word: c.simple for c in old[1]} if old and old[0].fingerprint == G.fingerprint else {}
        try:
            classes = enumerate_classes(G, limit, args.word_length_cap)
        except CapExceeded as exc:
            partial = [c.with_simple(known.get(c.word)) for c in exc.partial or []]
            header = CacheHeader(G.fingerprint, G.rotation, limit, args.word_length_cap, False, len(partial))
            write_cache(path, header, partial)
            _err(f"truncated: {exc}; partial cache with {len(partial)} classes written to {path}")
            return CapExceeded.exit_code
        classes = [c.with_simple(known.get(c.word)) for c in classes]
        header = CacheHeader(G.fingerprint, G.rotation, limit, args.word_length_cap, True, len(classes))
        write_cache(path, header, classes)
        _err(f"cache written: {path}")
        source = "computed"
    if args.timing:
        _err(f"enumeration: {source} in {time.perf_counter() - t0:.3f} s")
    fams = families(classes)
    print(f"surface bolza  rotation {G.rotation}  max_half_trace {_fmt_trace(limit)}")
    print(f"classes {len(classes)}  families {len(fams)}")
    for row in _family_table(fams):
        print(row)
    return 0


# --- simple --------------------------------------------------------------------------------


def _require_cache(args):
    path = resolve_path(args.cache)
    got = _load(path)
    if got is None:
        raise DomainError(f"no cache at {path}; run 'geodesic-gaps enumerate --max-trace ...' first")
    return path, got[0], got[1]


def cmd_simple(args) -> int:
    path, header, classes = _require_cache(args)
    G = bolza_group(header.rotation)
    if header.fingerprint != G.fingerprint:
        raise DomainError("cache was written for a different group")
    if not header.complete:
        _err("warning: the cache is truncated; the table covers only the enumerated prefix")

    def decide(c: ConjClass):
        if c.simple is not None:
            return c.simple
        try:
            return is_simple(G, c)
        except (DomainError, CapExceeded):
            return None

    flags = map_classes(decide, classes, args.threads)
    classes = [c.with_simple(f) for c, f in zip(classes, flags)]
    write_cache(path, header, classes)
    undecided = [c for c in classes if c.simple is None]
    if undecided:
        _err(f"{len(undecided)} classes could not be decided:")
        for c in undecided:
            _err(f"  {c.word}  half_trace {_fmt_trace(c.half_trace)}")
        return VerificationFailure.exit_code
    shown = classes
    if args.max_trace is not None:
        shown = [c for c in classes if _at_most(c.half_trace, args.max_trace)]
    fams = families(shown, only_simple=True)
    n_simple = sum(1 for c in shown if c.simple)
    print(f"simple classes {n_simple} of {len(shown)}  families {len(fams)}")
    for row in _family_table(fams):
        print(row)
    return 0


# --- bounds --------------------------------------------------------------------------------


def _echo(rep: gb.GapReport, out) -> None:
    gap = rep.gap_radius
    print(f"{rep.kind}  gap_exists {str(rep.gap_exists).lower()}", file=out)
    print(f"gap_radius  log {gap.log_value:.12g}  decimal {gap.decimal}", file=out)
    print("constants", file=out)
    for k, q in rep.constants.items():
        print(f"  {k:<20} {q.decimal:>22}   log {q.log_value:.12g}", file=out)
    print("trail", file=out)
    for t in rep.trail:
        mark = "ok  " if t.ok else "FAIL"
        print(f"  {mark} {t.id}   [{t.lhs_log:.12g} {t.relation} {t.rhs_log:.12g}]", file=out)


def cmd_bounds(args) -> int:
    if args.which == "thin":
        cert = gb.thin_gap_certificate(args.lgamma, args.g)
        rep = cert.report()
    elif args.which == "lq1":
        rep = gb.theorem_lq1(args.g, args.sys, args.rho)
    elif args.which == "lq2":
        params = gb.SurfaceParams(args.g, args.n, args.eps, args.rho, small_geodesics=tuple(args.small))
        rep = gb.theorem_lq2(params)
    else:
        rep = gb.theorem_lq3(args.g, args.n, args.eps, args.rho)
    text = rep.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _echo(rep, sys.stdout)
    else:
        _echo(rep, sys.stderr)
        sys.stdout.write(text)
    return 0 if rep.all_ok else VerificationFailure.exit_code


# --- render --------------------------------------------------------------------------------


def _select(fams, wanted):
    if wanted is None:
        return list(range(len(fams)))
    index = {str(f.half_trace): i for i, f in enumerate(fams)}
    out = []
    for w in wanted:
        t = trace_arg(w)
        key = str(t) if isinstance(t, ExactTrace) else None
        if key not in index:
            raise DomainError(f"no simple family with half-trace {w}; run 'geodesic-gaps simple' to list them")
        out.append(index[key])
    return out


def cmd_render(args) -> int:
    overlays = [render.Overlay(Point(x, y), r, i) for i, (x, y, r) in enumerate(args.gap_disk or [])]
    for ov in overlays:
        if not abs(ov.center.z) < 1 or not ov.radius > 0:
            raise DomainError("--gap-disk needs a point inside the unit disk and a positive radius")
    if args.families == []:
        fams, chosen, G = [], [], bolza_group()
    else:
        _, header, classes = _require_cache(args)
        if any(c.simple is None for c in classes):
            raise DomainError("the cache has no simplicity flags; run 'geodesic-gaps simple' first")
        G = bolza_group(header.rotation)
        fams = families(classes, only_simple=True)
        chosen = _select(fams, args.families)
    full = render.scene_from_families(fams, G, overlays, size=args.size)
    layers = [full.layers[i] for i in chosen]
    out = Path(args.out)
    written = []
    if args.separate and layers:
        for layer in layers:
            scene = replace(full, layers=(layer,))
            p = out.with_name(f"{out.stem}-family{layer.style}{out.suffix or '.svg'}")
            p.write_text(render.emit_svg(scene), encoding="utf-8")
            written.append(p)
    else:
        scene = replace(full, layers=tuple(layers))
        out.write_text(render.emit_svg(scene), encoding="utf-8")
        written.append(out)
    legend = out.with_suffix(".legend.json")
    legend.write_text(render.legend(replace(full, layers=tuple(layers))), encoding="utf-8")
    for p in written:
        print(p)
    print(legend)
    return 0


# --- verify and net ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = run_suite(args.fault, args.seed)
    failed = [c for c in checks if not c.ok]
    for c in checks:
        if args.json:
            print(json.dumps(c.to_dict(), sort_keys=True, ensure_ascii=False))
        else:
            print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}")
    summary = {"checks": len(checks), "failed": len(failed)}
    if args.json:
        print(json.dumps({"summary": summary}, sort_keys=True))
    else:
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _err(f"verify took {time.perf_counter() - t0:.2f} s")
    return VerificationFailure.exit_code if failed else 0


def cmd_net(args) -> int:
    net = epsilon_net(bolza_group(), args.eps, args.seed)
    doc = {
        "schema": 1,
        "eps": args.eps,
        "seed": args.seed,
        "covering_radius": net.covering_radius,
        "points": [[p.x, p.y] for p in net.points],
    }
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _err(f"{len(net)} points, covering radius {net.covering_radius:.6f}")
    return 0


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="enumeration cache file (GEODESIC_GAP_CACHE overrides)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="geodesic-gaps", description="Simple geodesics and gap bounds on hyperbolic surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list closed geodesics up to a half-trace")
    e.add_argument("--surface", choices=["bolza"], default="bolza")
    e.add_argument("--max-trace", type=trace_arg, required=True, help="'a+b√2' or a decimal")
    e.add_argument("--word-length-cap", type=int, default=DEFAULT_WORD_CAP)
    e.add_argument("--rotation", type=int, default=0, help="relabel generators by k eighth turns")
    e.add_argument("--stretch", action="store_true", help=f"allow limits above {STRETCH_LIMIT}")
    e.add_argument("--timing", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("simple", parents=[common], help="decide simplicity and print simple families")
    s.add_argument("--max-trace", type=trace_arg, help="only show families up to this half-trace")
    s.set_defaults(func=cmd_simple)

    b = sub.add_parser("bounds", help="gap radius certificates")
    bsub = b.add_subparsers(dest="which", required=True)
    t = bsub.add_parser("thin")
    t.add_argument("--g", type=int, required=True)
    t.add_argument("--lgamma", type=float, required=True, help="length of the short geodesic")
    l1 = bsub.add_parser("lq1")
    l1.add_argument("--g", type=int, required=True)
    l1.add_argument("--sys", type=float, required=True)
    l1.add_argument("--rho", type=float, required=True)
    l2 = bsub.add_parser("lq2")
    l2.add_argument("--g", type=int, required=True)
    l2.add_argument("--n", type=int, default=0)
    l2.add_argument("--eps", type=float, default=gb.EPS_MAX)
    l2.add_argument("--rho", type=float, required=True)
    l2.add_argument("--small", type=float, nargs="*", default=[], help="short geodesic lengths, descending")
    l3 = bsub.add_parser("lq3")
    l3.add_argument("--g", type=int, required=True)
    l3.add_argument("--n", type=int, default=0)
    l3.add_argument("--eps", type=float, default=gb.EPS_MAX)
    l3.add_argument("--rho", type=float, required=True)
    for q in (t, l1, l2, l3):
        q.add_argument("--out", help="write the JSON report here instead of stdout")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("render", parents=[common], help="draw simple families on the octagon")
    r.add_argument("--families", nargs="*", help="half-traces to draw; none draws the octagon alone")
    r.add_argument("--out", default="bolza.svg")
    r.add_argument("--separate", action="store_true", help="one file per family")
    r.add_argument("--size", type=int, default=800)
    r.add_argument("--gap-disk", type=float, nargs=3, action="append", metavar=("X", "Y", "R"))
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    v.add_argument("--fault", choices=FAULTS, help="inject a fault to exercise the harness")
    v.add_argument("--json", action="store_true", help="one JSON object per line")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("net", parents=[common], help="greedy eps-net on the Bolza octagon")
    n.add_argument("--eps", type=float, default=gb.EPS_MAX)
    n.add_argument("--out")
    n.set_defaults(func=cmd_net)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        _err("error: --threads must be at least 1")
        return DomainError.exit_code
    try:
        return args.func(args)
    except DomainError as exc:
        _err(f"error: {exc}")
        return DomainError.exit_code
    except CapExceeded as exc:
        _err(f"error: {exc}")
        return CapExceeded.exit_code
    except VerificationFailure as exc:
        _err(f"verification failed: {exc}")
        return VerificationFailure.exit_code


if __name__ == "__main__":
    sys.exit(main())
