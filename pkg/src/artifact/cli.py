"""Command line entry point.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .config import (
    ChartSpec,
    ConfigError,
    HFPSSConfig,
    default_out_dir,
    load_json,
    parse_range,
)

OK, FAILED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep the message short
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _emit(obj: Any, out: Path | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=str)
    if out is None:
        print(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text + "\n")
        print(f"wrote {out}")


def _out_path(args, name: str) -> Path:
    if getattr(args, "out", None):
        return Path(args.out)
    return default_out_dir() / name


# -- sseq ---------------------------------------------------------------------

def _load_run(spec_path: str, window: int | None):
    from .algebra import ExponentWindow, MonomialAlgebra
    from .sseq import Differential, SSWindow
    from .tmf13 import build_scenario

    data = load_json(spec_path)
    if not isinstance(data, dict):
        raise ConfigError("spec must be a JSON object")
    if "algebra" in data:
        try:
            A = MonomialAlgebra.from_json(data["algebra"])
            diffs = [Differential.from_json(A, d) for d in data.get("differentials", [])]
            w = data.get("window", {"a": [-20, 20], "b": [-20, 20], "s_max": 32})
            if window is not None:
                w = {**w, "a": [-window, window], "b": [-window, window]}
            lows = {str(k): int(v) for k, v in data.get("lower", {}).items()}
            exps = ExponentWindow.lower(int(data.get("bound", 128)), **lows)
            sw = SSWindow.from_json(w, exps)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad sseq spec: {exc}") from exc
        return A, diffs, sw, data.get("r_max"), bool(data.get("validate", True)), "custom"
    cfg = HFPSSConfig.from_json(data)
    try:
        sc = build_scenario(cfg.scenario, cfg.truncation)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    n = cfg.window if window is None else window
    return sc.algebra, list(sc.differentials), sc.window(n, cfg.s_max), cfg.r_max, cfg.validate, cfg.scenario


def cmd_sseq_run(args) -> int:
    from .sseq import run_to_stable

    A, diffs, w, r_max, validate, name = _load_run(args.spec, args.window)
    res = run_to_stable(A, diffs, w, r_max, validate)
    nonzero = {}
    for key in w.keys():
        g = res.page.group(key)
        if not g.is_zero:
            nonzero[",".join(map(str, key))] = g.pretty()
    report = {
        "scenario": name,
        "window": w.to_json(),
        "stabilization_page": res.stabilization_page,
        "nonzero_differentials": res.nonzero_differentials,
        "unresolved": res.unresolved,
        "e_infinity": nonzero if args.json else len(nonzero),
        "status": "pass" if res.stable else "fail",
    }
    _emit(report, Path(args.out) if args.out else None)
    return OK if res.stable else FAILED


def cmd_sseq_chart(args) -> int:
    from .chart import chart_from_page, render_svg
    from .tmf13 import build_scenario, e_infinity_page

    spec = ChartSpec.from_json(load_json(args.spec)) if args.spec else ChartSpec(
        stems=parse_range(args.stems), filtrations=parse_range(args.filtrations)
    )
    try:
        sc = build_scenario(args.scenario)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    n = args.window or max(abs(spec.stems[0]), abs(spec.stems[1])) + spec.filtrations[1] + 1
    chain = e_infinity_page(sc, sc.window(n, spec.filtrations[1])).chain()
    pages = {p.r: p for p in chain}
    page = pages.get(args.page, chain[-1])
    try:
        data = chart_from_page(spec, page)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out = _out_path(args, f"{args.scenario}-E{page.r}.svg")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render_svg(data, spec.cell))
    print(f"wrote {out}")
    if args.json:
        _emit(data.to_json(), out.with_suffix(".json"))
    return OK


# -- tmf13 --------------------------------------------------------------------

def cmd_tmf13_verify(args) -> int:
    from .tmf13 import build_scenario, e_infinity_page, verify_presentation

    if args.scenario != "tmf13":
        raise ConfigError("the presentation check is defined for the scenario tmf13 only")
    sc = build_scenario(args.scenario)
    w = sc.window(args.window, args.s_max)
    rep = verify_presentation(e_infinity_page(sc, w), w)
    body = rep.to_json()
    body["status"] = "pass" if rep.ok else "fail"
    _emit(body, Path(args.out) if args.out else None)
    return OK if rep.ok else FAILED


# -- slice --------------------------------------------------------------------

def cmd_slice_chart(args) -> int:
    from .chart import chart_from_groups, render_svg
    from .slice import forced_negative_differentials, slice_cells, slice_e2, validate_index_map

    lo, hi = parse_range(args.stems)
    validate_index_map()
    groups = slice_e2(slice_cells(lo - 40, hi + 40), (lo, hi))
    s_hi = max((s for (_, s) in groups), default=0)
    forced = forced_negative_differentials(groups)
    arrows = [
        (r["source"][0], r["source"][1], r["target"][0], r["target"][1], r["r"])
        for r in forced
        if r["status"] == "forced"
    ]
    spec = ChartSpec(stems=(lo, hi), filtrations=(min(0, min((s for (_, s) in groups), default=0)), s_hi),
                     title=f"slice E2, stems {lo}..{hi}")
    data = chart_from_groups(spec, groups, arrows)
    out = _out_path(args, "slice-chart.svg")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(render_svg(data, spec.cell))
    print(f"wrote {out}")
    if args.json:
        payload = data.to_json()
        payload["differentials"] = forced
        _emit(payload, out.with_suffix(".json"))
    return OK


# -- anderson -----------------------------------------------------------------

def cmd_anderson_check(args) -> int:
    from .anderson import certify_perfect, serre_pairing

    rows = []
    for k in range(args.kmax + 1):
        try:
            perfect = certify_perfect(serre_pairing(k))
        except ValueError:
            perfect = False
        rows.append({"k": k, "perfect": perfect})
    _emit(rows, Path(args.out) if args.out else None)
    return OK if all(r["perfect"] for r in rows) else FAILED


# -- picard -------------------------------------------------------------------

def cmd_picard_compute(args) -> int:
    from .picard import TARGETS, picard_pipeline

    if args.target not in TARGETS:
        raise ConfigError(f"unknown target {args.target!r}; choose from {', '.join(TARGETS)}")
    res = picard_pipeline(args.target, args.truncation)
    if args.json:
        _emit(res, Path(args.out) if args.out else None)
    else:
        _emit(res["group"], Path(args.out) if args.out else None)
    return OK if res["ok"] else FAILED


# -- report -------------------------------------------------------------------

# checks 1-3 share one HFPSS run, so they travel together
_GROUPS = ((1, 2, 3), (4,), (5,), (6, 7), (8,), (9,), (10,))


def _run_group(numbers: tuple[int, ...], seed: int) -> list[dict]:
    from .report import run_check

    return [run_check(n, seed).to_json() for n in numbers]


def cmd_report_all(args) -> int:
    from .report import CheckResult

    results: list[dict] = []
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_run_group, g, args.seed) for g in _GROUPS]
            for f in futures:
                results.extend(f.result())
    else:
        for g in _GROUPS:
            results.extend(_run_group(g, args.seed))
    results.sort(key=lambda r: r["number"])
    for r in results:
        print(CheckResult(r["number"], r["name"], r["ok"], r["summary"]).line())
    passed = sum(r["ok"] for r in results)
    print(f"{passed}/{len(results)} criteria pass")
    if args.json or args.out:
        _emit({"seed": args.seed, "results": results}, _out_path(args, "report.json"))
    return OK if passed == len(results) else FAILED


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Equivariant spectral sequence toolkit for tmf_1(3).")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(sp, window_default=None):
        sp.add_argument("--window", type=int, default=window_default)
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")

    sseq = sub.add_parser("sseq").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    run = sseq.add_parser("run", help="run a spectral sequence to its stable page")
    run.add_argument("--spec", required=True)
    common(run)
    run.set_defaults(fn=cmd_sseq_run)
    ch = sseq.add_parser("chart", help="SVG chart of a page")
    ch.add_argument("--scenario", default="tmf13")
    ch.add_argument("--page", type=int, default=2)
    ch.add_argument("--spec")
    ch.add_argument("--stems", default="-8:16")
    ch.add_argument("--filtrations", default="0:12")
    common(ch)
    ch.set_defaults(fn=cmd_sseq_chart)

    tmf = sub.add_parser("tmf13").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    ver = tmf.add_parser("verify", help="compare E_infinity with the closed presentation")
    ver.add_argument("--scenario", default="tmf13")
    ver.add_argument("--s-max", type=int, default=64)
    common(ver, 40)
    ver.set_defaults(fn=cmd_tmf13_verify)

    sl = sub.add_parser("slice").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sc = sl.add_parser("chart", help="slice E2 chart with forced differentials")
    sc.add_argument("--stems", default="-24:24")
    common(sc)
    sc.set_defaults(fn=cmd_slice_chart)

    an = sub.add_parser("anderson").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    ac = an.add_parser("check", help="perfectness of the Serre pairing")
    ac.add_argument("--kmax", type=int, default=30)
    common(ac)
    ac.set_defaults(fn=cmd_anderson_check)

    pc = sub.add_parser("picard").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    comp = pc.add_parser("compute", help="Picard group of a target")
    comp.add_argument("--target", default="Tmf13")
    comp.add_argument("--truncation", type=int, default=2)
    common(comp)
    comp.set_defaults(fn=cmd_picard_compute)

    rp = sub.add_parser("report").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    ra = rp.add_parser("all", help="run every acceptance check")
    ra.add_argument("--jobs", type=int, default=4)
    common(ra)
    ra.set_defaults(fn=cmd_report_all)
    return p


_RANGE_FLAGS = ("--stems", "--filtrations")


def _glue_ranges(argv: Sequence[str]) -> list[str]:
    # "--stems -24:24" would read -24:24 as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = _glue_ranges(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
