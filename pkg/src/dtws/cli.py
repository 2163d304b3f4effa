"""Command line interface: ssr, dist, cluster, classify, ensemble, synth.

All outputs are deterministic for a given input and flag set. Data errors
exit with status 1, usage errors with status 2. The DTWS_WORKERS environment
variable sets the number of workers used for all-pairs distance work.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import synth
from .classify import HyperGrid, LabeledDataset, load_ucr, loocv_select, one_nn
from .cluster import LINKAGES, agglomerate, select_k
from .ensemble import ANCHORS, dtw_s_ensemble, ensemble_all_bases, mean_ensemble
from .errors import DTWSError
from .io import (
    fmt,
    load_series_csv,
    write_distance_csv,
    write_json,
    write_matrix_csv,
    write_series_csv,
)
from .measures import MEASURE_KINDS, MeasureConfig, concrete_config, distance_matrix
from .series import moving_average, ssr_matrix
from .shapelets import (
    BetaRule,
    FlatnessParams,
    INFINITE_BETA,
    default_shapelet_set,
    load_shapelet_json,
)


def _parse_tau(text):
    if text is None or text.lower() in ("inf", "none", "unbounded"):
        return None
    if "." in text:
        return float(text)
    return int(text)


def _add_measure_args(p):
    p.add_argument("--measure", default="dtw_plus_s", choices=MEASURE_KINDS)
    p.add_argument("--tau", default=None,
                   help="warping window: columns (int), fraction of T (float), or 'inf'")
    p.add_argument("--smooth", type=int, default=1, help="moving-average window, 1 = none")
    p.add_argument("--shapelets", default=None, help="shapelet set JSON (default: bundled set)")
    p.add_argument("--m0", type=float, default=None, help="override flatness slope threshold")
    p.add_argument("--beta", default=None, help="override flatness decay rate (number or 'inf')")


def _build_config(args) -> MeasureConfig:
    if args.shapelets:
        sset, flatness = load_shapelet_json(args.shapelets)
    else:
        sset, flatness = default_shapelet_set()
    if args.beta is not None:
        beta = INFINITE_BETA if args.beta.lower() in ("inf", "infinite") else float(args.beta)
        flatness = FlatnessParams(m0=args.m0 if args.m0 is not None else 0.0, beta=beta)
    elif args.m0 is not None:
        if isinstance(flatness, BetaRule):
            flatness = BetaRule(p_floor=flatness.p_floor, m0=args.m0)
        else:
            flatness = FlatnessParams(m0=args.m0, beta=flatness.beta)
    return MeasureConfig(
        kind=args.measure,
        tau=_parse_tau(args.tau),
        shapelet_set=sset,
        flatness=flatness,
        smoothing_window=args.smooth,
    )


def _workers() -> int:
    return max(1, int(os.environ.get("DTWS_WORKERS", "1")))


def _figdir(args):
    if getattr(args, "figures", None):
        os.makedirs(args.figures, exist_ok=True)
        return args.figures
    return None


def _flatness_json(flatness):
    if isinstance(flatness, BetaRule):
        return {"beta_rule": {"p_floor": flatness.p_floor}, "m0": flatness.m0}
    beta = "inf" if flatness.is_infinite else float(fmt(flatness.beta))
    return {"m0": flatness.m0, "beta": beta}


def _config_json(cfg: MeasureConfig):
    return {
        "kind": cfg.kind,
        "tau": cfg.tau,
        "smoothing_window": cfg.smoothing_window,
        "flatness": _flatness_json(cfg.flatness),
    }


def cmd_ssr(args):
    series = load_series_csv(args.input, with_ids=args.ids)
    if not 0 <= args.row < len(series):
        raise ValueError(f"--row {args.row} outside 0..{len(series) - 1}")
    cfg = _build_config(args)
    cfg = concrete_config(cfg, series)
    target = moving_average(series[args.row], cfg.smoothing_window)
    mat = ssr_matrix(target, cfg.shapelet_set, cfg.flatness)
    write_matrix_csv(args.output, mat.columns)
    figdir = _figdir(args)
    if figdir:
        from . import viz

        viz.ssr_image(mat, os.path.join(figdir, "ssr.png"))
    return 0


def cmd_dist(args):
    series = load_series_csv(args.input, with_ids=args.ids)
    cfg = _build_config(args)
    dist = distance_matrix(series, cfg, workers=_workers())
    if args.format == "json":
        write_json(args.output, {"ids": list(dist.ids), "matrix": dist.values.tolist()})
    else:
        write_distance_csv(args.output, dist)
    figdir = _figdir(args)
    if figdir:
        from . import viz

        viz.distance_heatmap(dist, os.path.join(figdir, "distance.png"))
    return 0


def cmd_cluster(args):
    series = load_series_csv(args.input, with_ids=args.ids)
    cfg = _build_config(args)
    dist = distance_matrix(series, cfg, workers=_workers())
    if args.k is not None:
        result = agglomerate(dist, args.k, linkage=args.linkage)
    else:
        result = select_k(dist, k_max=args.kmax, linkage=args.linkage)
    write_json(args.output, {
        "ids": list(dist.ids),
        "labels": result.labels.tolist(),
        "k": result.k,
        "silhouette": result.mean_silhouette,
        "linkage": result.linkage,
    })
    if args.series_output:
        with open(args.series_output, "w") as fh:
            for s, lab in zip(series, result.labels):
                fh.write(f"{s.id},{lab}," + ",".join(fmt(v) for v in s.values) + "\n")
    figdir = _figdir(args)
    if figdir:
        from . import viz

        viz.cluster_panels(series, result.labels, os.path.join(figdir, "clusters.png"))
    return 0


def cmd_classify(args):
    train = load_ucr(args.train)
    test = load_ucr(args.test)
    cfg = _build_config(args)
    report = {"train": train.name, "test": test.name, "measure": cfg.kind}
    if args.no_search:
        chosen = cfg
    else:
        grid = HyperGrid(
            tau_fractions=tuple(float(x) for x in args.tau_grid.split(",")),
            smooth_fractions=tuple(float(x) for x in args.smooth_grid.split(",")),
        )
        selection = loocv_select(train, grid, cfg)
        chosen = selection.config
        report["grid"] = list(selection.grid_errors)
    predictions, error = one_nn(train, test, chosen)
    report["chosen"] = _config_json(chosen)
    report["error"] = error
    report["predictions"] = predictions
    write_json(args.report, report)
    return 0


def cmd_ensemble(args):
    series = load_series_csv(args.input, with_ids=args.ids)
    cfg = _build_config(args)
    if args.base == "all":
        results = ensemble_all_bases(series, cfg, anchor=args.anchor)
    else:
        results = [dtw_s_ensemble(series, int(args.base), cfg, anchor=args.anchor)]
    payload = {
        "anchor": args.anchor,
        "bases": [
            {
                "base_id": r.base_id,
                "peak": r.peak,
                "points": [
                    {"alignment": p.alignment_id, "t": p.t_bar, "a": p.a_bar} for p in r.points
                ],
            }
            for r in results
        ],
    }
    write_json(args.output_json, payload)
    write_series_csv(args.output_csv, [r.interpolated for r in results], with_ids=True)
    figdir = _figdir(args)
    if figdir:
        from . import viz

        lengths = {len(s) for s in series}
        mean = mean_ensemble(series) if len(lengths) == 1 else results[0].interpolated
        viz.ensemble_overlay(series, results, mean, os.path.join(figdir, "ensemble.png"))
    return 0


def cmd_synth(args):
    if args.kind == "archetypes":
        series, _ = synth.archetype_set(seed=args.seed)
        write_series_csv(args.output, series, with_ids=args.ids)
    elif args.kind == "two-peak":
        series = synth.two_peak_pair()
        write_series_csv(args.output, series, with_ids=args.ids)
    elif args.kind in ("spike", "noisy-spike"):
        noise = 0.18 if args.kind == "noisy-spike" else 0.0
        ds = synth.spike_dataset(seed=args.seed, noise=noise, T=48 if noise else 40,
                                 per_class=14 if noise else 12)
        _write_labeled(args.output, ds)
    elif args.kind == "shifted":
        ds = synth.shifted_prototype_dataset(seed=args.seed)
        _write_labeled(args.output, ds)
    return 0


def _write_labeled(path, ds: LabeledDataset):
    with open(path, "w") as fh:
        for label, s in ds.instances:
            fh.write(f"{label}," + ",".join(fmt(v) for v in s.values) + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dtws",
        description="Trend-aware time-series similarity, clustering, classification and ensembling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ssr", help="shapelet-space matrix of one series")
    p.add_argument("--input", required=True)
    p.add_argument("--ids", action="store_true", help="first CSV column holds series ids")
    p.add_argument("--row", type=int, default=0, help="which series of the input to transform")
    p.add_argument("--output", required=True)
    p.add_argument("--figures", default=None, help="directory for rendered figures")
    _add_measure_args(p)
    p.set_defaults(func=cmd_ssr)

    p = sub.add_parser("dist", help="all-pairs distance matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--ids", action="store_true")
    p.add_argument("--output", required=True)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--figures", default=None)
    _add_measure_args(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("cluster", help="agglomerative clustering with silhouette-selected k")
    p.add_argument("--input", required=True)
    p.add_argument("--ids", action="store_true")
    p.add_argument("--output", required=True, help="JSON result path")
    p.add_argument("--series-output", default=None, help="per-cluster series CSV")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--k", type=int, default=None, help="fixed cluster count (skips selection)")
    p.add_argument("--linkage", default="average", choices=LINKAGES)
    p.add_argument("--figures", default=None)
    _add_measure_args(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("classify", help="1-NN classification with grid search")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--report", required=True, help="JSON report path")
    p.add_argument("--tau-grid", default="0,0.01,0.02,0.03,0.04,0.05,0.06,0.07")
    p.add_argument("--smooth-grid", default="0,0.1,0.2,0.4")
    p.add_argument("--no-search", action="store_true",
                   help="use --tau/--smooth directly instead of cross-validating")
    _add_measure_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ensemble", help="alignment ensemble of a trajectory collection")
    p.add_argument("--input", required=True)
    p.add_argument("--ids", action="store_true")
    p.add_argument("--base", default="0", help="base series index, or 'all'")
    p.add_argument("--anchor", default="start", choices=ANCHORS)
    p.add_argument("--output-json", required=True)
    p.add_argument("--output-csv", required=True)
    p.add_argument("--figures", default=None)
    _add_measure_args(p)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("synth", help="deterministic synthetic datasets")
    p.add_argument("--kind", required=True,
                   choices=("archetypes", "two-peak", "spike", "noisy-spike", "shifted"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ids", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DTWSError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
