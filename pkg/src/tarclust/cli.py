"""Command-line entry point: ``tarclust {cluster,simulate,features,test-nonlinearity}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path


from . import report
from .config import config_from_mapping, load_config, read_yaml
from .errors import ConfigError, IngestionError, InvalidArgumentError, TarclustError
from .features import assemble_matrix
from .io import ingest_csv
from .pipeline import TooFewSeriesError, cluster_vectors, hansen_pvalues, make_windows, prepare, slice_window

log = logging.getLogger("tarclust")

EXIT_OK, EXIT_CONFIG, EXIT_INGEST, EXIT_TOO_FEW = 0, 2, 3, 4
HANSEN_PAIRS = ((1, 2), (1, 3), (2, 3))


def _add_data_args(p):
    p.add_argument("--data", required=True, help="CSV with a date column and one column per series")
    p.add_argument("--date-column", default="date")
    p.add_argument("--columns", help="comma-separated value columns (default: all)")


def _add_pipeline_args(p):
    p.add_argument("--config", help="YAML config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--k", type=int, help="number of SETAR regimes")
    p.add_argument("--p-max", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--lags", type=int, dest="l", help="correlation lag horizon l")
    p.add_argument("--sigma", help="affinity bandwidth: auto, rms or a positive number")
    p.add_argument("--c-range", help="candidate cluster counts as MIN:MAX")
    p.add_argument("--restarts", type=int)
    p.add_argument("--bootstrap-reps", type=int)
    p.add_argument("--stationarize", dest="stationarize_mode", choices=["log_diff", "diff", "none"])
    p.add_argument("--setar-method", choices=["grid", "sequential"])


def _overrides(args) -> dict:
    out = {}
    for name in ("seed", "k", "p_max", "d_max", "l", "restarts", "bootstrap_reps", "stationarize_mode", "setar_method"):
        out[name] = getattr(args, name, None)
    if getattr(args, "sigma", None) is not None:
        out["sigma"] = args.sigma if args.sigma in ("auto", "rms") else _number(args.sigma, "--sigma")
    if getattr(args, "c_range", None):
        try:
            lo, hi = args.c_range.split(":")
            out["c_range"] = (int(lo), int(hi))
        except ValueError:
            raise ConfigError(f"--c-range must look like 2:15, got {args.c_range!r}") from None
    return out


def _number(text, flag):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{flag} must be a number") from None


def _window_override(args):
    if getattr(args, "rolling", None):
        try:
            length, step = (int(v) for v in args.rolling.split(":"))
        except ValueError:
            raise ConfigError(f"--rolling must look like LENGTH:STEP, got {args.rolling!r}") from None
        return {"length": length, "step": step}
    if getattr(args, "window", None) == "crisis":
        return "crisis"
    return None


def _load_dataset(args):
    cols = None
    if args.columns is not None:
        cols = [c.strip() for c in args.columns.split(",") if c.strip()]
    return ingest_csv(args.data, args.date_column, cols)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# --- cluster -------------------------------------------------------------------


def _cluster_window(series, w, config, labels):
    entry = {"name": w.name, "start": str(w.start), "end": str(w.end)}
    sliced = [slice_window(s, w) for s in series]
    length = len(sliced[0].values) if sliced else 0
    # one observation is lost to stationarizing
    need = config.min_length + (0 if config.stationarize_mode == "none" else 1)
    if length < need:
        log.warning("window %s skipped: %d observations, need %d", w.name, length, need)
        entry.update(status="skipped", observations=length, clusters=None,
                     failures={lab: f"window has {length} observations, need {need}" for lab in labels})
        return entry
    vectors, failures = prepare(sliced, config)
    entry["observations"] = length
    entry["failures"] = failures
    if len(vectors) < 2:
        entry.update(status="failed", clusters=None, error=f"only {len(vectors)} series survived")
        return entry
    fm, result = cluster_vectors(vectors, config)
    entry.update(
        status="ok",
        c=result.c,
        average_silhouette=result.average_silhouette,
        silhouette_by_c={str(c): s for c, s in result.silhouette_by_c.items()},
        sigma=result.sigma,
        clusters={v.label: int(a) for v, a in zip(vectors, result.assignments)},
        silhouettes={v.label: float(s) for v, s in zip(vectors, result.silhouettes)},
        setar={v.label: v.setar.summary() for v in vectors},
    )
    if config.hansen:
        ok = [s for s in sliced if s.label not in failures]
        entry["hansen_pvalues"] = hansen_pvalues(ok, config, HANSEN_PAIRS)
    return entry


def cmd_cluster(args) -> int:
    overrides = _overrides(args)
    win = _window_override(args)
    if win is not None:
        overrides["window"] = win
    if args.no_hansen:
        overrides["hansen"] = False
    config = load_config(args.config, overrides)
    if args.window == "all":
        config = config.replace(window=None)
    ds = _load_dataset(args)
    windows = make_windows(ds.timestamps, config.window)
    entries = [_cluster_window(ds.series, w, config, ds.labels) for w in windows]
    out = _out_dir(args)
    doc = {
        "report_version": report.REPORT_VERSION,
        "config": config.to_dict(),
        "seed": config.seed,
        "source": ds.source,
        "series": ds.labels,
        "windows": entries,
    }
    report.write_json(out / "report.json", doc)
    report.plot_silhouette_curves([e for e in entries if e["status"] == "ok"], out / "silhouette.svg")
    report.plot_cluster_timeline(entries, ds.labels, out / "clusters.svg")
    for e in entries:
        if e["status"] == "ok":
            print(f"{e['name']}: c={e['c']} average silhouette={e['average_silhouette']:.3f}")
        else:
            print(f"{e['name']}: {e['status']}")
    if any(e["status"] == "failed" for e in entries):
        log.error("fewer than two series survived in at least one window")
        return EXIT_TOO_FEW
    return EXIT_OK


# --- features ------------------------------------------------------------------


def cmd_features(args) -> int:
    config = load_config(args.config, _overrides(args))
    ds = _load_dataset(args)
    vectors, failures = prepare(list(ds.series), config)
    if not vectors:
        raise TooFewSeriesError("no series survived feature extraction")
    fm = assemble_matrix(vectors, standardize=config.standardize_rows)
    fm.to_csv(args.out)
    for lab, why in failures.items():
        print(f"{lab}: dropped ({why})")
    print(f"wrote {fm.data.shape[0]} features x {fm.n} series to {args.out}")
    return EXIT_OK


# --- test-nonlinearity ----------------------------------------------------------


def cmd_test_nonlinearity(args) -> int:
    config = load_config(args.config, _overrides(args))
    ds = _load_dataset(args)
    table = hansen_pvalues(list(ds.series), config, HANSEN_PAIRS)
    heads = [f"TAR({a}) vs TAR({b})" for a, b in HANSEN_PAIRS]
    width = max(len(l) for l in ds.labels)
    print(" " * width + "  " + "  ".join(f"{h:>16}" for h in heads))
    for lab in ds.labels:
        cells = []
        for h in heads:
            v = table[lab][h]
            cells.append(f"{v:>16.3f}" if isinstance(v, float) else f"{'error':>16}")
        print(f"{lab:<{width}}  " + "  ".join(cells))
    if args.out:
        report.write_json(args.out, {"config": config.to_dict(), "seed": config.seed, "pvalues": table})
    return EXIT_OK


# --- simulate ------------------------------------------------------------------

_SCENARIO_KEYS = ("n_per_dgm", "T", "replicates", "dgms", "burn_in", "seed", "fixed_c", "n_jobs")


def _scenario(args):
    raw = read_yaml(args.config) if args.config else {}
    scen = dict(raw.get("scenario", {}))
    unknown = set(scen) - set(_SCENARIO_KEYS)
    if unknown:
        raise ConfigError(f"unknown scenario keys: {', '.join(sorted(unknown))}")
    pipe = dict(raw.get("pipeline", {}))
    pipe.setdefault("stationarize_mode", "none")
    for k, v in _overrides(args).items():
        if v is not None:
            pipe[k] = v
    for key in ("n_per_dgm", "T", "replicates", "burn_in", "fixed_c", "n_jobs"):
        v = getattr(args, key, None)
        if v is not None:
            scen[key] = v
    if args.dgms:
        scen["dgms"] = [d.strip() for d in args.dgms.split(",")]
    if args.seed is not None:
        scen["seed"] = args.seed
    from .simlab import REFERENCE_DGMS

    scen.setdefault("n_per_dgm", 5)
    scen.setdefault("T", 400)
    scen.setdefault("replicates", 10)
    scen.setdefault("dgms", list(REFERENCE_DGMS))
    scen.setdefault("burn_in", 200)
    scen.setdefault("seed", 0)
    for key in ("n_per_dgm", "T", "replicates", "burn_in", "seed"):
        if not isinstance(scen[key], int) or scen[key] < 0 or (key != "seed" and key != "burn_in" and scen[key] < 1):
            raise ConfigError(f"scenario {key} must be a positive integer, got {scen[key]!r}")
    try:
        config = config_from_mapping(pipe)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return config, scen


def cmd_simulate(args) -> int:
    from .simlab import get_dgm, run_scenario

    config, scen = _scenario(args)
    for name in scen["dgms"]:
        try:
            get_dgm(name)
        except InvalidArgumentError as exc:
            raise ConfigError(str(exc)) from None
    results = run_scenario(
        scen["n_per_dgm"],
        scen["T"],
        scen["replicates"],
        config=config,
        seed=scen["seed"],
        dgms=scen["dgms"],
        burn_in=scen["burn_in"],
        fixed_c=scen.get("fixed_c"),
        n_jobs=scen.get("n_jobs"),
    )
    out = _out_dir(args)
    echo = {k: v for k, v in scen.items() if k != "n_jobs"}
    summary = report.scenario_summary(results, {**echo, "pipeline": config.to_dict()})
    report.write_json(out / "summary.json", summary)
    report.write_replicates_csv(results, out / "replicates.csv")
    reps = summary["replicates"]
    report.plot_silhouette_boxes(reps, out / "silhouette_by_c.svg")
    report.plot_exact_grouping(reps, out / "exact_grouping.svg")
    for r in results:
        pct = "failed" if r.exact_grouping_pct is None else f"{r.exact_grouping_pct:.1f}%"
        print(f"replicate {r.replicate_id + 1}: c={r.chosen_c} exact grouping {pct}")
    overall = summary["overall_exact_grouping_pct"]
    print("overall exact grouping: " + ("n/a" if overall is None else f"{overall:.1f}%"))
    return EXIT_OK


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tarclust", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a panel, whole sample or per window")
    _add_data_args(p)
    _add_pipeline_args(p)
    p.add_argument("--out", default="tarclust-out", help="output directory")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--window", choices=["crisis", "all"], help="crisis: 1990-2007, 2010-2014 and 1990-2014")
    g.add_argument("--rolling", help="rolling windows LENGTH:STEP in observations")
    p.add_argument("--no-hansen", action="store_true", help="skip threshold tests")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("features", help="write the feature matrix as CSV")
    _add_data_args(p)
    _add_pipeline_args(p)
    p.add_argument("--out", default="features.csv")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("test-nonlinearity", help="bootstrap threshold-test p-values per series")
    _add_data_args(p)
    _add_pipeline_args(p)
    p.add_argument("--out", help="optional JSON output path")
    p.set_defaults(func=cmd_test_nonlinearity)

    p = sub.add_parser("simulate", help="run the simulated recovery experiment")
    _add_pipeline_args(p)
    p.add_argument("--n-per-dgm", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--replicates", type=int)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--dgms", help="comma-separated DGM names")
    p.add_argument("--fixed-c", type=int)
    p.add_argument("--n-jobs", type=int, help="worker processes for replicates")
    p.add_argument("--out", default="tarclust-sim")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IngestionError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except TooFewSeriesError as exc:
        print(f"estimation failure: {exc}", file=sys.stderr)
        return EXIT_TOO_FEW
    except TarclustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_FEW


if __name__ == "__main__":
    sys.exit(main())
