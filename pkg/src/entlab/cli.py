"""Experiment runner: turns JSON configs into bound verdicts, entropy tables,
scaling fits and figures.

Exit codes: 0 when the run completed (scientific findings such as a failed
local-indistinguishability check stay exit 0), 1 when an exact theorem was
violated (nonnegative conditional mutual information, the nested Markov
bound, the partition bound, the telescoping identity, oracle agreement),
because those can only mean an engine bug, and 2 for configuration or usage
errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

from . import __version__, dense, entropy, geometry, models, pauli, reporting

EXPERIMENTS = (
    "entropy",
    "cmi",
    "med-bound",
    "tee",
    "tqo",
    "partition-bound",
    "tradeoff",
    "fit",
    "crosscheck",
    "params",
)


class ConfigError(Exception):
    """Malformed configuration; mapped to exit code 2."""


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"config field {key!r} is required for this experiment")
    return cfg[key]


def _model(cfg: dict, overrides: Optional[dict] = None) -> models.Model:
    spec = _require(cfg, "model")
    try:
        name, params = models.parse_model_spec(spec)
        if overrides:
            params.update(overrides)
        return models.build_model(name, params)
    except (ValueError, OSError) as exc:
        raise ConfigError(f"model {spec!r}: {exc}") from exc


def _lattice_model(cfg: dict, overrides: Optional[dict] = None) -> models.Model:
    model = _model(cfg, overrides)
    if model.lattice is None:
        raise ConfigError(f"experiment needs a lattice model, got {model.describe()}")
    return model


def _parse_regions(model: models.Model, specs) -> list[geometry.Region]:
    if model.lattice is None:
        raise ConfigError("region specs need a lattice model")
    out = []
    for i, spec in enumerate(specs):
        try:
            out.append(geometry.parse_region(model.lattice, spec))
        except ValueError as exc:
            raise ConfigError(f"region {i} ({spec!r}): {exc}") from exc
    return out


def _boundary_or_blank(region: geometry.Region):
    try:
        return geometry.boundary_components(region)
    except ValueError:
        return ""


def _base_record(model: models.Model) -> dict:
    return {"model": model.describe(), "n": model.group.n, "k": model.group.k}


# --- single-point experiments ---------------------------------------------


def run_entropy(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    regions = _parse_regions(model, _require(cfg, "regions"))
    record = _base_record(model)
    rows = []
    for spec, region in zip(cfg["regions"], regions):
        bits = entropy.entropy_bits(model.group, region)
        rows.append(
            {
                "region": spec,
                "size": region.size,
                "boundary": _boundary_or_blank(region),
                "entropy_bits": bits,
            }
        )
    record["entropies"] = rows
    return {"record": record, "samples": rows, "violations": 0}


def run_cmi(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    specs = _require(cfg, "regions")
    if not isinstance(specs, dict) or set(specs) != {"A", "B", "C"}:
        raise ConfigError("cmi needs regions as an object with keys A, B, C")
    a, b, c = _parse_regions(model, [specs["A"], specs["B"], specs["C"]])
    try:
        tri = geometry.Tripartition(a, b, c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    value = entropy.cmi(model.group, tri)
    record = _base_record(model)
    record["cmi_bits"] = value
    return {"record": record, "samples": [], "violations": 1 if value < 0 else 0}


def run_med_bound(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    stages = int(cfg.get("stages", 3))
    shield = int(cfg.get("shield", 2))
    try:
        seq = geometry.build_med_sequence(model.lattice, stages=stages, shield=shield)
    except ValueError as exc:
        raise ConfigError(f"sequence construction: {exc}") from exc
    verdict = entropy.med_bound(model.group, seq)
    residual = entropy.telescoping_residual(model.group, seq)
    record = _base_record(model)
    record["stages"] = stages
    record["verdict"] = verdict.as_dict()
    record["telescoping_residual"] = residual
    violations = (0 if verdict.holds else 1) + (0 if residual == 0 else 1)
    return {"record": record, "samples": [], "violations": violations}


def run_tee(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    side = int(cfg.get("side", 4))
    x0 = int(cfg.get("x0", 0))
    y0 = int(cfg.get("y0", 0))
    try:
        tri = geometry.kitaev_preskill_sectors(model.lattice, x0, y0, side)
    except ValueError as exc:
        raise ConfigError(f"sector construction: {exc}") from exc
    gamma = entropy.tee_kitaev_preskill(model.group, tri)
    verdict = entropy.degeneracy_bound(model.group, gamma)
    record = _base_record(model)
    record["side"] = side
    record["gamma_bits"] = gamma
    record["verdict"] = verdict.as_dict()
    return {"record": record, "samples": [], "violations": 0}


def run_tqo(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    r = int(_require(cfg, "r"))
    verdict = pauli.tqo_check(model.group, model.lattice, r)
    record = _base_record(model)
    record["r"] = r
    record["verdict"] = verdict.as_dict()
    return {"record": record, "samples": [], "violations": 0}


def _config_distance(cfg: dict, model: models.Model) -> int:
    if "d" in cfg:
        return int(cfg["d"])
    if model.distance_hint is not None:
        return model.distance_hint
    raise ConfigError(
        "no code distance available: pass 'd' or use a model with a known distance"
    )


def run_partition_bound(cfg: dict, overrides=None) -> dict:
    model = _model(cfg, overrides)
    d = _config_distance(cfg, model)
    if "parts" in cfg:
        parts = [
            r.indices for r in _parse_regions(model, cfg["parts"])
        ]
    else:
        rng = random.Random(int(cfg.get("seed", 0)))
        parts = random_partition(model.group.n, d - 1, rng)
    try:
        verdict = entropy.partition_bound(model.group, parts, d)
    except ValueError as exc:
        raise ConfigError(f"partition rejected: {exc}") from exc
    record = _base_record(model)
    record["d"] = d
    record["parts"] = len(parts)
    record["verdict"] = verdict.as_dict()
    return {"record": record, "samples": [], "violations": 0 if verdict.holds else 1}


def run_tradeoff(cfg: dict, overrides=None) -> dict:
    model = _model(cfg, overrides)
    d = _config_distance(cfg, model)
    alpha = float(cfg.get("alpha", 0.5))
    if "D" in cfg:
        dim = int(cfg["D"])
    elif model.lattice is not None:
        dim = model.lattice.D
    else:
        raise ConfigError("pass 'D' for models without a lattice")
    params = pauli.code_parameters(model.group, d=d)
    record = _base_record(model)
    record["tradeoff"] = entropy.tradeoff_report(params, dim, alpha)
    return {"record": record, "samples": [], "violations": 0}


def run_fit(cfg: dict, overrides=None) -> dict:
    model = _lattice_model(cfg, overrides)
    family = cfg.get("family", {"kind": "square"})
    kind = family.get("kind", "square")
    if kind != "square":
        raise ConfigError(f"unknown sample family {kind!r}")
    sizes = family.get("sizes", [2, 3, 4, 5, 6])
    x0 = int(family.get("x0", 0))
    y0 = int(family.get("y0", 0))
    form = cfg.get("form", "linear")
    rows = []
    samples = []
    for l in sizes:
        try:
            region = geometry.rect_region(model.lattice, x0, y0, x0 + l, y0 + l)
        except ValueError as exc:
            raise ConfigError(f"square l={l}: {exc}") from exc
        bits = entropy.entropy_bits(model.group, region)
        rows.append(
            {
                "region": f"rect {x0} {y0} {x0 + l} {y0 + l}",
                "size": l,
                "boundary": _boundary_or_blank(region),
                "entropy_bits": bits,
            }
        )
        samples.append((l, bits))
    try:
        fit = entropy.fit_scaling(samples, form=form, degree=cfg.get("degree"))
    except ValueError as exc:
        raise ConfigError(f"fit: {exc}") from exc
    record = _base_record(model)
    record["fit"] = fit.as_dict()
    return {"record": record, "samples": rows, "fit": fit.as_dict(), "violations": 0}


def run_crosscheck(cfg: dict, overrides=None) -> dict:
    model = _model(cfg, overrides)
    if model.group.n > dense.QMAX:
        raise ConfigError(
            f"crosscheck needs at most {dense.QMAX} qubits, model has {model.group.n}"
        )
    cases = int(cfg.get("cases", 50))
    rng = random.Random(int(cfg.get("seed", 0)))
    state = dense.stabilizer_to_dense(model.group)
    worst = 0.0
    for _ in range(cases):
        region = [q for q in range(model.group.n) if rng.random() < 0.5]
        stab = entropy.entropy_bits(model.group, region)
        dn = dense.von_neumann_entropy(dense.partial_trace(state, region))
        worst = max(worst, abs(dn - stab))
    record = _base_record(model)
    record["cases"] = cases
    record["max_abs_gap_bits"] = worst
    record["tolerance"] = 1e-9
    return {"record": record, "samples": [], "violations": 0 if worst <= 1e-9 else 1}


def run_params(cfg: dict, overrides=None) -> dict:
    model = _model(cfg, overrides)
    record = _base_record(model)
    record["s"] = model.group.s
    if model.distance_hint is not None:
        record["d"] = model.distance_hint
    return {"record": record, "samples": [], "violations": 0}


RUNNERS = {
    "entropy": run_entropy,
    "cmi": run_cmi,
    "med-bound": run_med_bound,
    "tee": run_tee,
    "tqo": run_tqo,
    "partition-bound": run_partition_bound,
    "tradeoff": run_tradeoff,
    "fit": run_fit,
    "crosscheck": run_crosscheck,
    "params": run_params,
}


def random_partition(n: int, max_part: int, rng: random.Random) -> list[set[int]]:
    """Partition the qubits into random parts of size at most max_part."""
    if max_part < 1:
        raise ConfigError("distance 1 admits no valid partition parts")
    order = list(range(n))
    rng.shuffle(order)
    parts = []
    i = 0
    while i < n:
        w = rng.randint(1, max_part)
        parts.append(set(order[i : i + w]))
        i += w
    return parts


# --- self-check property suite ---------------------------------------------


def selfcheck(seed: int) -> dict:
    """SSA, telescoping and Markov-bound property sweep over random codes."""
    rng = random.Random(seed)
    blocks = []
    violations = 0

    ssa_bad = 0
    for _ in range(1000):
        n = rng.randint(4, 14)
        s = rng.randint(0, n)
        group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
        qubits = list(range(n))
        rng.shuffle(qubits)
        ca, cb, cc = sorted(rng.sample(range(1, n + 1), k=3))
        a = set(qubits[:ca])
        b = set(qubits[ca:cb])
        c = set(qubits[cb:cc])
        tri = geometry.Tripartition(
            geometry.Region.of(n, a), geometry.Region.of(n, b), geometry.Region.of(n, c)
        )
        if entropy.cmi(group, tri) < 0:
            ssa_bad += 1
    blocks.append({"name": "ssa-nonnegative", "cases": 1000, "violations": ssa_bad})
    violations += ssa_bad

    tel_bad = 0
    for _ in range(100):
        n = rng.randint(4, 16)
        s = rng.randint(0, n)
        group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
        seq = geometry.random_partition_sequence(n, rng.randint(1, 4), rng)
        if entropy.telescoping_residual(group, seq) != 0:
            tel_bad += 1
    blocks.append({"name": "telescoping-zero", "cases": 100, "violations": tel_bad})
    violations += tel_bad

    med_bad = 0
    for _ in range(100):
        n = rng.randint(4, 16)
        s = rng.randint(0, n)
        group = models.random_stabilizer_code(n, s, rng.getrandbits(32))
        seq = geometry.random_partition_sequence(n, rng.randint(1, 4), rng)
        if not entropy.med_bound(group, seq).holds:
            med_bad += 1
    blocks.append({"name": "med-bound-holds", "cases": 100, "violations": med_bad})
    violations += med_bad

    return {"blocks": blocks, "violations": violations}


# --- sweep orchestration ----------------------------------------------------


def run_config(cfg: dict, threads: int) -> dict:
    experiment = _require(cfg, "experiment")
    if experiment not in RUNNERS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; expected one of {', '.join(EXPERIMENTS)}"
        )
    runner = RUNNERS[experiment]
    sweep = cfg.get("sweep")
    if sweep is None:
        out = runner(cfg)
        return {
            "records": [out["record"]],
            "samples": out.get("samples", []),
            "fit": out.get("fit"),
            "violations": out["violations"],
        }
    param = sweep.get("param")
    values = sweep.get("values")
    if not param or not isinstance(values, list) or not values:
        raise ConfigError("sweep needs 'param' and a nonempty 'values' list")

    def point(value):
        return runner(cfg, overrides={param: value})

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outs = list(pool.map(point, values))
    else:
        outs = [point(v) for v in values]
    records = []
    samples = []
    violations = 0
    for value, out in zip(values, outs):
        rec = {"sweep": {param: value}}
        rec.update(out["record"])
        records.append(rec)
        for row in out.get("samples", []):
            samples.append(row)
        violations += out["violations"]
    result = {
        "records": records,
        "samples": samples,
        "fit": None,
        "violations": violations,
    }
    fit_cfg = cfg.get("fit")
    if fit_cfg:
        key = fit_cfg.get("against", "k")
        pts = [(v, rec.get(key)) for v, rec in zip(values, records)]
        if any(y is None for _, y in pts):
            raise ConfigError(f"sweep fit: record field {key!r} missing")
        fit = entropy.fit_scaling(
            pts, form=fit_cfg.get("form", "linear"), degree=fit_cfg.get("degree")
        )
        result["fit"] = fit.as_dict()
    return result


def _figure_for(
    experiment: str, cfg: dict, result: dict, out_dir: Path
) -> Optional[str]:
    sweep = cfg.get("sweep")
    if experiment == "fit" and result.get("fit"):
        path = out_dir / "fit.png"
        samples = [(row["size"], row["entropy_bits"]) for row in result["samples"]]
        reporting.render_fit_figure(path, samples, result["fit"])
        return path.name
    if sweep and result["records"]:
        param = sweep["param"]
        xs = [rec["sweep"][param] for rec in result["records"]]
        series = {}
        if all("verdict" in rec for rec in result["records"]):
            series["lhs"] = [rec["verdict"]["lhs"] for rec in result["records"]]
            series["rhs"] = [rec["verdict"]["rhs"] for rec in result["records"]]
        elif all("k" in rec for rec in result["records"]):
            series["k"] = [rec["k"] for rec in result["records"]]
        if series:
            path = out_dir / f"{experiment}-sweep.png"
            reporting.render_sweep_figure(
                path, xs, series, xlabel=param, ylabel="bits",
                title=f"{experiment} vs {param}",
            )
            return path.name
    if result["samples"] and experiment == "entropy":
        path = out_dir / "entropy.png"
        samples = [(row["size"], row["entropy_bits"]) for row in result["samples"]]
        reporting.render_fit_figure(
            path, samples, None, xlabel="region size", title="region entropies"
        )
        return path.name
    return None


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="entlab",
        description="exact entropy-bound experiments on stabilizer codes",
    )
    parser.add_argument("--config", type=Path, help="experiment config (JSON)")
    parser.add_argument("--out", type=Path, help="output directory (default: reports)")
    parser.add_argument("--threads", type=int, default=1, help="sweep-point parallelism")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument(
        "--selfcheck",
        action="store_true",
        help="run the SSA/telescoping property suite and exit",
    )
    parser.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    parser.add_argument("--version", action="version", version=f"entlab {__version__}")
    args = parser.parse_args(argv)

    if not args.selfcheck and args.config is None:
        parser.print_usage(sys.stderr)
        print("entlab: error: --config or --selfcheck is required", file=sys.stderr)
        return 2

    try:
        if args.selfcheck:
            seed = args.seed if args.seed is not None else 0
            out_dir = args.out or Path("reports")
            out_dir.mkdir(parents=True, exist_ok=True)
            result = selfcheck(seed)
            payload = {
                "tool": {"name": "entlab", "version": __version__},
                "experiment": "selfcheck",
                "config": {"seed": seed},
                "records": result["blocks"],
                "violations": result["violations"],
            }
            reporting.write_report(out_dir / "selfcheck.json", payload)
            for block in result["blocks"]:
                status = "ok" if block["violations"] == 0 else "VIOLATED"
                print(f"{block['name']}: {block['cases']} cases, {status}")
            return 0 if result["violations"] == 0 else 1

        try:
            cfg = json.loads(args.config.read_text(encoding="utf-8"))
        except OSError as exc:
            print(f"entlab: cannot read config: {exc}", file=sys.stderr)
            return 2
        except json.JSONDecodeError as exc:
            print(f"entlab: config is not valid JSON: {exc}", file=sys.stderr)
            return 2
        if not isinstance(cfg, dict):
            print("entlab: config must be a JSON object", file=sys.stderr)
            return 2
        if args.seed is not None:
            cfg["seed"] = args.seed
        out_dir = args.out or Path(cfg.get("out", "reports"))
        out_dir.mkdir(parents=True, exist_ok=True)

        result = run_config(cfg, max(1, args.threads))
        experiment = cfg["experiment"]
        files = {}
        if result["samples"]:
            csv_path = out_dir / "samples.csv"
            reporting.write_samples_csv(csv_path, result["samples"])
            files["samples"] = csv_path.name
        if not args.no_figures:
            fig = _figure_for(experiment, cfg, result, out_dir)
            if fig:
                files["figure"] = fig
        payload = {
            "tool": {"name": "entlab", "version": __version__},
            "experiment": experiment,
            "config": cfg,
            "records": result["records"],
            "violations": result["violations"],
        }
        if result.get("fit"):
            payload["fit"] = result["fit"]
        if files:
            payload["files"] = files
        reporting.write_report(out_dir / "report.json", payload)
        for rec in result["records"]:
            verdict = rec.get("verdict")
            if verdict:
                print(
                    f"{experiment}: lhs={verdict['lhs']} rhs={verdict['rhs']} "
                    f"holds={verdict['holds']}"
                )
        if result["violations"]:
            print(
                f"entlab: {result['violations']} exact-theorem violation(s); "
                "this indicates an engine bug",
                file=sys.stderr,
            )
            return 1
        return 0
    except ConfigError as exc:
        print(f"entlab: config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
