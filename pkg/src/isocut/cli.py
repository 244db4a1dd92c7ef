"""Command-line surface: mincut, isolate, gen, sfm.

Machine output (JSON or generated files) goes to stdout, diagnostics to
stderr, and every command is deterministic under --seed (fallback: the
ISOCUT_SEED environment variable, then 0).
"""

from __future__ import annotations

import json
import os
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import _kernels
from .core import GroundSet, SubmodularOracle
from .driver import DriverConfig, find_nontrivial_minimizer
from .generate import gen_planted, gen_uniform
from .hypergraph import (
    CutOracle,
    Hypergraph,
    HypergraphFlowBlackbox,
    HypergraphParseError,
    hypergraph_mincut,
    parse_hypergraph,
    parse_hypergraph_json,
    serialize_hypergraph,
)
from .isolating import TerminalSet, isolating_sets
from .sfm import BruteForceBlackbox, bruteforce_nontrivial_min

VERIFY_CAP = 14


def _resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("ISOCUT_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"ISOCUT_SEED is not an integer: {env!r}")
    return 0


def _load_hypergraph(path: str) -> Hypergraph:
    text = Path(path).read_text()
    try:
        if path.endswith(".json") or text.lstrip().startswith("{"):
            return parse_hypergraph_json(text)
        return parse_hypergraph(text)
    except HypergraphParseError as e:
        click.echo(f"{path}: {e}", err=True)
        sys.exit(1)


def _emit(report: dict, as_json: bool, text_lines) -> None:
    if as_json:
        click.echo(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            click.echo(line)


def _one_indexed(subset) -> list[int]:
    return [v + 1 for v in subset]


@click.group()
def main():
    """Nontrivial minimizers of symmetric submodular functions; hypergraph min-cut."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", type=int, default=None, help="RNG seed (fallback: ISOCUT_SEED, then 0).")
@click.option("--reps", type=int, default=None, help="Sampling repetitions per k (default: ceil(12 log2 n)).")
@click.option("--verify", is_flag=True, help="Cross-check against brute force (n <= 14).")
@click.option("--json/--text", "as_json", default=True, help="Output format (default JSON).")
@click.option("--threads", type=int, default=1, show_default=True, help="Workers for per-cell solves.")
def mincut(file, seed, reps, verify, as_json, threads):
    """Global min cut of a hypergraph file (hMETIS-style text or JSON mirror)."""
    if threads < 1:
        raise click.UsageError("--threads must be >= 1")
    if reps is not None and reps < 1:
        raise click.UsageError("--reps must be >= 1")
    seed = _resolve_seed(seed)
    h = _load_hypergraph(file)
    cfg = DriverConfig(rng_seed=seed, repetitions_per_k=reps)
    start = time.perf_counter()
    res = hypergraph_mincut(h, cfg, threads=threads)
    elapsed = time.perf_counter() - start

    verdict = None
    if verify:
        if h.n <= VERIFY_CAP:
            _, brute_value = bruteforce_nontrivial_min(CutOracle(h))
            verdict = "match" if brute_value == res.value else "mismatch"
        else:
            verdict = "skipped"
            click.echo(f"verification skipped: n={h.n} exceeds the n<={VERIFY_CAP} brute-force guard", err=True)

    schedule = [] if res.driver is None else [r.k for r in res.driver.per_k_breakdown]
    report = {
        "min_cut_value": res.value,
        "side": _one_indexed(res.side),
        "n": res.n,
        "m": res.m,
        "p": res.p,
        "flow_calls": res.flow_calls,
        "blackbox_calls": res.blackbox_calls,
        "seed": seed,
        "trials": res.trials,
        "reps": None if res.driver is None else cfg.resolved_repetitions(h.n),
        "k_schedule": schedule,
        "oracle_queries": res.oracle_queries,
        "step2_rep_total": res.step2_rep_total,
        "verification": verdict,
    }
    _emit(report, as_json, [
        f"min cut value: {res.value}",
        f"side (1-indexed): {_one_indexed(res.side)}",
        f"n={res.n} m={res.m} p={res.p}",
        f"flow calls: {res.flow_calls}  blackbox calls: {res.blackbox_calls}  trials: {res.trials}",
        f"seed: {seed}",
    ] + ([f"verification: {verdict}"] if verdict else []))
    click.echo(f"wall time: {elapsed:.3f}s  backend: {_kernels.BACKEND}", err=True)
    if verdict == "mismatch":
        sys.exit(2)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--terminals", required=True, help="Comma-separated 1-indexed vertices, at least two.")
@click.option("--seed", type=int, default=None, help="Echoed into the report; the computation is deterministic.")
@click.option("--json/--text", "as_json", default=False, help="Output format (default text table).")
@click.option("--threads", type=int, default=1, show_default=True)
def isolate(file, terminals, seed, as_json, threads):
    """Minimum isolating sets of a hypergraph's cut function for given terminals."""
    if threads < 1:
        raise click.UsageError("--threads must be >= 1")
    seed = _resolve_seed(seed)
    h = _load_hypergraph(file)
    try:
        ids = [int(tok) for tok in terminals.split(",") if tok.strip()]
    except ValueError:
        raise click.UsageError(f"--terminals must be comma-separated integers, got {terminals!r}")
    if len(ids) != len(set(ids)):
        raise click.UsageError("--terminals contains a repeated vertex")
    if len(ids) < 2:
        raise click.UsageError("need at least 2 terminals")
    for v in ids:
        if not 1 <= v <= h.n:
            raise click.UsageError(f"terminal {v} outside 1..{h.n}")

    oracle = CutOracle(h)
    ts = TerminalSet(oracle.ground.subset([v - 1 for v in ids]))
    iso = isolating_sets(oracle, ts, HypergraphFlowBlackbox(h), threads=threads)
    cell_total = sum(len(c) for c in iso.cells.values())
    assert cell_total <= h.n

    rows = [
        {
            "terminal": v + 1,
            "cell_size": len(iso.cells[v]),
            "value": iso.values[v],
            "isolating_set": _one_indexed(iso.isolating_sets[v]),
        }
        for v in ts.members
    ]
    report = {
        "terminals": [v + 1 for v in ts.members],
        "rows": rows,
        "step1_calls": iso.stats.step1_calls,
        "step2_calls": iso.stats.step2_calls,
        "cell_size_total": cell_total,
        "n": h.n,
        "seed": seed,
    }
    _emit(report, as_json, [
        f"{'v':>4} {'|U_v|':>6} {'f(S_v)':>8}  S_v",
    ] + [
        f"{r['terminal']:>4} {r['cell_size']:>6} {r['value']:>8}  {r['isolating_set']}"
        for r in rows
    ] + [
        f"round-1 calls: {iso.stats.step1_calls}  round-2 calls: {iso.stats.step2_calls}",
        f"sum of cell sizes: {cell_total} (<= n={h.n})",
    ])


@main.command()
@click.option("--model", type=click.Choice(["uniform", "planted"]), default="uniform", show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--max-rank", type=int, default=3, show_default=True)
@click.option("--max-weight", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=None)
def gen(model, n, m, max_rank, max_weight, seed):
    """Emit a random hypergraph file on stdout; deterministic under --seed."""
    seed = _resolve_seed(seed)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    try:
        if model == "planted":
            h, _, planted_value = gen_planted(n, m, max_rank, max_weight, rng)
            click.echo(f"% planted cut value = {planted_value}")
        else:
            h = gen_uniform(n, m, max_rank, max_weight, rng)
    except ValueError as e:
        raise click.UsageError(str(e))
    click.echo(serialize_hypergraph(h), nl=False)


@main.command()
@click.option("--demo", required=True, help="Oracle family: cut:<file> or concave:<n>.")
@click.option("--seed", type=int, default=None)
@click.option("--reps", type=int, default=None)
@click.option("--json/--text", "as_json", default=True)
def sfm(demo, seed, reps, as_json):
    """Nontrivial minimizer demo with the brute-force blackbox; reports query counts."""
    if reps is not None and reps < 1:
        raise click.UsageError("--reps must be >= 1")
    seed = _resolve_seed(seed)
    family, _, arg = demo.partition(":")
    if family == "cut":
        if not arg:
            raise click.UsageError("cut demo needs a file: --demo cut:<file>")
        h = _load_hypergraph(arg)
        oracle = CutOracle(h)
        label = f"cut:{arg}"
    elif family == "concave":
        try:
            n = int(arg)
        except ValueError:
            raise click.UsageError(f"concave demo needs an integer size, got {arg!r}")
        if n < 2:
            raise click.UsageError("concave demo needs n >= 2")
        ground = GroundSet(n)
        oracle = SubmodularOracle(
            ground, lambda s: min(len(s), n - len(s)),
            symmetric=True, max_abs_value_hint=n // 2,
        )
        label = f"concave:{n}"
    else:
        raise click.UsageError(f"unknown demo family {family!r} (use cut:<file> or concave:<n>)")

    cfg = DriverConfig(rng_seed=seed, repetitions_per_k=reps)
    start = time.perf_counter()
    res = find_nontrivial_minimizer(oracle, cfg, BruteForceBlackbox())
    elapsed = time.perf_counter() - start
    report = {
        "demo": label,
        "value": res.best_value,
        "side": _one_indexed(res.best_set),
        "n": oracle.ground.n,
        "oracle_queries": oracle.query_count,
        "blackbox_calls": res.blackbox_calls_total,
        "trials": res.trials_run,
        "seed": seed,
        "reps": cfg.resolved_repetitions(oracle.ground.n),
        "k_schedule": [r.k for r in res.per_k_breakdown],
        "per_k": [[r.k, r.blackbox_calls, r.best_value] for r in res.per_k_breakdown],
    }
    _emit(report, as_json, [
        f"demo: {label}",
        f"value: {res.best_value}  side (1-indexed): {_one_indexed(res.best_set)}",
        f"oracle queries: {oracle.query_count}  blackbox calls: {res.blackbox_calls_total}  trials: {res.trials_run}",
        f"seed: {seed}",
    ])
    click.echo(f"wall time: {elapsed:.3f}s", err=True)


if __name__ == "__main__":
    main()
