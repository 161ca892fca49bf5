"""Run reports: machine-readable JSON, aligned tables, and figures.

Every CLI command produces a :class:`RunReport`; ``--json`` emits it as
a JSON document with the stable layout described by
``RUN_REPORT_SCHEMA``. The benchmark report path also renders walltime
and speedup figures next to its delimited output.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

from .engine import BenchRecord

# Layout contract for the --json output of every command.
RUN_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": ["twed", "batch", "lcs", "bench", "selftest"]},
        "inputs": {"type": "object"},
        "params": {
            "type": ["object", "null"],
            "properties": {
                "nu": {"type": "number"},
                "lambda": {"type": "number"},
                "degree": {"type": "integer"},
            },
            "required": ["nu", "lambda", "degree"],
        },
        "result": {"type": "object"},
        "elapsed_ms": {"type": "number"},
    },
    "required": ["command", "inputs", "params", "result", "elapsed_ms"],
}


@dataclass(frozen=True)
class RunReport:
    """Outcome of one CLI command."""

    command: str
    inputs: dict
    params: dict | None
    result: dict
    elapsed_ms: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=False)


def params_payload(params) -> dict:
    return {"nu": params.nu, "lambda": params.lam, "degree": params.degree}


def bench_payload(records: list[BenchRecord]) -> list[dict]:
    return [asdict(r) for r in records]


def format_bench_table(records: list[BenchRecord]) -> str:
    """Aligned text table: N, band and reference times, speedup.

    Reference cells are left blank for sizes above the cutoff.
    """
    header = f"{'N':>10}  {'band_s':>12}  {'reference_s':>12}  {'speedup':>8}"
    lines = [header]
    for r in records:
        ref = f"{r.reference_seconds:12.6f}" if r.reference_seconds is not None else " " * 12
        speedup = f"{r.speedup:8.2f}" if r.speedup is not None else " " * 8
        lines.append(f"{r.size:>10}  {r.band_seconds:12.6f}  {ref}  {speedup}")
    return "\n".join(lines)


def write_bench_csv(records: list[BenchRecord], path) -> None:
    import csv

    with Path(path).open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["size", "band_seconds", "reference_seconds", "speedup", "parity", "workers"])
        for r in records:
            writer.writerow([
                r.size,
                repr(r.band_seconds),
                "" if r.reference_seconds is None else repr(r.reference_seconds),
                "" if r.speedup is None else repr(r.speedup),
                "" if r.parity is None else r.parity,
                r.workers,
            ])


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_bench_figures(records: list[BenchRecord], stem) -> list[Path]:
    """Render walltime and speedup plots next to the delimited output.

    ``stem`` is the output path without extension; the figure files are
    ``<stem>_walltime.png`` and (when any reference ran)
    ``<stem>_speedup.png``.
    """
    plt = _pyplot()
    stem = Path(stem)
    sizes = [r.size for r in records]
    out: list[Path] = []

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(sizes, [r.band_seconds for r in records], "o-", label="band")
    with_ref = [(r.size, r.reference_seconds) for r in records if r.reference_seconds is not None]
    if with_ref:
        ax.plot(*zip(*with_ref), "s--", label="reference")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("series length N")
    ax.set_ylabel("wall time (s)")
    ax.set_title("Time to solution")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    walltime_path = stem.with_name(stem.name + "_walltime.png")
    fig.savefig(walltime_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    out.append(walltime_path)

    with_speedup = [(r.size, r.speedup) for r in records if r.speedup is not None]
    if with_speedup:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(*zip(*with_speedup), "o-")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("series length N")
        ax.set_ylabel("reference time / band time")
        ax.set_title("Relative speedup")
        ax.grid(True, which="both", alpha=0.3)
        speedup_path = stem.with_name(stem.name + "_speedup.png")
        fig.savefig(speedup_path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        out.append(speedup_path)
    return out


def render_matrix_heatmap(entries, row_names, col_names, path) -> Path:
    """Render a distance matrix as a heatmap image."""
    plt = _pyplot()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 5))
    image = ax.imshow(entries, cmap="viridis")
    fig.colorbar(image, ax=ax, label="TWED")
    if len(col_names) <= 20:
        ax.set_xticks(range(len(col_names)), col_names, rotation=90, fontsize=7)
    if len(row_names) <= 20:
        ax.set_yticks(range(len(row_names)), row_names, fontsize=7)
    ax.set_title("Pairwise distances")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
