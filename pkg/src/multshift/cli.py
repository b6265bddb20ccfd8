"""Command-line entry point.

    multshift --mode dims     --matrix golden.txt
    multshift --mode verify   --matrix golden.txt [--measure mu.txt] [--n 16] [--depth 12]
    multshift --mode optimize --matrix golden.txt --seed 0
    multshift --mode sample   --matrix golden.txt --n 1024 --count 100 --seed 0
    multshift --mode series   --matrix golden.txt --depth 30

Exit status: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .dimension import dimension_report, hausdorff_dimension, minkowski_partial_sums
from .errors import MultShiftError, NotPrimitive, ParseError
from .io import format_measure, parse_matrix, parse_measure
from .markov import local_dimension_stats, optimize_markov, s_mu, t_vector_measure
from .oracle import run_all, verdicts_table, verdicts_to_csv

SCHEMA_ID = "multshift.report/1"
MODES = ("dims", "verify", "optimize", "sample", "series")
FORMATS = ("json", "csv", "table")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


@dataclass
class RunConfig:
    mode: str
    matrix_path: str
    measure_path: str | None = None
    tol: float = 1e-8
    seed: int = 0
    fmt: str = "json"
    depth: int | None = None
    n: int | None = None
    count: int = 100
    out: str | None = None

    def validate(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if not self.matrix_path:
            raise ValueError("--matrix is required")


def _envelope(cfg: RunConfig, result: dict) -> dict:
    return {
        "schema": SCHEMA_ID,
        "version": __version__,
        "mode": cfg.mode,
        "config": {
            "matrix": cfg.matrix_path,
            "measure": cfg.measure_path,
            "tol": cfg.tol,
            "seed": cfg.seed,
            "depth": cfg.depth,
            "n": cfg.n,
            "count": cfg.count,
        },
        "result": result,
    }


def _kv_table(d: dict) -> str:
    width = max(len(k) for k in d)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in d.items())


def _kv_csv(d: dict) -> str:
    return "key,value\n" + "".join(f"{k},{json.dumps(v)}\n" for k, v in d.items())


def _render(cfg: RunConfig, result: dict) -> str:
    if cfg.fmt == "json":
        return json.dumps(_envelope(cfg, result), indent=2) + "\n"
    flat = {k: (v if isinstance(v, (int, float, str, bool)) or v is None else json.dumps(v)) for k, v in result.items()}
    return _kv_csv(flat) if cfg.fmt == "csv" else _kv_table(flat)


def _measure(cfg, A):
    if cfg.measure_path:
        return parse_measure(Path(cfg.measure_path), support=A)
    return t_vector_measure(A)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one configuration; returns ``(exit_status, document)``."""
    cfg.validate()
    strict = cfg.mode in ("dims", "optimize")
    A = parse_matrix(Path(cfg.matrix_path), strict=strict)

    if cfg.mode == "dims":
        rep = dimension_report(A, tol=cfg.tol)
        return EXIT_OK, _render(cfg, rep.to_dict())

    if cfg.mode == "verify":
        mu = _measure(cfg, A)
        verdicts = run_all(A, mu, n_max=cfg.n or 16, k_max=cfg.depth or 12)
        status = EXIT_OK if all(v.passed for v in verdicts) else EXIT_VERIFY
        if cfg.fmt == "csv":
            return status, verdicts_to_csv(verdicts)
        if cfg.fmt == "table":
            return status, verdicts_table(verdicts)
        rows = [
            {
                "check": v.check_name,
                "instance": v.instance,
                "analytic": v.analytic_value if v.exact else float(v.analytic_value),
                "oracle": v.oracle_value if v.exact else float(v.oracle_value),
                "discrepancy": v.discrepancy,
                "tolerance": v.tolerance,
                "exact": v.exact,
                "pass": v.passed,
            }
            for v in verdicts
        ]
        return status, _render(cfg, {"all_passed": status == EXIT_OK, "verdicts": rows})

    if cfg.mode == "optimize":
        res = optimize_markov(A, tol=min(cfg.tol, 1e-10), seed=cfg.seed)
        h = hausdorff_dimension(A)
        result = {
            "label": res.label,
            "s_value": res.s_value,
            "s_bits": res.s_bits,
            "hausdorff": h.value,
            "hausdorff_bound": h.bound,
            "starts": res.starts,
            "initial": res.measure.initial.tolist(),
            "transitions": res.measure.transitions.tolist(),
            "measure_text": format_measure(res.measure),
        }
        return EXIT_OK, _render(cfg, result)

    if cfg.mode == "sample":
        mu = _measure(cfg, A)
        batch = local_dimension_stats(mu, cfg.n or 64, cfg.count, cfg.seed)
        if cfg.fmt == "csv":
            return EXIT_OK, batch.to_csv()
        result = {
            "n": batch.n,
            "count": len(batch.local_dims),
            "dyadic": batch.dyadic,
            "mean_local_dim": batch.mean,
            "std_local_dim": batch.std,
            "words": [str(w) for w in batch.word_list()],
            "local_dims": batch.local_dims.tolist(),
        }
        return EXIT_OK, _render(cfg, result)

    # series
    depth = cfg.depth or 30
    mu = _measure(cfg, A)
    series = s_mu(mu, tol=cfg.tol)
    result = {
        "minkowski_partial_sums": minkowski_partial_sums(A, depth).tolist(),
        "s_mu_terms_bits": series.terms[:depth].tolist(),
        "s_mu_bits": series.value,
        "s_mu_base_m": series.in_base_m(),
        "s_mu_tail_bound": series.tail_bound,
        "s_mu_depth": series.depth,
    }
    return EXIT_OK, _render(cfg, result)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multshift", description="Dimensions of multiplicative subshifts of finite type.")
    ap.add_argument("--mode", choices=MODES, required=True)
    ap.add_argument("--matrix", required=True, help="transfer matrix file")
    ap.add_argument("--measure", help="Markov measure file (default: the t-vector measure)")
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, help="series depth (series) or entropy depth k_max (verify)")
    ap.add_argument("--n", type=int, help="word length (sample) or enumeration depth n_max (verify)")
    ap.add_argument("--count", type=int, default=100, help="number of samples")
    ap.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        mode=args.mode,
        matrix_path=args.matrix,
        measure_path=args.measure,
        tol=args.tol,
        seed=args.seed,
        fmt=args.fmt,
        depth=args.depth,
        n=args.n,
        count=args.count,
        out=args.out,
    )
    try:
        status, doc = run(cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPrimitive as exc:
        # message carries the Wielandt-bound explanation
        print(f"error: matrix is not primitive: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MultShiftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.out:
        Path(cfg.out).write_text(doc)
    else:
        sys.stdout.write(doc)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
