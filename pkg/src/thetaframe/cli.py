"""Command-line front end.

Subcommands
-----------
theta-norm      induced norm of ``--seq`` at every configured level
report          full condition report (JSON, plus CSV summary with ``--out``)
oracle-validate closed form against the brute-force oracle on random inputs
examples        write the built-in configs ``g1.json``, ``g2.json``, ``identity.json``

Exit codes: 0 all verdicts hold, 1 a verdict failed, 2 usage or parse
error, 3 oracle size limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np

from .conditions import DEFAULT_EPS_GRID, assemble_verdicts
from .frames import BlockFrameSpec, example_g1, example_g2, frame_from_dict, identity_frame
from .hierarchy import WeightHierarchy, polynomial_hierarchy, trivial_hierarchy
from .oracle import OracleLimitError, oracle_theta_norm
from .reconstruction import DualFamily, dual_from_vectors, example_g2_dual
from .sequences import ScalarSequence
from .theta import theta_norm

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3
ORACLE_RTOL = 1e-6


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    frame: object
    hierarchy: Optional[WeightHierarchy] = None
    dual: Optional[DualFamily] = None
    samples: int = 200
    pairs: int = 200
    seed: int = 0
    eps_grid: List[float] = field(default_factory=lambda: list(DEFAULT_EPS_GRID))
    oracle: bool = False

    @property
    def levels(self) -> range:
        return range(self.hierarchy.levels if self.hierarchy is not None else 1)


def _fmt(x: float) -> str:
    text = format(x, ".17g")
    # keep floats recognisable as floats after a round trip
    return text if any(ch in text for ch in ".en") else text + ".0"


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits."""
    out = io.StringIO()

    def emit(x, depth):
        pad = "\n" + " " * (indent * (depth + 1))
        end = "\n" + " " * (indent * depth)
        if isinstance(x, bool) or x is None or isinstance(x, str):
            out.write(json.dumps(x))
        elif isinstance(x, (int, np.integer)):
            out.write(str(int(x)))
        elif isinstance(x, (float, np.floating)):
            x = float(x)
            out.write(_fmt(x) if math.isfinite(x) else json.dumps(x))
        elif isinstance(x, dict):
            if not x:
                out.write("{}")
                return
            out.write("{")
            for k, (key, val) in enumerate(x.items()):
                out.write(("," if k else "") + pad + json.dumps(str(key)) + ": ")
                emit(val, depth + 1)
            out.write(end + "}")
        elif isinstance(x, (list, tuple, np.ndarray)):
            x = list(x)
            if not x:
                out.write("[]")
                return
            out.write("[")
            for k, val in enumerate(x):
                out.write(("," if k else "") + pad)
                emit(val, depth + 1)
            out.write(end + "]")
        else:
            raise TypeError(f"cannot serialise {type(x).__name__}")

    emit(obj, 0)
    return out.getvalue()


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _field(data: dict, name: str, kind, default=None):
    if name not in data:
        return default
    val = data[name]
    try:
        if kind is bool:
            if not isinstance(val, bool):
                raise TypeError
            return val
        return kind(val)
    except (TypeError, ValueError):
        raise ConfigError(f"config.{name}: expected {kind.__name__}, got {val!r}") from None


def parse_config(data: dict, levels: Optional[int] = None) -> RunConfig:
    """Build a :class:`RunConfig` from a decoded JSON object."""
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object at top level")
    if "frame" not in data:
        raise ConfigError("config.frame: missing")
    try:
        frame = frame_from_dict(data["frame"])
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"config.frame: {exc}") from None

    hierarchy = None
    h = data.get("hierarchy")
    if h is not None:
        if not isinstance(h, dict):
            raise ConfigError("config.hierarchy: expected an object")
        try:
            if "weights" in h:
                hierarchy = WeightHierarchy.from_dict(h)
            elif h.get("family") == "polynomial":
                hierarchy = polynomial_hierarchy(frame.dim, int(h.get("levels", 0)))
            elif h.get("family") == "trivial":
                hierarchy = trivial_hierarchy(frame.dim, int(h.get("levels", 0)))
            else:
                raise ValueError("expected 'weights' or family 'polynomial'/'trivial'")
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"config.hierarchy: {exc}") from None
        if hierarchy.dim != frame.dim:
            raise ConfigError(
                f"config.hierarchy: weights cover {hierarchy.dim} basis vectors, frame has {frame.dim}")
    if levels is not None:
        if levels < 0:
            raise ConfigError("--levels must be >= 0")
        if hierarchy is None:
            hierarchy = polynomial_hierarchy(frame.dim, levels)
        elif "weights" in h:
            if levels + 1 > hierarchy.levels:
                raise ConfigError(
                    f"--levels {levels}: config.hierarchy.weights has only {hierarchy.levels} levels")
            hierarchy = WeightHierarchy(hierarchy.weights[: levels + 1])
        else:
            hierarchy = (polynomial_hierarchy if h.get("family") == "polynomial"
                         else trivial_hierarchy)(frame.dim, levels)

    dual = None
    if data.get("dual") is not None:
        try:
            dual = dual_from_vectors(frame, DualFamily.from_dict(data["dual"]).f)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"config.dual: {exc}") from None

    eps = data.get("eps_grid", list(DEFAULT_EPS_GRID))
    if not isinstance(eps, list) or not all(isinstance(e, (int, float)) and e > 0 for e in eps):
        raise ConfigError("config.eps_grid: expected a list of positive numbers")
    cfg = RunConfig(
        frame=frame,
        hierarchy=hierarchy,
        dual=dual,
        samples=_field(data, "samples", int, 200),
        pairs=_field(data, "pairs", int, 200),
        seed=_field(data, "seed", int, 0),
        eps_grid=[float(e) for e in eps],
        oracle=_field(data, "oracle", bool, False),
    )
    if cfg.samples < 1 or cfg.pairs < 1:
        raise ConfigError("config.samples and config.pairs must be >= 1")
    return cfg


def load_config(path, levels: Optional[int] = None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config(data, levels)


def config_to_dict(cfg: RunConfig) -> dict:
    out = {"frame": cfg.frame.to_dict()}
    if cfg.hierarchy is not None:
        out["hierarchy"] = cfg.hierarchy.to_dict()
    if cfg.dual is not None:
        out["dual"] = cfg.dual.to_dict()
    out.update(samples=cfg.samples, pairs=cfg.pairs, seed=cfg.seed,
               eps_grid=cfg.eps_grid, oracle=cfg.oracle)
    return out


def _parse_seq(text: str) -> ScalarSequence:
    try:
        return ScalarSequence.from_json(text)
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ConfigError(f"--seq: expected a JSON array of numbers ({exc})") from None


def cmd_theta_norm(cfg: RunConfig, c: ScalarSequence) -> dict:
    block = isinstance(cfg.frame, BlockFrameSpec)
    out = []
    for s in cfg.levels:
        entry = {"level": s}
        main = theta_norm(cfg.frame, c, s, cfg.hierarchy)
        entry["result"] = main.to_dict()
        if cfg.oracle and block:
            orc = oracle_theta_norm(cfg.frame, c, s, cfg.hierarchy)
            entry["oracle"] = orc.to_dict()
            entry["difference"] = abs(main.value - orc.value)
        out.append(entry)
    return {"sequence": list(c), "levels": out}


def cmd_oracle_validate(cfg: RunConfig, n: Optional[int] = None) -> dict:
    if not isinstance(cfg.frame, BlockFrameSpec):
        raise ConfigError("oracle-validate needs a block frame (closed form vs oracle)")
    rng = np.random.default_rng(cfg.seed)
    n = n or min(cfg.samples, 50)
    worst = 0.0
    for s in cfg.levels:
        for c in rng.standard_normal((n, cfg.frame.m)):
            a = theta_norm(cfg.frame, c, s, cfg.hierarchy).value
            b = oracle_theta_norm(cfg.frame, c, s, cfg.hierarchy).value
            worst = max(worst, abs(a - b) / (1.0 + a))
    return {"samples_per_level": n, "levels": len(cfg.levels), "max_deviation": worst,
            "tolerance": ORACLE_RTOL, "ok": worst <= ORACLE_RTOL, "seed": cfg.seed}


def cmd_report(cfg: RunConfig) -> dict:
    report = assemble_verdicts(cfg.frame, cfg.hierarchy, cfg.dual, n_samples=cfg.samples,
                               n_pairs=cfg.pairs, eps_grid=cfg.eps_grid, seed=cfg.seed)
    out = report.to_dict()
    ok = report.all_hold
    if cfg.oracle and isinstance(cfg.frame, BlockFrameSpec):
        check = cmd_oracle_validate(cfg)
        out["oracle_check"] = check
        ok = ok and check["ok"]
    out["all_hold"] = ok
    out["summary"] = report.summary_rows()
    return out


def summary_csv(rows: List[dict]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: (_fmt(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def builtin_configs() -> dict:
    g1 = example_g1(3)
    g2 = example_g2(3)
    return {
        "g1.json": {"frame": g1.to_dict(),
                    "hierarchy": polynomial_hierarchy(g1.dim, 2).to_dict(), "seed": 0},
        "g2.json": {"frame": g2.to_dict(),
                    "dual": dual_from_vectors(g2, example_g2_dual(3)).to_dict(), "seed": 0},
        "identity.json": {"frame": identity_frame(3).to_dict(),
                          "hierarchy": trivial_hierarchy(3).to_dict(), "seed": 0},
    }


def cmd_examples(out_dir) -> List[Path]:
    out_dir = Path(out_dir)
    written = []
    for name, cfg in builtin_configs().items():
        path = out_dir / name
        _write_atomic(path, dumps(cfg) + "\n")
        written.append(path)
    return written


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetaframe", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config_required=True):
        sp.add_argument("--config", type=Path, required=config_required)
        sp.add_argument("--levels", type=int, default=None, help="highest level S (levels 0..S)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--oracle", action="store_true")
        sp.add_argument("--out", type=Path, default=None)

    sp = sub.add_parser("theta-norm", help="induced norm of a sequence")
    common(sp)
    sp.add_argument("--seq", required=True, help="JSON array of coefficients")
    common(sub.add_parser("report", help="full condition report"))
    common(sub.add_parser("oracle-validate", help="closed form vs brute-force oracle"))
    sp = sub.add_parser("examples", help="write built-in configs")
    sp.add_argument("--out", type=Path, default=Path("."))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "examples":
            for path in cmd_examples(args.out):
                print(path)
            return EXIT_OK
        cfg = load_config(args.config, args.levels)
        if args.seed is not None:
            cfg.seed = args.seed
        cfg.oracle = cfg.oracle or args.oracle

        if args.command == "theta-norm":
            result = cmd_theta_norm(cfg, _parse_seq(args.seq))
            ok = True
        elif args.command == "oracle-validate":
            result = cmd_oracle_validate(cfg)
            ok = result["ok"]
        else:
            result = cmd_report(cfg)
            ok = result["all_hold"]
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleLimitError as exc:
        print(f"oracle limit: {exc}", file=sys.stderr)
        return EXIT_ORACLE

    text = dumps(result) + "\n"
    if args.out is not None:
        name = {"theta-norm": "theta_norm.json", "report": "report.json",
                "oracle-validate": "oracle_validate.json"}[args.command]
        _write_atomic(args.out / name, text)
        if args.command == "report":
            _write_atomic(args.out / "summary.csv", summary_csv(result["summary"]))
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
