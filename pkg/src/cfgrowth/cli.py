"""Command-line frontend.

Every run echoes its version, seed, and precision settings in a header
block, serializes big integers as decimal strings, and is byte-identical
for identical (version, config, seed).  Option precedence is
flags > environment (CFG_BITS, CFG_SEED) > config file > defaults.

Exit codes: 0 ok, 2 usage, 3 precision/budget, 4 internal invariant.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .boxdim import CAVEAT, box_counts, point_cloud, slope_fit, uniform_cloud
from .cfcore import CFExpansion, convergents, evaluate, expand_rational
from .construct import (
    EVERY_STEP,
    SPARSE,
    ConstructionPlan,
    construct_r_extreme,
    construct_r_target,
    construct_s_target,
    growth_exponent,
)
from .errors import BudgetError, DomainError, InvariantError
from .growth import r_ratio, s_ratio, trace
from .jarnik import (
    DEFAULT_SAMPLE_NS,
    DIMENSION,
    EMPTY,
    FULL_MEASURE,
    RateSpec,
    critical_exponent,
    dim_r,
    dim_s,
    measure_verdict,
    partial_sum,
)
from .numutil import decimal_str, digits10
from .sampler import LEVY_ERROR_RATE, MonteCarloResult, SampleBudget, monte_carlo

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

DEFAULTS = {"bits": 2048, "seed": 0, "max_digits": 1000, "format": "json"}
CONFIG_KEYS = frozenset(DEFAULTS)
ENV_KEYS = {"bits": "CFG_BITS", "seed": "CFG_SEED"}
FORMATS = ("json", "jsonl", "csv")


@dataclass
class RunConfig:
    """Resolved invocation: subcommand plus precision/reproducibility knobs."""

    subcommand: str
    params: dict[str, Any]
    bits: int
    seed: int
    max_digits: int
    fmt: str
    output: str | None
    truncate_digits: int | None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


def _parse_cf(text: str) -> CFExpansion:
    try:
        quotients = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"--cf expects comma-separated integers, got {text!r}") from exc
    return CFExpansion(quotients)


def _parse_scales(text: str) -> list[int]:
    try:
        if ":" in text:
            lo_s, hi_s = text.split(":", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise DomainError(f"--scales range {text!r} is empty")
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"--scales expects K1:K2 or a comma-separated list, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format")
    common.add_argument("--output", default=None, help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="master seed (echoed in the header)")
    common.add_argument("--bits", type=int, default=None, help="dyadic sample precision in bits")
    common.add_argument("--max-digits", type=int, default=None, help="denominator digit budget")
    common.add_argument("--config", default=None, help="key=value config file")
    common.add_argument(
        "--truncate-digits",
        type=int,
        default=None,
        help="shorten long digit strings on stdout (files always hold full values)",
    )

    parser = argparse.ArgumentParser(prog="cfgrowth", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("expand", parents=[common], help="continued-fraction expansion of a rational")
    p.add_argument("--rational", required=True, help="value in (0,1) as P/Q")

    p = sub.add_parser("eval", parents=[common], help="exact value of an expansion")
    p.add_argument("--cf", required=True, help="comma-separated quotients")

    p = sub.add_parser("convergents", parents=[common], help="convergent ladder of an expansion")
    p.add_argument("--cf", required=True)
    p.add_argument("--upto", type=int, default=None)

    p = sub.add_parser("trace", parents=[common], help="growth statistics per index")
    p.add_argument("--cf", required=True)

    construct = sub.add_parser("construct", help="synthesize expansions with target growth")
    csub = construct.add_subparsers(dest="variant", required=True)
    p = csub.add_parser("z", parents=[common], help="R statistic converging to z")
    p.add_argument("--z", required=True)
    p.add_argument("--mode", choices=(EVERY_STEP, SPARSE), default=EVERY_STEP)
    p.add_argument("--jitter", type=float, default=1.0)
    p = csub.add_parser("alpha", parents=[common], help="S statistic converging to alpha")
    p.add_argument("--alpha", required=True)
    p.add_argument("--mode", choices=(EVERY_STEP, SPARSE), default=EVERY_STEP)
    p.add_argument("--jitter", type=float, default=1.0)
    p = csub.add_parser("one", parents=[common], help="extreme growth, R increasing to 1")
    p.add_argument("--steps", type=int, required=True)

    jarnik = sub.add_parser("jarnik", help="measure verdicts and dimension formulas")
    jsub = jarnik.add_subparsers(dest="variant", required=True)
    p = jsub.add_parser("verdict", parents=[common], help="zero/infinity measure classification")
    p.add_argument("--tau", required=True)
    p.add_argument("--eps", default="0")
    p.add_argument("--s", required=True)
    p.add_argument("--samples", default=None, help="comma-separated partial-sum lengths")
    p = jsub.add_parser("sum", parents=[common], help="partial sum of the classifying series")
    p.add_argument("--tau", required=True)
    p.add_argument("--eps", default="0")
    p.add_argument("--s", required=True)
    p.add_argument("--terms", type=int, required=True)
    p = jsub.add_parser("dim", parents=[common], help="closed-form dimension record")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--z", default=None)
    group.add_argument("--alpha", default=None)

    p = sub.add_parser("sample", parents=[common], help="Monte-Carlo growth-limit estimates")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="index at which statistics are taken")
    p.add_argument("--warmup", type=int, default=0, help="quotients discarded per sample")

    p = sub.add_parser("boxdim", parents=[common], help="box-counting on a sampled point cloud")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--uniform", action="store_true")
    group.add_argument("--z", default=None)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--depth", type=int, default=100, help="digit budget per point")
    p.add_argument("--scales", default="4:10", help="K1:K2 range or comma-separated list")
    p.add_argument("--jitter", type=float, default=2.0)

    return parser


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fp:
            for lineno, raw in enumerate(fp, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, value = (part.strip() for part in line.split("=", 1))
                if key not in CONFIG_KEYS:
                    raise DomainError(
                        f"{path}:{lineno}: unknown key {key!r} (allowed: {', '.join(sorted(CONFIG_KEYS))})"
                    )
                values[key] = value
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(flag: Any, env_value: str | None, file_value: str | None, default: Any, cast: Callable) -> Any:
    if flag is not None:
        return flag
    if env_value is not None:
        try:
            return cast(env_value)
        except ValueError as exc:
            raise DomainError(f"bad environment value {env_value!r}") from exc
    if file_value is not None:
        try:
            return cast(file_value)
        except ValueError as exc:
            raise DomainError(f"bad config value {file_value!r}") from exc
    return default


def parse(argv: list[str] | None = None, env: dict[str, str] | None = None) -> RunConfig:
    """Parse argv into a RunConfig (flags > env > config file > defaults)."""
    env = dict(os.environ) if env is None else env
    ns = build_parser().parse_args(argv)
    params = vars(ns).copy()
    file_values = _read_config_file(params["config"]) if params.get("config") else {}

    bits = _resolve(params.pop("bits"), env.get(ENV_KEYS["bits"]), file_values.get("bits"), DEFAULTS["bits"], int)
    seed = _resolve(params.pop("seed"), env.get(ENV_KEYS["seed"]), file_values.get("seed"), DEFAULTS["seed"], int)
    max_digits = _resolve(params.pop("max_digits"), None, file_values.get("max_digits"), DEFAULTS["max_digits"], int)
    fmt = _resolve(params.pop("format"), None, file_values.get("format"), DEFAULTS["format"], str)
    if fmt not in FORMATS:
        raise DomainError(f"format must be one of {FORMATS}, got {fmt!r}")

    subcommand = params.pop("subcommand")
    if "variant" in params:
        subcommand = f"{subcommand} {params.pop('variant')}"
    output = params.pop("output")
    truncate = params.pop("truncate_digits")
    params.pop("config", None)
    return RunConfig(
        subcommand=subcommand,
        params=params,
        bits=bits,
        seed=seed,
        max_digits=max_digits,
        fmt=fmt,
        output=output,
        truncate_digits=truncate,
    )


def _header(cfg: RunConfig) -> dict[str, Any]:
    return {
        "tool": "cfgrowth",
        "version": __version__,
        "subcommand": cfg.subcommand,
        "seed": cfg.seed,
        "precision": {"bits": cfg.bits, "max_digits": cfg.max_digits},
        "format": cfg.fmt,
    }


def _interval_floats(interval) -> list[float]:
    return [float(interval.lo), float(interval.hi)]


def _cf_payload(cf: CFExpansion) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "quotient_count": len(cf),
        "quotients": [decimal_str(a) for a in cf.quotients],
    }
    if len(cf) >= 2:
        n = len(cf) - 1
        payload["final_q_digits"] = _final_q_digits(cf)
        payload["final_r"] = _interval_floats(r_ratio(cf, n))
        payload["final_s"] = _interval_floats(s_ratio(cf, n))
    return payload


def _final_q_digits(cf: CFExpansion) -> int:
    """Decimal digits of q_{N-1}, the last index with certified statistics."""
    from .cfcore import ConvergentRecurrence

    rec = ConvergentRecurrence()
    for a in cf.quotients[:-1]:
        rec.push(a)
    return digits10(rec.q)


def cmd_expand(cfg: RunConfig) -> dict[str, Any]:
    value = _parse_fraction(cfg.params["rational"])
    cf = expand_rational(value.numerator, value.denominator)
    return {"rational": str(value), "quotients": [decimal_str(a) for a in cf.quotients]}


def cmd_eval(cfg: RunConfig) -> dict[str, Any]:
    cf = _parse_cf(cfg.params["cf"])
    return {"value": str(evaluate(cf))}


def cmd_convergents(cfg: RunConfig) -> dict[str, Any]:
    cf = _parse_cf(cfg.params["cf"])
    ladder = convergents(cf, cfg.params["upto"])
    return {
        "records": [{"n": c.n, "p": decimal_str(c.p), "q": decimal_str(c.q)} for c in ladder]
    }


def cmd_trace(cfg: RunConfig) -> dict[str, Any]:
    cf = _parse_cf(cfg.params["cf"])
    tr = trace(cf)
    return {"quotient_count": tr.quotient_count, "records": list(tr.row_dicts())}


def cmd_construct_z(cfg: RunConfig) -> dict[str, Any]:
    z = _parse_fraction(cfg.params["z"])
    if not 0 <= z <= 1:
        raise DomainError(f"--z must lie in the valid range [0, 1], got {cfg.params['z']}")
    if z == 1:
        raise DomainError("--z 1 is served by 'construct one'")
    plan = ConstructionPlan(
        z=z, mode=cfg.params["mode"], jitter=cfg.params["jitter"], seed=cfg.seed, max_digits=cfg.max_digits
    )
    cf = construct_r_target(plan)
    payload = {"z": str(z), "t": str(growth_exponent(z)), "mode": plan.mode, "jitter": plan.jitter}
    payload.update(_cf_payload(cf))
    return payload


def cmd_construct_alpha(cfg: RunConfig) -> dict[str, Any]:
    alpha = _parse_fraction(cfg.params["alpha"])
    if not -1 <= alpha <= 0:
        raise DomainError(f"--alpha must lie in the valid range [-1, 0], got {cfg.params['alpha']}")
    cf = construct_s_target(
        alpha, mode=cfg.params["mode"], jitter=cfg.params["jitter"], seed=cfg.seed, max_digits=cfg.max_digits
    )
    payload = {"alpha": str(alpha), "mode": cfg.params["mode"], "jitter": cfg.params["jitter"]}
    payload.update(_cf_payload(cf))
    return payload


def cmd_construct_one(cfg: RunConfig) -> dict[str, Any]:
    cf = construct_r_extreme(steps=cfg.params["steps"])
    payload = {"steps": cfg.params["steps"]}
    payload.update(_cf_payload(cf))
    return payload


def cmd_jarnik_verdict(cfg: RunConfig) -> dict[str, Any]:
    spec = RateSpec(tau=_parse_fraction(cfg.params["tau"]), eps=_parse_fraction(cfg.params["eps"]))
    s = _parse_fraction(cfg.params["s"])
    sample_ns = DEFAULT_SAMPLE_NS
    if cfg.params["samples"] is not None:
        sample_ns = tuple(int(part) for part in cfg.params["samples"].split(",") if part)
    verdict = measure_verdict(spec, s, sample_ns)
    return {
        "tau": str(spec.tau),
        "eps": str(spec.eps),
        "s": str(verdict.s),
        "verdict": verdict.classification.value,
        "s_star": str(critical_exponent(spec)),
        "series_exponent": str(verdict.series_exponent),
        "partial_sums": [[n, value] for n, value in verdict.partial_sums],
    }


def cmd_jarnik_sum(cfg: RunConfig) -> dict[str, Any]:
    spec = RateSpec(tau=_parse_fraction(cfg.params["tau"]), eps=_parse_fraction(cfg.params["eps"]))
    s = _parse_fraction(cfg.params["s"])
    value = partial_sum(spec, s, cfg.params["terms"])
    return {"tau": str(spec.tau), "eps": str(spec.eps), "s": str(s), "terms": cfg.params["terms"], "value": value}


def cmd_jarnik_dim(cfg: RunConfig) -> dict[str, Any]:
    if cfg.params["z"] is not None:
        target_key, target = "z", _parse_fraction(cfg.params["z"])
        record = dim_r(target)
    else:
        target_key, target = "alpha", _parse_fraction(cfg.params["alpha"])
        record = dim_s(target)
    measure = {DIMENSION: "infinite", FULL_MEASURE: "full", EMPTY: None}[record.kind]
    return {
        target_key: str(target),
        "set": record.kind,
        "dimension": None if record.dimension is None else str(record.dimension),
        "measure": measure,
    }


def cmd_sample(cfg: RunConfig) -> dict[str, Any]:
    budget = SampleBudget(bits=cfg.bits, n_target=cfg.params["n"], gauss_warmup=cfg.params["warmup"])
    result = monte_carlo(cfg.params["trials"], cfg.params["n"], budget, cfg.seed)
    return _sample_payload(result)


def _sample_payload(result: MonteCarloResult) -> dict[str, Any]:
    def stat(s) -> dict[str, Any]:
        return {
            "mean": s.mean,
            "median": s.median,
            "stddev": s.stddev,
            "ci95": [s.ci95_lo, s.ci95_hi],
        }

    return {
        "trials": result.trials,
        "n": result.n,
        "resampled": result.resampled,
        "reference": {"error_rate": LEVY_ERROR_RATE, "log_quotient_rate": 0.0, "r_mid": 0.0},
        "stats": {
            "log_quotient_rate": stat(result.log_quotient_rate),
            "error_rate": stat(result.error_rate),
            "r_mid": stat(result.r_mid),
        },
        "records": [
            {
                "trial": i,
                "log_quotient_rate": t.log_quotient_rate,
                "error_rate": t.error_rate,
                "r_mid": t.r_mid,
            }
            for i, t in enumerate(result.per_trial)
        ],
    }


def cmd_boxdim(cfg: RunConfig) -> dict[str, Any]:
    ks = _parse_scales(cfg.params["scales"])
    if cfg.params["uniform"]:
        cloud = uniform_cloud(cfg.params["count"], seed=cfg.seed, bits=cfg.bits)
    else:
        z = _parse_fraction(cfg.params["z"])
        cloud = point_cloud(
            z, cfg.params["count"], depth=cfg.params["depth"], seed=cfg.seed, jitter=cfg.params["jitter"]
        )
    counts = box_counts(cloud, ks)
    fit = slope_fit(counts) if len(counts) >= 4 else None
    payload: dict[str, Any] = {
        "family": cloud.family,
        "z": None if cloud.z is None else str(cloud.z),
        "points": len(cloud.points),
        "requested": cloud.requested,
        "duplicates": cloud.duplicates,
        "depth": cloud.depth,
        "records": [{"k": c.k, "delta": str(c.delta), "count": c.count} for c in counts],
        "caveat": CAVEAT,
    }
    if fit is not None:
        payload["slope"] = {"estimate": fit.estimate, "r2": fit.r_squared, "window": list(fit.window)}
    return payload


HANDLERS: dict[str, Callable[[RunConfig], dict[str, Any]]] = {
    "expand": cmd_expand,
    "eval": cmd_eval,
    "convergents": cmd_convergents,
    "trace": cmd_trace,
    "construct z": cmd_construct_z,
    "construct alpha": cmd_construct_alpha,
    "construct one": cmd_construct_one,
    "jarnik verdict": cmd_jarnik_verdict,
    "jarnik sum": cmd_jarnik_sum,
    "jarnik dim": cmd_jarnik_dim,
    "sample": cmd_sample,
    "boxdim": cmd_boxdim,
}


def _render(cfg: RunConfig, payload: dict[str, Any]) -> str:
    header = _header(cfg)
    if cfg.fmt == "json":
        return json.dumps({"header": header, **payload}, indent=2) + "\n"
    records = payload.get("records")
    if records is None:
        raise DomainError(f"format {cfg.fmt!r} needs tabular output; {cfg.subcommand!r} provides none")
    if cfg.fmt == "jsonl":
        lines = [json.dumps({"header": header})]
        lines += [json.dumps(rec) for rec in records]
        return "\n".join(lines) + "\n"
    # csv: header block as comment lines, then uniform-key rows
    lines = [f"# {key}={value}" for key, value in _flatten_header(header)]
    columns = list(records[0].keys()) if records else []
    lines.append(",".join(columns))
    for rec in records:
        lines.append(",".join(str(rec[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _flatten_header(header: dict[str, Any]) -> list[tuple[str, Any]]:
    flat: list[tuple[str, Any]] = []
    for key, value in header.items():
        if isinstance(value, dict):
            flat += [(f"{key}.{k}", v) for k, v in value.items()]
        else:
            flat.append((key, value))
    return flat


def _truncate_text(text: str, limit: int) -> str:
    # Only quoted digit strings are candidates: big integers are always
    # serialized as quoted decimal strings, while floats appear as bare
    # JSON numbers and must never be rewritten.
    import re

    def shorten(match: "re.Match[str]") -> str:
        digits = match.group(1)
        return f'"{digits[:limit]}...(+{len(digits) - limit} digits)"'

    return re.sub(r'"(\d{%d,})"' % (limit + 1), shorten, text)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        directory = os.path.dirname(os.path.abspath(cfg.output))
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".cfgrowth-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fp:
                fp.write(text)
            os.replace(tmp_path, cfg.output)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
    else:
        if cfg.truncate_digits:
            text = _truncate_text(text, cfg.truncate_digits)
        sys.stdout.write(text)


def execute(cfg: RunConfig) -> int:
    """Run the resolved subcommand and emit its artifact."""
    handler = HANDLERS.get(cfg.subcommand)
    if handler is None:
        raise DomainError(f"unknown subcommand {cfg.subcommand!r}")
    payload = handler(cfg)
    _emit(cfg, _render(cfg, payload))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse(argv)
        return execute(cfg)
    except SystemExit as exc:  # argparse usage errors already printed
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except DomainError as exc:
        print(f"cfgrowth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"cfgrowth: budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as exc:
        print(f"cfgrowth: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
