"""Command-line front end.

    adaquad rule      --cell unitcube3 --fn gaussian:10,100,0,0,0 --tol 1e-6 --out rule.csv
    adaquad integrate --cell sym2 --fn linear_cusp --tol 1e-10
    adaquad converge  --cell sym2 --fn exp_cusp:20 --m 2:24:2 --out conv.csv
    adaquad compare   --cell unitsquare --fn heaviside_family:straight --tols 1e-3,1e-5 --m 4:64:4

Exit status: 0 success, 2 configuration error, 3 numerical error. Every error
is reported as one stderr line ``adaquad: error[<category>:<field>]: <message>``.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import integrands as lib
from .adaptive import AdaptiveConfig, build_adaptive_rule, integrate_with_rule
from .errors import (
    AdaquadError,
    ConfigError,
    DegenerateCellError,
    DepthExceededError,
    InvalidArgumentError,
    NonFiniteIntegrandError,
)
from .geometry import Parallelepiped
from .io import fmt, rule_to_csv, rule_to_json, study_to_csv, study_to_json
from .studies import compare_strategies, fit_rate, tensor_convergence_study

OUTPUT_DIR_ENV = "ADAQUAD_OUTPUT_DIR"
COMMANDS = ("rule", "integrate", "converge", "compare")
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


@dataclass
class RunConfig:
    command: str
    cell: Parallelepiped
    integrands: list
    fn_specs: list
    adaptive: AdaptiveConfig
    output: str = None
    format: str = "csv"
    m_range: list = field(default_factory=list)
    cusp: np.ndarray = None
    tol_sweep: list = field(default_factory=list)


# ---------------------------------------------------------------- parsing helpers

def parse_cell(text):
    """Named shortcut or explicit vertex rows ``"x,y;x,y;x,y"`` (base first)."""
    text = text.strip()
    m = re.fullmatch(r"unitcube(\d+)", text)
    if m:
        return Parallelepiped.unit_cube(int(m.group(1)))
    m = re.fullmatch(r"sym(\d+)", text)
    if m:
        return Parallelepiped.symmetric_cube(int(m.group(1)))
    if text == "unitsquare":
        return Parallelepiped.unit_cube(2)
    if text == "unitinterval":
        return Parallelepiped.unit_cube(1)
    try:
        rows = [[float(v) for v in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise ConfigError("cell", f"cannot parse cell {text!r}") from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise ConfigError("cell", "cell rows must all have the same length")
    dim = len(rows[0])
    if len(rows) != dim + 1:
        raise ConfigError("cell", f"malformed cell: need {dim + 1} rows for dim {dim}, got {len(rows)}")
    try:
        return Parallelepiped.from_vertices(rows)
    except (InvalidArgumentError, DegenerateCellError) as exc:
        raise ConfigError("cell", str(exc)) from None


def _floats(args, what):
    try:
        return [float(a) for a in args]
    except ValueError:
        raise ConfigError("fn", f"{what}: parameters must be numbers") from None


def parse_integrand(spec, dim):
    """``name[:p1,p2,...]`` to a list of integrands (families expand to several)."""
    name, _, rest = spec.partition(":")
    args = [a for a in rest.split(",") if a.strip()] if rest else []
    try:
        if name == "constant":
            (c,) = _floats(args, name) or [1.0]
            return [lib.constant(c, dim)]
        if name == "gaussian":
            p = _floats(args, name)
            if len(p) != 2 + dim:
                raise ConfigError("fn", f"gaussian needs amplitude,alpha and {dim} center coordinates")
            return [lib.gaussian_bump(p[0], p[1], p[2:])]
        if name == "linear_cusp":
            p = _floats(args, name)
            if p and len(p) != dim:
                raise ConfigError("fn", f"linear_cusp center needs {dim} coordinates")
            return [lib.linear_cusp(dim, p or None)]
        if name == "exp_cusp":
            p = _floats(args, name)
            if len(p) not in (1, 1 + dim):
                raise ConfigError("fn", f"exp_cusp needs alpha and optionally {dim} center coordinates")
            return [lib.exp_cusp(p[0], dim, p[1:] or None)]
        if name in ("heaviside", "heaviside_family"):
            if dim != 2:
                raise ConfigError("fn", f"{name} is defined on 2-D cells only")
            if not args:
                raise ConfigError("fn", f"{name} needs an interface kind")
            iface = lib.default_interface(args[0])
            p = _floats(args[1:], name)
            if name == "heaviside":
                if len(p) != 1:
                    raise ConfigError("fn", "heaviside needs kind,eps")
                return [lib.heaviside_integrand(iface, p[0])]
            return lib.heaviside_family(iface, p[0] if p else 1.0)
    except InvalidArgumentError as exc:
        raise ConfigError("fn", str(exc)) from None
    raise ConfigError("fn", f"unknown integrand name {name!r}")


def parse_int_range(text, what):
    """``a:b:step`` (inclusive) or a comma list."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1
            return list(range(start, stop + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(what, f"cannot parse {text!r}") from None


def parse_float_list(text, what):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(what, f"cannot parse {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        m = re.search(r"--([\w-]+)", message)
        field_name = m.group(1).replace("-", "_") if m else "argv"
        raise ConfigError(field_name, message)


def _build_parser():
    parser = _Parser(prog="adaquad", description="Adaptive tensor-Gauss quadrature.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with option defaults")
    parser.add_argument("--cell")
    parser.add_argument("--fn", action="append", default=None)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--nsp", default=None, help="low,high points per direction")
    parser.add_argument("--max-depth", type=int)
    parser.add_argument("--comparator", choices=("ge", "gt"))
    parser.add_argument("--m", help="point counts a:b:step or a,b,c")
    parser.add_argument("--cusp", help="cusp location for min-distance, comma separated")
    parser.add_argument("--tols", help="tolerance sweep, comma separated")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"))
    return parser


def _load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config", "config file must hold a JSON object")
    return doc


def parse_config(argv):
    """Validate ``argv`` (without the program name) into a :class:`RunConfig`."""
    ns = _build_parser().parse_args(argv)
    opts = {}
    if ns.config:
        opts.update(_load_config_file(ns.config))
    for key, value in vars(ns).items():
        if value is not None and key != "config":
            opts[key] = value
    if isinstance(opts.get("fn"), str):
        opts["fn"] = [opts["fn"]]

    cmd = ns.command
    if "cell" not in opts:
        raise ConfigError("cell", "missing required option --cell")
    cell = parse_cell(str(opts["cell"]))
    specs = opts.get("fn") or []
    if not specs:
        raise ConfigError("fn", "at least one --fn is required")
    funcs = []
    for spec in specs:
        funcs.extend(parse_integrand(spec, cell.dim))

    needs_tol = cmd in ("rule", "integrate")
    if needs_tol and "tol" not in opts:
        raise ConfigError("tol", "missing required option --tol")
    tol = float(opts.get("tol", 1e-6))
    if not tol > 0:
        raise ConfigError("tol", f"tolerance must be positive, got {tol:g}")
    nsp = opts.get("nsp", "5,8")
    if isinstance(nsp, str):
        nsp = parse_int_range(nsp, "nsp")
    if len(nsp) != 2:
        raise ConfigError("nsp", "expected two point counts low,high")
    try:
        adaptive = AdaptiveConfig(int(nsp[0]), int(nsp[1]), tol,
                                  int(opts.get("max_depth", 30)), opts.get("comparator", "ge"))
    except InvalidArgumentError as exc:
        raise ConfigError("nsp" if "nsp" in str(exc) else "max_depth", str(exc)) from None

    cfg = RunConfig(cmd, cell, funcs, list(specs), adaptive,
                    output=opts.get("out"), format=opts.get("format", "csv"))

    if cmd == "converge":
        if len(funcs) != 1:
            raise ConfigError("fn", "converge takes exactly one integrand")
        cfg.m_range = parse_int_range(str(opts.get("m", "2:24:2")), "m")
        cusp = opts.get("cusp")
        cfg.cusp = (np.array(parse_float_list(cusp, "cusp")) if isinstance(cusp, str)
                    else np.array(cusp if cusp is not None else np.zeros(cell.dim), dtype=float))
        if cfg.cusp.shape != (cell.dim,):
            raise ConfigError("cusp", f"cusp needs {cell.dim} coordinates")
    if cmd == "compare":
        cfg.m_range = parse_int_range(str(opts.get("m", "2:64:2")), "m")
        tols = opts.get("tols", "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8")
        cfg.tol_sweep = parse_float_list(tols, "tols") if isinstance(tols, str) else list(tols)
        if not cfg.tol_sweep or any(not t > 0 for t in cfg.tol_sweep):
            raise ConfigError("tols", "tolerances must be positive")
    if cmd in ("converge", "compare") and (not cfg.m_range or min(cfg.m_range) < 1):
        raise ConfigError("m", "point counts must be positive")
    return cfg


# ---------------------------------------------------------------- execution

def _render(cfg):
    if cfg.command == "rule":
        result = build_adaptive_rule(cfg.cell, cfg.integrands, cfg.adaptive)
        if cfg.format == "json":
            return rule_to_json(result.rule, result.leaf_count, cfg.adaptive.tol,
                                cfg.adaptive.comparator)
        return rule_to_csv(result.rule)
    if cfg.command == "integrate":
        result = build_adaptive_rule(cfg.cell, cfg.integrands, cfg.adaptive)
        rows = [(f.label, integrate_with_rule(result.rule, f)) for f in cfg.integrands]
        if cfg.format == "json":
            return json.dumps({"points": result.rule.count,
                               "integrals": [{"label": l, "value": v} for l, v in rows]},
                              sort_keys=True) + "\n"
        lines = ["label,integral,points"]
        lines += [f'"{l}",{fmt(v)},{result.rule.count}' for l, v in rows]
        return "\n".join(lines) + "\n"
    if cfg.command == "converge":
        records = tensor_convergence_study(cfg.integrands[0], cfg.cell, cfg.m_range, cfg.cusp)
        try:
            slope = fit_rate([r for r in records if r.points_per_direction % 2 == 0])
            print(f"adaquad: slope={slope:.4f}", file=sys.stderr)
        except Exception:
            pass
        return study_to_json(records) if cfg.format == "json" else study_to_csv(records, "convergence")
    records = compare_strategies(cfg.integrands, cfg.cell, cfg.tol_sweep, cfg.m_range,
                                 config=cfg.adaptive)
    return study_to_json(records) if cfg.format == "json" else study_to_csv(records, "comparison")


def _resolve_output(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _fail(category, field_name, message, code):
    message = " ".join(str(message).split())
    print(f"adaquad: error[{category}:{field_name}]: {message}", file=sys.stderr)
    return code


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        text = _render(cfg)
    except ConfigError as exc:
        return _fail("config", exc.field, str(exc).split(": ", 1)[-1], EXIT_CONFIG)
    except DepthExceededError as exc:
        return _fail("numerical", "depth", exc, EXIT_NUMERICAL)
    except NonFiniteIntegrandError as exc:
        return _fail("numerical", "nonfinite", exc, EXIT_NUMERICAL)
    except (InvalidArgumentError, DegenerateCellError) as exc:
        return _fail("config", "argument", exc, EXIT_CONFIG)
    except AdaquadError as exc:
        return _fail("numerical", type(exc).__name__, exc, EXIT_NUMERICAL)

    if cfg.output is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    path = _resolve_output(cfg.output)
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        return _fail("io", "out", f"cannot write {path}: {exc.strerror}", EXIT_CONFIG)
    return 0


if __name__ == "__main__":
    sys.exit(main())
