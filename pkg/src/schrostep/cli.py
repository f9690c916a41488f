"""Command line front end.

Scenarios are plain text files of dotted keys, one per line:

    # upward step hit by a packet from the left
    potential.levels = 1, 2
    potential.interfaces = 0
    initial.kind = gaussian
    initial.center = -1.0
    initial.width = 1.0
    initial.momentum = 0.7
    grid.x = linspace:-4:4:41
    grid.t = 0.25, 0.5, 1.0
    solver = d4

Subcommands:
    solve CONFIG            evaluate the solution on the grid
    compare CONFIG CONFIG   run two scenarios on the first one's grid
    asymptote CONFIG        leading order along ray.gamma at grid.t
    interface-map CONFIG    solution and slope traces at the jump points

Output is tab separated with a header row, %.17g everywhere, to
output.path or stdout.  Configuration problems exit with status 2 and a
one-line JSON object on stderr naming the offending field.  The
SCHROSTEP_THREADS variable caps the compiled-kernel thread count.
"""

import argparse
import json
import os
import sys

import numpy as np

from .asymptotics import leading_order
from .general import GeneralSolver
from .interface_map import InterfaceMap
from .kernels import PiecewisePotential
from .step import StepSolver
from .transforms import InitialCondition
from .well import WellSolver

__all__ = ["main", "ConfigError", "parse_config", "build_scenario"]

_FMT = "%.17g"


class ConfigError(ValueError):
    def __init__(self, field, message):
        super().__init__(message)
        self.field = field


def parse_config(text):
    """Dotted-key lines into a dict; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("line {}".format(lineno),
                              "expected 'key = value', got {!r}".format(raw.strip()))
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _floats(field, val):
    try:
        return [float(p) for p in val.split(",") if p.strip() != ""]
    except ValueError:
        raise ConfigError(field, "expected comma separated numbers, got {!r}".format(val))


def _grid(field, val):
    if val.startswith("linspace:"):
        parts = val.split(":")[1:]
        if len(parts) != 3:
            raise ConfigError(field, "linspace needs start:stop:count")
        try:
            return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise ConfigError(field, "bad linspace spec {!r}".format(val))
    return np.array(_floats(field, val))


def build_potential(cfg):
    if "potential.levels" not in cfg:
        raise ConfigError("potential.levels", "missing")
    if "potential.interfaces" not in cfg:
        raise ConfigError("potential.interfaces", "missing")
    levels = _floats("potential.levels", cfg["potential.levels"])
    ifaces = _floats("potential.interfaces", cfg["potential.interfaces"])
    try:
        return PiecewisePotential(levels, ifaces)
    except ValueError as e:
        raise ConfigError("potential.interfaces", str(e))


def build_ic(cfg):
    kind = cfg.get("initial.kind", "gaussian")
    if kind == "gaussian":
        try:
            amp = complex(cfg.get("initial.amplitude", "1"))
        except ValueError:
            raise ConfigError("initial.amplitude", "not a complex number")
        try:
            return InitialCondition.gaussian(
                amplitude=amp,
                center=float(cfg.get("initial.center", "0")),
                width=float(cfg.get("initial.width", "1")),
                momentum=float(cfg.get("initial.momentum", "0")))
        except ValueError as e:
            raise ConfigError("initial.width", str(e))
    if kind == "tabulated":
        xs = _floats("initial.x", cfg.get("initial.x", ""))
        try:
            vals = [complex(p) for p in cfg.get("initial.values", "").split(",")]
        except ValueError:
            raise ConfigError("initial.values", "expected comma separated complex numbers")
        try:
            return InitialCondition.tabulated(xs, vals)
        except ValueError as e:
            raise ConfigError("initial.x", str(e))
    raise ConfigError("initial.kind", "unknown kind {!r}".format(kind))


def build_solver(cfg, potential, ic):
    name = cfg.get("solver", "auto")
    kw = {}
    if "numerics.tolerance" in cfg:
        kw["tolerance"] = float(cfg["numerics.tolerance"])
    if "numerics.R" in cfg:
        kw["radius"] = float(cfg["numerics.R"])
    if "numerics.delta" in cfg:
        kw["delta"] = float(cfg["numerics.delta"])
    if name == "auto":
        name = "d4" if potential.njumps == 1 else "general"
    try:
        if name in ("d4", "quadrant", "realline"):
            return StepSolver(potential, ic, representation=name, **kw)
        if name == "general":
            return GeneralSolver(potential, ic, **kw)
        if name in ("well", "well-quadrant"):
            rep = "d4" if name == "well" else "quadrant"
            return WellSolver(potential, ic, representation=rep, **kw)
    except ValueError as e:
        raise ConfigError("solver", str(e))
    raise ConfigError("solver", "unknown solver {!r}".format(name))


def build_scenario(cfg):
    pot = build_potential(cfg)
    ic = build_ic(cfg)
    return pot, ic, build_solver(cfg, pot, ic)


def _times(cfg):
    if "grid.t" not in cfg:
        raise ConfigError("grid.t", "missing")
    return _floats("grid.t", cfg["grid.t"])


def _open_out(cfg):
    path = cfg.get("output.path", "-")
    if path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def _emit(out, cols):
    out.write("\t".join(_FMT % c if not isinstance(c, str) else c
                        for c in cols) + "\n")


def cmd_solve(args):
    cfg = parse_config(open(args.config).read())
    pot, ic, solver = build_scenario(cfg)
    if "grid.x" not in cfg:
        raise ConfigError("grid.x", "missing")
    xs = _grid("grid.x", cfg["grid.x"])
    out, close = _open_out(cfg)
    out.write("x\tt\tre_psi\tim_psi\tabs_psi\terr_estimate\n")
    for t in _times(cfg):
        for s in solver.evaluate_grid(xs, t):
            _emit(out, [s.x, s.t, s.value.real, s.value.imag, abs(s.value), s.error])
    if close:
        out.close()
    return 0


def cmd_compare(args):
    cfg_a = parse_config(open(args.config).read())
    cfg_b = parse_config(open(args.config_b).read())
    pot_a, ic_a, sol_a = build_scenario(cfg_a)
    pot_b, ic_b, sol_b = build_scenario(cfg_b)
    if "grid.x" not in cfg_a:
        raise ConfigError("grid.x", "missing")
    xs = _grid("grid.x", cfg_a["grid.x"])
    out, close = _open_out(cfg_a)
    out.write("x\tt\tre_psi_a\tim_psi_a\tre_psi_b\tim_psi_b\tabs_diff\terr_a\terr_b\n")
    worst = 0.0
    for t in _times(cfg_a):
        sa = sol_a.evaluate_grid(xs, t)
        sb = sol_b.evaluate_grid(xs, t)
        for a, b in zip(sa, sb):
            d = abs(a.value - b.value)
            worst = max(worst, d)
            _emit(out, [a.x, a.t, a.value.real, a.value.imag,
                        b.value.real, b.value.imag, d, a.error, b.error])
    if close:
        out.close()
    print("max|psi_a - psi_b| = {:.6e}".format(worst), file=sys.stderr)
    return 0


def cmd_asymptote(args):
    cfg = parse_config(open(args.config).read())
    pot = build_potential(cfg)
    ic = build_ic(cfg)
    if "ray.gamma" not in cfg:
        raise ConfigError("ray.gamma", "missing")
    try:
        gamma = float(cfg["ray.gamma"])
    except ValueError:
        raise ConfigError("ray.gamma", "not a number")
    out, close = _open_out(cfg)
    out.write("t\tx\tre_psi\tim_psi\tabs_psi\n")
    try:
        for t in _times(cfg):
            v = leading_order(pot, ic, gamma, t)
            _emit(out, [t, gamma * t, v.real, v.imag, abs(v)])
    except ValueError as e:
        raise ConfigError("ray.gamma", str(e))
    if close:
        out.close()
    return 0


def cmd_interface_map(args):
    cfg = parse_config(open(args.config).read())
    pot = build_potential(cfg)
    ic = build_ic(cfg)
    kw = {}
    if "numerics.tolerance" in cfg:
        kw["tolerance"] = float(cfg["numerics.tolerance"])
    if "numerics.R" in cfg:
        kw["radius"] = float(cfg["numerics.R"])
    imap = InterfaceMap(pot, ic, **kw)
    which = cfg.get("map.interfaces", "all")
    if which == "all":
        idx = list(range(1, pot.njumps + 1))
    else:
        idx = [int(p) for p in which.split(",")]
        if any(not 1 <= i <= pot.njumps for i in idx):
            raise ConfigError("map.interfaces",
                              "indices must lie in 1..{}".format(pot.njumps))
    ts = _times(cfg)
    out, close = _open_out(cfg)
    out.write("x\tt\tre_psi\tim_psi\tabs_psi\terr_estimate\tre_psi_x\tim_psi_x\n")
    for ell in idx:
        for s in imap.trace_grid(ts, interface=ell, derivative=True):
            _emit(out, [s.x, s.t, s.value.real, s.value.imag, abs(s.value),
                        s.error, s.psi_x.real, s.psi_x.imag])
    if close:
        out.close()
    return 0


def main(argv=None):
    threads = os.environ.get("SCHROSTEP_THREADS")
    if threads:
        try:
            from . import _accel
            if _accel.HAS_NUMBA:
                import numba
                numba.set_num_threads(max(1, int(threads)))
        except (ImportError, ValueError):
            pass
    ap = argparse.ArgumentParser(prog="schrostep", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("solve", help="evaluate a scenario on its grid")
    p.add_argument("config")
    p.set_defaults(fn=cmd_solve)
    p = sub.add_parser("compare", help="two scenarios on the first grid")
    p.add_argument("config")
    p.add_argument("config_b")
    p.set_defaults(fn=cmd_compare)
    p = sub.add_parser("asymptote", help="ray leading order at large time")
    p.add_argument("config")
    p.set_defaults(fn=cmd_asymptote)
    p = sub.add_parser("interface-map", help="traces at the interface points")
    p.add_argument("config")
    p.set_defaults(fn=cmd_interface_map)
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        print(json.dumps({"error": str(e), "field": e.field}), file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(json.dumps({"error": str(e), "field": "config"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
