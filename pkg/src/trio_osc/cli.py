"""Command-line front end: ``sweep``, ``diagonalize`` and ``verify``.

    trio-osc sweep --states 1,0,0 0,1,0 --samples 401 --out s.csv
    trio-osc sweep --preset fig2
    trio-osc diagonalize --omega 1 1.1 1.2 --coupling 0.01 0.02 0.015 --json
    trio-osc verify --level full

Sweep settings can also come from a TOML file (``--config``); flags given on
the command line override it.  ``TRIO_THREADS`` caps the worker threads used
for a sweep; rows are always written in (state, theta) order.
"""

import argparse
from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import asdict, dataclass, field
import io
import json
import math
import os
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import verify as verify_mod
from .angles import near_pole
from .errors import TrioError
from .oscillator import OscillatorParams, build_potential_matrix, diagonalize
from .purity import FockState, entropies, tradeoff_from_entropies

HEADER = ["theta", "mu_theta", "n", "m", "l", "S_Lx", "S_Ly", "S_Lz", "M_x", "M_y", "M_z", "flag"]
DEFAULT_RANGE = (-1.0, 1.0)
DEFAULT_SAMPLES = 201

_SINGLE = [1, 2, 3, 4]
PRESETS = {
    # single-excitation families, S_Lx / S_Ly / S_Lz
    "fig2": [(k, 0, 0) for k in _SINGLE] + [(0, k, 0) for k in _SINGLE] + [(0, 0, k) for k in _SINGLE],
    "fig3": [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2), (3, 2, 1)],
    "fig4": [(k, 0, 0) for k in _SINGLE] + [(0, k, 0) for k in _SINGLE] + [(0, 0, k) for k in _SINGLE],
    "fig5": [(k, 1, 1) for k in (1, 2, 3)] + [(1, k, 1) for k in (1, 2, 3)] + [(1, 1, k) for k in (1, 2, 3)],
    "fig6": [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2), (3, 2, 1)],
    "fig7": [(k, 0, 0) for k in _SINGLE] + [(0, k, 0) for k in _SINGLE] + [(0, 0, k) for k in _SINGLE],
    "fig8": [(k, 1, 1) for k in (1, 2, 3)] + [(1, k, 1) for k in (1, 2, 3)] + [(1, 1, k) for k in (1, 2, 3)],
    "fig9": [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2), (3, 2, 1)],
    "fig10": [(1, 2, 2), (2, 2, 1), (2, 1, 2)],
}


class ConfigError(TrioError, ValueError):
    """Bad sweep or parameter configuration."""


@dataclass
class SweepConfig:
    states: list = field(default_factory=lambda: [FockState(1, 0, 0)])
    theta_min: float = DEFAULT_RANGE[0]
    theta_max: float = DEFAULT_RANGE[1]
    samples: int = DEFAULT_SAMPLES
    out: str = "-"

    def validate(self):
        if not self.theta_min < self.theta_max:
            raise ConfigError(f"theta-min {self.theta_min} must be below theta-max {self.theta_max}")
        if self.samples < 2:
            raise ConfigError("samples must be at least 2")
        self.states = [FockState.coerce(s) for s in self.states]
        return self

    def thetas(self):
        return np.linspace(self.theta_min, self.theta_max, self.samples)


def parse_state(text):
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"state must look like n,m,l: {text!r}")
    try:
        return FockState.coerce(int(p) for p in parts)
    except (ValueError, TrioError) as exc:
        raise argparse.ArgumentTypeError(f"bad state {text!r}: {exc}") from None


def _fmt(x):
    return repr(float(x)) if math.isfinite(x) else ""


def sweep_rows(state, theta):
    """CSV fields for one (state, theta) sample; never raises on domain trouble."""
    mu = math.tan(theta)
    base = [_fmt(theta), _fmt(mu), str(state.n), str(state.m), str(state.l)]
    flag = "pole_limit" if near_pole(mu) else ""
    try:
        s = entropies(state, theta)
    except TrioError as exc:
        name = "domain" if isinstance(exc, ValueError) else "error"
        return base + [""] * 6 + [name]
    vals = list(s) + list(tradeoff_from_entropies(*s))
    if not all(math.isfinite(v) for v in vals):
        flag = "nonfinite"
    return base + [_fmt(v) for v in vals] + [flag]


def _threads():
    env = os.environ.get("TRIO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"TRIO_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def run_sweep(config):
    """All rows of a sweep, ordered by state then theta."""
    config.validate()
    jobs = [(st, float(t)) for st in config.states for t in config.thetas()]
    workers = min(_threads(), len(jobs))
    if workers <= 1:
        return [sweep_rows(*j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda j: sweep_rows(*j), jobs))


def write_csv(rows, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    w.writerows(rows)
    if out in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


def _load_toml(path):
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def build_sweep_config(args):
    cfg = SweepConfig()
    if args.config:
        data = _load_toml(args.config).get("sweep", {})
        known = {"states", "theta_min", "theta_max", "samples", "out", "preset"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"{args.config}: unknown keys in [sweep]: {', '.join(sorted(extra))}")
        if "preset" in data:
            cfg.states = list(PRESETS[data["preset"]])
        if "states" in data:
            cfg.states = [parse_state(s) if isinstance(s, str) else FockState.coerce(s) for s in data["states"]]
        for key in ("theta_min", "theta_max", "samples", "out"):
            if key in data:
                setattr(cfg, key, data[key])
    if args.preset:
        cfg.states = list(PRESETS[args.preset])
    if args.states:
        cfg.states = list(args.states)
    for key in ("theta_min", "theta_max", "samples", "out"):
        val = getattr(args, key)
        if val is not None:
            setattr(cfg, key, val)
    return cfg.validate()


def cmd_sweep(args):
    cfg = build_sweep_config(args)
    write_csv(run_sweep(cfg), cfg.out)
    return 0


def _params_from_args(args):
    if args.params:
        data = _load_toml(args.params)
        data = data.get("oscillator", data)
        try:
            return OscillatorParams(**{k: float(v) for k, v in data.items()})
        except TypeError as exc:
            raise ConfigError(f"{args.params}: {exc}") from None
    if args.omega is None or args.coupling is None:
        raise ConfigError("give --params FILE or both --omega and --coupling")
    return OscillatorParams(*args.omega, *args.coupling)


def diagonalization_report(params):
    coeffs, roots, results = diagonalize(params)
    eig = np.linalg.eigvalsh(build_potential_matrix(params))
    report = {
        "params": asdict(params),
        "weak_coupling": params.is_weak,
        "quintic_coefficients": [float(a) for a in coeffs],
        "degenerate": roots.degenerate,
        "roots": [float(r) for r in roots.roots],
        "solutions": [
            {
                "mu_phi": r.mu_phi,
                "theta": r.angles.theta,
                "phi_cap": r.angles.phi_cap,
                "phi": r.angles.phi,
                "residual": r.residual,
                "eigenvalues": [float(x) for x in r.eigenvalues],
                "branch": r.branch,
            }
            for r in results
        ],
        "eigenvalues": sorted((float(x) for x in eig), reverse=True),
    }
    freqs = np.sqrt(np.clip(eig, 0.0, None))
    report["eigenfrequency_spread"] = float((freqs.max() - freqs.min()) / freqs.min()) if freqs.min() > 0 else math.inf
    return report


def _text_report(rep):
    lines = ["quintic coefficients a0..a5:"]
    lines += [f"  a{i} = {a:.12g}" for i, a in enumerate(rep["quintic_coefficients"])]
    lines.append(f"degenerate: {rep['degenerate']}")
    lines.append(f"weak coupling: {rep['weak_coupling']}")
    lines.append("eigenvalues: " + ", ".join(f"{x:.12g}" for x in rep["eigenvalues"]))
    lines.append(f"eigenfrequency spread: {rep['eigenfrequency_spread']:.3e}")
    for s in rep["solutions"]:
        lines.append(
            f"mu_phi={s['mu_phi']:.12g}  theta={s['theta']:.12g}  Phi={s['phi_cap']:.12g}  "
            f"phi={s['phi']:.12g}  residual={s['residual']:.3e}"
        )
    return "\n".join(lines) + "\n"


def cmd_diagonalize(args):
    rep = diagonalization_report(_params_from_args(args))
    sys.stdout.write(json.dumps(rep, indent=2) + "\n" if args.json else _text_report(rep))
    return 0


def cmd_verify(args):
    results = verify_mod.run(args.level)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} properties passed")
    if failed:
        print("failed: " + ", ".join(failed))
        return 1
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="trio-osc", description="Entanglement of three coupled oscillators in Fock states.")
    sub = p.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="theta sweep of S_L and M for a list of states, as CSV")
    sw.add_argument("--states", nargs="+", type=parse_state, help="states as n,m,l")
    sw.add_argument("--theta-min", type=float)
    sw.add_argument("--theta-max", type=float)
    sw.add_argument("--samples", type=int)
    sw.add_argument("--preset", choices=sorted(PRESETS, key=lambda k: int(k[3:])))
    sw.add_argument("--config", help="TOML file with a [sweep] table")
    sw.add_argument("--out", help="CSV path, '-' for stdout")
    sw.set_defaults(func=cmd_sweep)

    dg = sub.add_parser("diagonalize", help="quintic roots, Euler angles and residuals for physical parameters")
    dg.add_argument("--omega", nargs=3, type=float, metavar=("WX", "WY", "WZ"))
    dg.add_argument("--coupling", nargs=3, type=float, metavar=("JXY", "JXZ", "JYZ"))
    dg.add_argument("--params", help="TOML file with omega_x .. j_yz")
    dg.add_argument("--json", action="store_true")
    dg.set_defaults(func=cmd_diagonalize)

    vf = sub.add_parser("verify", help="run the property suite")
    vf.add_argument("--level", choices=("fast", "full"), default="fast")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TrioError, OSError, KeyError) as exc:
        parser.exit(2, f"trio-osc: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
