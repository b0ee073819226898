"""Command-line pipeline: zero verification, density construction,
three-route comparison, Goldbach validation, and Weyl-sum checks.

All commands are deterministic given their configuration (seeds included);
reruns produce byte-identical primary outputs.  Exit codes: 0 success,
1 tolerance or verification failure, 2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import density as dn
from . import empirical as em
from . import goldbach as gb
from . import spectral as sp
from ._backend import BACKEND
from .errors import MfunError, ZeroTableError
from .svgplot import line_plot
from .testfuncs import TestFunction
from .zeros import bundled_zeros_path, counting_check, load_zeros, verify_table

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

COMPARE_TOLERANCE = 1e-2
COUNTING_SLACK = 2

# Calibrated once on the bundled pipeline (x_max=2e5, N=100, observed
# maximum 0.0099 over x >= 1000) and frozen with a 5x margin.
NORMALIZED_RESIDUAL_BOUND = 0.05


@dataclass
class RunConfig:
    zeros: str = ""          # empty -> bundled table
    N: int = 10
    eps: float = 0.0         # 0 -> fixed-order density (no limit targeting)
    X: float = 1e6
    samples: int = 10 ** 7
    seed: int = 1
    out: str = "mfun-out"
    x_max: int = 200000
    tol: float = 1e-6
    prime_cutoff: int = 10 ** 7
    r_points: int = 4096
    cells: int = 256
    count: int = 50          # weyl vectors

    def zeros_path(self) -> Path:
        return Path(self.zeros) if self.zeros else bundled_zeros_path()


def _load_config_file(path: str) -> dict:
    values = {}
    fields = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise MfunError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = text.partition("=")
            key = key.strip().replace("-", "_")
            if key not in fields:
                raise MfunError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = val.strip()
    return values


def _coerce(config: RunConfig) -> RunConfig:
    for f in dataclasses.fields(RunConfig):
        raw = getattr(config, f.name)
        if isinstance(raw, str) and f.type in ("int", "float"):
            try:
                value = float(raw)
            except ValueError:
                raise MfunError(f"bad value for {f.name}: {raw!r}") from None
            setattr(config, f.name, int(value) if f.type == "int" else value)
    return config


def _build_config(args) -> RunConfig:
    config = RunConfig()
    if args.config:
        for k, v in _load_config_file(args.config).items():
            setattr(config, k, v)
    for f in dataclasses.fields(RunConfig):
        cli_val = getattr(args, f.name, None)
        if cli_val is not None:
            setattr(config, f.name, cli_val)
    return _coerce(config)


def _fmt(x) -> str:
    if isinstance(x, str):
        return f'"{x}"' if "," in x else x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}i"
    return f"{float(x):.17g}"


def _write_csv(path: Path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _coefficients(config: RunConfig):
    table = load_zeros(config.zeros_path())
    return table, sp.build_coefficients(table)


# ---------------------------------------------------------------- commands

def cmd_zeros_verify(config: RunConfig, out: Path) -> int:
    table = load_zeros(config.zeros_path())
    verified = verify_table(table, config.tol)
    rows = [(z.index, z.gamma, z.verified, z.residual)
            for z in verified.zeros]
    _write_csv(out / "zeros_report.csv",
               ["index", "gamma", "verified", "residual"], rows)
    bad = [z.index for z in verified.zeros if not z.verified]
    count_rows = []
    count_bad = False
    for t in np.linspace(25.0, verified.zeros[-1].gamma, 20):
        observed, expected = counting_check(verified, float(t))
        ok = abs(observed - expected) <= COUNTING_SLACK
        count_bad |= not ok
        count_rows.append((t, observed, expected, ok))
    _write_csv(out / "zeros_counting.csv",
               ["T", "observed", "expected", "within_slack"], count_rows)
    if bad:
        print(f"verification FAILED at indices {bad}")
        return EXIT_FAIL
    if count_bad:
        print("counting check FAILED (possible gap in the table)")
        return EXIT_FAIL
    print(f"all {verified.count} ordinates verified (tol {config.tol})")
    return EXIT_OK


def cmd_density(config: RunConfig, out: Path) -> int:
    _, coeffs = _coefficients(config)
    if config.eps > 0:
        d = dn.invert_limit_density(coeffs, config.eps)
        n_used = d.n_used
    else:
        n_used = config.N
        d = None
    rho = dn.default_rho_grid(coeffs, n_used)
    prof = dn.char_M_N(coeffs, n_used, rho)
    _write_csv(out / "characteristic.csv", ["rho", "value"],
               zip(prof.rho_grid, prof.values))
    if d is None:
        d = dn.invert_to_density(
            prof, dn.default_r_grid(coeffs, n_used, config.r_points))
    _write_csv(out / "density.csv", ["r", "value"],
               zip(d.r_grid, d.values))
    meta = {
        "order": d.order,
        "n_used": n_used,
        "mass": d.mass,
        "support_radius": d.support_radius,
        "leakage": d.leakage,
        "error_budget": d.error_budget,
        "r_points": len(d.r_grid),
        "rho_points": len(rho),
        "backend": BACKEND,
    }
    with open(out / "density_meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    line_plot(out / "density.svg",
              [(f"M_{n_used}(r)", d.r_grid, d.values)],
              title="radial value-distribution density",
              xlabel="r", ylabel="M(r)")
    print(f"density at order {n_used}: mass {d.mass:.9f}, "
          f"support {d.support_radius:.6g}, leakage {d.leakage:.2e}")
    return EXIT_OK


def default_test_functions(support: float) -> list[TestFunction]:
    s = support
    return [
        TestFunction.rectangle(-0.5 * s, 0.5 * s, -0.5 * s, 0.5 * s),
        TestFunction.rectangle(-0.25 * s, 0.75 * s, 0.0, 0.6 * s),
        TestFunction.disc(0.0, 0.5 * s),
        TestFunction.disc(0.25 * s + 0.0j, s / 3.0),
        TestFunction.gaussian(0.0, s / 3.0),
        TestFunction.gaussian(-0.25 * s + 0.1j * s, s / 4.0),
        TestFunction.character(1.0 / s),
        TestFunction.character(4.0 / s),
    ]


def _ladder(config: RunConfig, coeffs) -> tuple[list[float], bool]:
    x_min = 100.0 * 2.0 * math.pi / coeffs.gamma[0]
    rungs = [config.X / 100.0, config.X / 10.0, config.X]
    usable = [x for x in rungs if x >= x_min]
    return usable, len(usable) >= 2


def cmd_compare(config: RunConfig, out: Path) -> int:
    _, coeffs = _coefficients(config)
    n = config.N
    rho = dn.default_rho_grid(coeffs, n)
    d = dn.invert_to_density(dn.char_M_N(coeffs, n, rho),
                             dn.default_r_grid(coeffs, n, config.r_points))
    measure = em.haar_oracle(coeffs, n, config.samples, config.seed,
                             cells=config.cells)
    phis = default_test_functions(d.support_radius)
    ladder, trend_usable = _ladder(config, coeffs)
    if not ladder:
        print(f"X={config.X} below the minimum usable average length")
        return EXIT_USAGE
    report = em.compare_report(coeffs, measure, d, phis, x_ladder=ladder)
    header = (["phi", "density", "haar"]
              + [f"alpha_X{int(x)}" for x in ladder]
              + [f"disc_X{int(x)}" for x in ladder] + ["trend"])
    rows = []
    failed = False
    for row in report.rows:
        trend = ("ok" if row.trend_ok else "fail") if trend_usable \
            else "insufficient-X"
        rows.append([row.phi, row.density_value, row.haar_value,
                     *row.alpha_values, *row.discrepancies, trend])
        if row.discrepancies[-1] > COMPARE_TOLERANCE:
            failed = True
        if abs(row.haar_value - row.density_value) > COMPARE_TOLERANCE:
            failed = True
        if trend == "fail":
            failed = True
    _write_csv(out / "compare.csv", header, rows)
    _weyl_appendix(config, coeffs, out / "compare_weyl.csv", 10)
    print(f"max discrepancy {report.max_discrepancy:.3e} "
          f"({'FAIL' if failed else 'pass'})")
    return EXIT_FAIL if failed else EXIT_OK


def _weyl_appendix(config: RunConfig, coeffs, path: Path, count: int) -> bool:
    rng = np.random.Generator(np.random.Philox(key=np.uint64(config.seed)))
    n = min(config.N, len(coeffs))
    rows = []
    ok = True
    made = 0
    while made < count:
        vec = rng.integers(-3, 4, size=n)
        if not np.any(vec):
            continue
        made += 1
        val = em.weyl_test(coeffs, vec.astype(float), config.X)
        omega = float(np.dot(vec, coeffs.gamma[:n]))
        bound = 2.0 / (config.X * abs(omega))
        ok &= abs(val) <= bound * (1.0 + 1e-12)
        rows.append(["(" + " ".join(str(int(v)) for v in vec) + ")",
                     config.X, abs(val), bound, abs(val) <= bound * (1 + 1e-12)])
    _write_csv(path, ["n_vector", "X", "modulus", "bound", "ok"], rows)
    return ok


def cmd_weyl(config: RunConfig, out: Path) -> int:
    _, coeffs = _coefficients(config)
    ok = _weyl_appendix(config, coeffs, out / "weyl.csv", config.count)
    print(f"{config.count} Weyl vectors: {'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_goldbach(config: RunConfig, out: Path) -> int:
    _, coeffs = _coefficients(config)
    n = min(config.N, len(coeffs))
    table = gb.sieve_lambda(config.x_max)
    sums = gb.a2_curve(table, config.prime_cutoff)
    lo = min(100, config.x_max // 2)
    grid = sorted(set(np.unique(np.geomspace(lo, config.x_max, 257)
                                .astype(int)).tolist()))
    rows = gb.compare_main_term(sums, coeffs, n, grid)
    _write_csv(out / "goldbach.csv",
               ["x", "a2", "main_term", "residual", "normalized_residual"],
               [(r["x"], r["a2"], r["main_term"], r["residual"],
                 r["normalized_residual"]) for r in rows])
    xs = np.array([r["x"] for r in rows], dtype=float)
    line_plot(out / "goldbach.svg",
              [("A2(x)", xs, [r["a2"] for r in rows]),
               ("main term", xs, [r["main_term"] for r in rows])],
              title="summatory Goldbach residue vs zero-sum main term",
              xlabel="x", ylabel="value")
    failed = False
    if config.x_max <= 2000:
        brute = _brute_force_a2(table, sums)
        mismatch = float(np.max(np.abs(brute - sums.a2[:len(brute)])))
        scale = float(np.max(np.abs(brute))) or 1.0
        print(f"brute-force cross-check: max |diff| = {mismatch:.3e}")
        failed |= mismatch > 1e-9 * scale
    tail = [abs(r["normalized_residual"]) for r in rows if r["x"] >= 1000]
    worst = max(tail) if tail else 0.0
    failed |= worst > NORMALIZED_RESIDUAL_BOUND
    print(f"max normalized residual (x >= 1000): {worst:.4f} "
          f"(bound {NORMALIZED_RESIDUAL_BOUND}) "
          f"{'FAIL' if failed else 'pass'}")
    return EXIT_FAIL if failed else EXIT_OK


def _brute_force_a2(table, sums) -> np.ndarray:
    """O(x^2) reference for A_2; only used at desk scale (x <= 2000)."""
    lam = table.lam
    x_max = table.limit
    r2 = np.zeros(x_max + 1)
    for m in range(2, x_max + 1):
        r2[m] = float(np.dot(lam[1:m], lam[m - 1:0:-1]))
    n = np.arange(x_max + 1, dtype=float)
    return np.cumsum(r2 - n * sums.s2[:x_max + 1])


# ------------------------------------------------------------------- main

_COMMANDS = {
    "zeros-verify": cmd_zeros_verify,
    "density": cmd_density,
    "compare": cmd_compare,
    "goldbach-validate": cmd_goldbach,
    "weyl": cmd_weyl,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfun",
        description="value-distribution density of the summatory Goldbach "
                    "main term, with three-route verification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="key = value file")
        p.add_argument("--zeros", default=None, help="zero-ordinate file")
        p.add_argument("--N", type=int, default=None)
        p.add_argument("--eps", type=float, default=None)
        p.add_argument("--X", type=float, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--x-max", dest="x_max", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--prime-cutoff", dest="prime_cutoff", type=int,
                       default=None)
        p.add_argument("--r-points", dest="r_points", type=int, default=None)
        p.add_argument("--cells", type=int, default=None)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--print-config", action="store_true")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = _build_config(args)
        if args.print_config:
            for f in dataclasses.fields(RunConfig):
                print(f"{f.name.replace('_', '-')} = "
                      f"{getattr(config, f.name)}")
            return EXIT_OK
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](config, out)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZeroTableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MfunError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
