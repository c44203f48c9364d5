"""Command-line front end: deterministic CSV/JSON tables for every protocol.

Commands:

    check        randomized cross-validation of every closed form against
                 the independent oracles; exit 0 only if all suites pass
    wstate       trapped-state amplitudes and classification per qubit count
    anticlone    anti-cloning fidelity curves versus qubit count
    decoherence  no-click fidelity and survival probability versus qubit count
    scan         coupling-ratio sweep at fixed M plus located optima

Identical invocations (including --seed) produce byte-identical output:
floats are emitted with 17 significant digits, rows in a fixed sorted
order.  Exit codes: 0 success, 1 tolerance or assertion breach, 2
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .decoherence import (
    OverdampedRegimeError,
    conditional_amplitudes,
    decohered_fidelity,
    renormalized_trapping_time,
)
from .model import (
    ConfigurationError,
    SystemConfig,
    build_dissipative_hamiltonian,
    build_hamiltonian,
    star_config,
)
from .propagator import closed_form_propagator, expm_hermitian, rk4_propagate_many
from .protocols import (
    CouplingScheme,
    W_PLUS,
    W_PRIME,
    fidelity_curve,
    generate_w_state,
    optimize_coupling_ratio,
    run_anticlone,
    trapped_amplitudes,
)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2

#: closed form vs oracle tolerances, also pinned by the acceptance tests
CHECK_TOLERANCES = {
    "unitarity": 1e-10,
    "closed_vs_expm": 1e-10,
    "group_property": 1e-10,
    "closed_vs_rk4": 1e-8,
    "conditional_vs_rk4": 1e-8,
}

#: step sizes for the RK4 legs of `check`; the conditional suite integrates
#: over up to three trapping periods, where 5e-4 still leaves the integrator
#: error two orders below its 1e-8 budget
RK4_DT = 1e-4
CONDITIONAL_DT = 5e-4


class CheckFailure(Exception):
    """A cross-validation or internal consistency assertion failed."""


@dataclass(frozen=True)
class RunConfig:
    """Merged command-line / config-file options for one invocation."""

    command: str
    m: int | None = None
    m_range: tuple[int, int] | None = None
    scheme: str | None = None
    r: float | None = None
    gamma_decay: float | None = None
    kappa: float | None = None
    alpha: float = 0.0
    m_odd: int = 1
    format: str = "csv"
    out: str | None = None
    trials: int = 200
    seed: int = 42
    r_grid: str | None = None
    inject_fault: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ConfigurationError(f"unknown format {self.format!r}")
        if self.m is not None and self.m < 1:
            raise ConfigurationError(f"qubit count must be >= 1, got {self.m}")
        if self.m_range is not None and self.m_range[1] < self.m_range[0]:
            raise ConfigurationError(f"empty m-range {self.m_range}")
        if self.m_odd < 1 or self.m_odd % 2 == 0:
            raise ConfigurationError(f"m-odd must be a positive odd integer, got {self.m_odd}")
        if self.trials < 0:
            raise ConfigurationError(f"trials must be >= 0, got {self.trials}")

    def qubit_counts(self, default: tuple[int, int] | None = None) -> list[int]:
        if self.m is not None and self.m_range is not None:
            raise ConfigurationError("give either --m or --m-range, not both")
        if self.m is not None:
            return [self.m]
        lo, hi = self.m_range if self.m_range is not None else (None, None)
        if lo is None:
            if default is None:
                raise ConfigurationError("a qubit count is required (--m or --m-range)")
            lo, hi = default
        return list(range(lo, hi + 1))

    def resolve_scheme(self) -> CouplingScheme:
        if self.r is not None:
            return CouplingScheme.custom(self.r)
        if self.scheme is not None:
            return CouplingScheme.from_string(self.scheme)
        raise ConfigurationError("a coupling scheme is required (--scheme or --r)")


# ---------------------------------------------------------------------------
# output formatting


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_table(headers: list[str], rows: list[list], config: RunConfig):
    """Emit rows as CSV (fixed header) or a JSON array of objects."""
    if config.format == "json":
        payload = [dict(zip(headers, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(headers)]
        lines += [",".join(format_value(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# check: randomized oracle-equivalence suites


def _sample_config(rng) -> SystemConfig:
    m = int(rng.integers(1, 17))
    return SystemConfig(tuple(rng.uniform(0.25, 2.0, size=m)))


def _closed_matrix(config: SystemConfig, t: float, inject_fault: str | None) -> np.ndarray:
    u = np.array(closed_form_propagator(config, t).matrix)
    if inject_fault == "unitarity_sign":
        m = config.m
        block = u[:m, :m]
        flipped = np.diag(np.diag(block)) - (block - np.diag(np.diag(block)))
        u[:m, :m] = flipped
    return u


def _matrix_suites(trials: int, rng, inject_fault: str | None) -> dict[str, float]:
    """Unitarity, closed-vs-eigendecomposition and group-property defects."""
    worst = {"unitarity": 0.0, "closed_vs_expm": 0.0, "group_property": 0.0}
    for _ in range(trials):
        config = _sample_config(rng)
        t1 = rng.uniform(0.0, 10.0)
        t2 = rng.uniform(0.0, 10.0)
        u1 = _closed_matrix(config, t1, inject_fault)
        u2 = _closed_matrix(config, t2, inject_fault)
        u12 = _closed_matrix(config, t1 + t2, inject_fault)
        eye = np.eye(config.m + 1)
        worst["unitarity"] = max(
            worst["unitarity"], float(np.max(np.abs(u1.conj().T @ u1 - eye)))
        )
        exact = expm_hermitian(build_hamiltonian(config).matrix, t1)
        worst["closed_vs_expm"] = max(
            worst["closed_vs_expm"], float(np.max(np.abs(u1 - exact)))
        )
        worst["group_property"] = max(
            worst["group_property"], float(np.max(np.abs(u1 @ u2 - u12)))
        )
    return worst


def _rk4_suite(trials: int, rng, inject_fault: str | None) -> float:
    """Closed-form propagation vs RK4 integration on random block states."""
    generators, states, times, closed = [], [], [], []
    for _ in range(trials):
        config = _sample_config(rng)
        t = rng.uniform(0.0, 1.0)
        raw = rng.normal(size=config.m + 1) + 1j * rng.normal(size=config.m + 1)
        block = raw / np.linalg.norm(raw)
        generators.append(build_hamiltonian(config).matrix)
        states.append(block)
        times.append(t)
        closed.append(_closed_matrix(config, t, inject_fault) @ block)
    integrated = rk4_propagate_many(generators, states, np.array(times), dt=RK4_DT)
    worst = 0.0
    for ref, got in zip(closed, integrated):
        worst = max(worst, float(np.max(np.abs(ref - got))))
    return worst


def _conditional_suite(trials: int, rng) -> float:
    """Closed-form conditional amplitudes vs RK4 under the dissipative generator."""
    generators, states, times, params = [], [], [], []
    for _ in range(trials):
        m = int(rng.integers(2, 13))
        r = rng.uniform(0.05, 6.0)
        gamma_decay = rng.uniform(0.0, 0.1)
        kappa = rng.uniform(0.0, 0.1)
        tau_c = renormalized_trapping_time(m, r, gamma_decay, kappa)
        t = rng.uniform(0.0, 3.0 * tau_c)
        config = star_config(m, r, gamma_decay=gamma_decay, kappa=kappa)
        block = np.zeros(m + 1, dtype=complex)
        block[0] = 1.0
        generators.append(build_dissipative_hamiltonian(config).matrix)
        states.append(block)
        times.append(t)
        params.append((m, r, gamma_decay, kappa, t))
    integrated = rk4_propagate_many(generators, states, np.array(times), dt=CONDITIONAL_DT)
    worst = 0.0
    for (m, r, gamma_decay, kappa, t), got in zip(params, integrated):
        amps = conditional_amplitudes(m, r, gamma_decay, kappa, t)
        predicted = np.full(m + 1, amps.b, dtype=complex)
        predicted[0] = amps.b1
        predicted[m] = amps.b_photon
        worst = max(worst, float(np.max(np.abs(predicted - got))))
    return worst


def run_check_suites(
    trials: int, seed: int, inject_fault: str | None = None
) -> list[dict]:
    """Run every cross-validation suite; one result row per suite."""
    rng = np.random.default_rng(seed)
    rows = []
    if trials > 0:
        worst = _matrix_suites(trials, rng, inject_fault)
        worst["closed_vs_rk4"] = _rk4_suite(trials, rng, inject_fault)
        worst["conditional_vs_rk4"] = _conditional_suite(trials, rng)
        for suite, tolerance in CHECK_TOLERANCES.items():
            rows.append(
                {
                    "suite": suite,
                    "trials": trials,
                    "max_deviation": worst[suite],
                    "tolerance": tolerance,
                    "passed": worst[suite] < tolerance,
                }
            )
    return rows


def cmd_check(config: RunConfig) -> int:
    rows = run_check_suites(config.trials, config.seed, config.inject_fault)
    headers = ["suite", "trials", "max_deviation", "tolerance", "passed"]
    write_table(headers, [[row[h] for h in headers] for row in rows], config)
    failed = [row["suite"] for row in rows if not row["passed"]]
    if failed:
        print(f"check failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# ---------------------------------------------------------------------------
# protocol tables


def cmd_wstate(config: RunConfig) -> int:
    scheme = config.resolve_scheme()
    headers = ["m", "scheme", "r", "tau_star", "a1", "a", "classification"]
    rows = []
    for m in config.qubit_counts():
        _, report = generate_w_state(m, scheme)
        tau = report.trapping_time * config.m_odd
        rows.append(
            [m, report.scheme, report.r, tau, report.a1, report.a, report.classification]
        )
    write_table(headers, rows, config)
    return EXIT_OK


def cmd_anticlone(config: RunConfig) -> int:
    headers = [
        "m",
        "f_iden",
        "f_plusminus",
        "f_sep",
        "f1_iden",
        "f1_plus",
        "f1_minus",
        "f1_sep",
    ]
    schemes = {
        "identical": CouplingScheme("identical"),
        "w_plus": W_PLUS,
        "w_minus": CouplingScheme("w_minus"),
        "w_prime": W_PRIME,
    }
    rows = []
    for m in config.qubit_counts(default=(2, 30)):
        values = {}
        for tag, scheme in schemes.items():
            f_target, f_input = fidelity_curve(m, scheme)
            report = run_anticlone(m, scheme, alpha=config.alpha)
            pipeline_target = report.fidelities[-1]
            pipeline_input = report.fidelities[0]
            defect = max(abs(pipeline_target - f_target), abs(pipeline_input - f_input))
            if defect > 1e-12:
                raise CheckFailure(
                    f"anticlone closed form disagrees with pipeline at m={m} "
                    f"scheme={tag}: defect {defect:.3e}"
                )
            values[tag] = (f_target, f_input)
        rows.append(
            [
                m,
                values["identical"][0],
                values["w_plus"][0],
                values["w_prime"][0],
                values["identical"][1],
                values["w_plus"][1],
                values["w_minus"][1],
                values["w_prime"][1],
            ]
        )
    write_table(headers, rows, config)
    return EXIT_OK


def cmd_decoherence(config: RunConfig) -> int:
    gamma_decay = config.gamma_decay if config.gamma_decay is not None else 0.001
    kappa = config.kappa if config.kappa is not None else 0.02
    if config.r is not None or config.scheme is not None:
        schemes = [config.resolve_scheme()]
    else:
        schemes = [W_PLUS, W_PRIME]
    headers = ["m", "scheme", "r", "tau_star_c", "f_r", "p_no_click"]
    rows = []
    for m in config.qubit_counts(default=(2, 20)):
        for scheme in sorted(schemes, key=lambda s: s.tag):
            report = decohered_fidelity(
                m,
                scheme.ratio(m),
                gamma_decay,
                kappa,
                m_odd=config.m_odd,
                scheme=scheme.tag,
            )
            rows.append(
                [m, report.scheme, report.r, report.tau_star_c, report.fidelity, report.p_no_click]
            )
    write_table(headers, rows, config)
    return EXIT_OK


def _parse_r_grid(text: str, m: int) -> np.ndarray:
    if text is None:
        return np.linspace(0.1, 4.0 * np.sqrt(m), 64)
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigurationError(f"r-grid must be START:STOP:COUNT, got {text!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or stop < start or start <= 0.0:
        raise ConfigurationError("empty r-grid")
    return np.linspace(start, stop, count)


def cmd_scan(config: RunConfig) -> int:
    if config.m is None:
        raise ConfigurationError("scan needs a single --m")
    m = config.m
    grid = _parse_r_grid(config.r_grid, m)
    headers = ["kind", "r", "a1", "a", "f_target", "f_input"]
    rows = []
    for r in grid:
        a1, a = trapped_amplitudes(m, float(r))
        f_target, f_input = fidelity_curve(m, CouplingScheme.custom(float(r)))
        rows.append(["grid", float(r), a1, a, f_target, f_input])
    low, high = optimize_coupling_ratio(m, "w_symmetry")
    optima = [
        ("w_symmetry_low", low),
        ("w_symmetry_high", high),
        ("separable_transfer", optimize_coupling_ratio(m, "separable_transfer")),
        ("target_fidelity", optimize_coupling_ratio(m, "target_fidelity")),
    ]
    for kind, r in optima:
        a1, a = trapped_amplitudes(m, r)
        f_target, f_input = fidelity_curve(m, CouplingScheme.custom(r))
        rows.append([kind, r, a1, a, f_target, f_input])
    write_table(headers, rows, config)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common_options(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="key = value file; explicit flags win")
    parser.add_argument("--m", type=int, help="qubit count M")
    parser.add_argument("--m-range", help="inclusive qubit-count range A:B")
    parser.add_argument(
        "--scheme",
        choices=["identical", "w_plus", "w_minus", "w_prime"],
        help="named coupling scheme",
    )
    parser.add_argument("--r", type=float, help="explicit coupling ratio gamma_1/gamma")
    parser.add_argument("--gamma-decay", type=float, help="qubit dipole decay rate")
    parser.add_argument("--kappa", type=float, help="cavity decay rate")
    parser.add_argument("--alpha", type=float, default=0.0, help="input-qubit phase")
    parser.add_argument("--m-odd", type=int, default=1, help="odd trapping-time index")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--trials", type=int, default=200, help="randomized trials for check")
    parser.add_argument("--seed", type=int, default=42, help="RNG seed for check")
    parser.add_argument("--r-grid", help="scan grid START:STOP:COUNT")
    parser.add_argument(
        "--inject-fault",
        choices=["unitarity_sign"],
        help="deliberately corrupt the closed form (exercises failure paths)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcm",
        description="Multiqubit-cavity machine: trapped-state protocols and their validation",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("check", "cross-validate all closed forms against the oracles"),
        ("wstate", "trapped-state amplitudes and classification"),
        ("anticlone", "anti-cloning fidelity curves versus qubit count"),
        ("decoherence", "no-click fidelity and survival probability"),
        ("scan", "coupling-ratio sweep with located optima"),
    ]:
        _add_common_options(sub.add_parser(name, help=help_text))
    return parser


def _parse_m_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigurationError(f"m-range must be A:B, got {text!r}")
    lo, hi = int(parts[0]), int(parts[1])
    if hi < lo:
        raise ConfigurationError(f"empty m-range {text!r}")
    return lo, hi


def _load_config_file(path: str) -> list[str]:
    """Turn `key = value` lines into CLI flags (inserted before user flags)."""
    flags = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{line_no}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            flags += [f"--{key.replace('_', '-')}", value]
    return flags


def parse_args(argv: list[str]) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # config file values sit before explicit flags so the flags win
        argv = [argv[0]] + _load_config_file(args.config) + list(argv[1:])
        args = parser.parse_args(argv)
    m_range = _parse_m_range(args.m_range) if args.m_range else None
    return RunConfig(
        command=args.command,
        m=args.m,
        m_range=m_range,
        scheme=args.scheme,
        r=args.r,
        gamma_decay=args.gamma_decay,
        kappa=args.kappa,
        alpha=args.alpha,
        m_odd=args.m_odd,
        format=args.format,
        out=args.out,
        trials=args.trials,
        seed=args.seed,
        r_grid=args.r_grid,
        inject_fault=args.inject_fault,
    )


COMMANDS = {
    "check": cmd_check,
    "wstate": cmd_wstate,
    "anticlone": cmd_anticlone,
    "decoherence": cmd_decoherence,
    "scan": cmd_scan,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        config = parse_args(argv)
        return COMMANDS[config.command](config)
    except CheckFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (ConfigurationError, OverdampedRegimeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
