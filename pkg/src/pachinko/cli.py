"""Command-line entry point.

Subcommands: resources, matrix, distribution, fermion, gaussian, dims,
paths, oracle-check, bench.  Exit codes: 0 success, 1 validation/usage
error, 2 cost-guard rejection, 3 oracle mismatch.

Machine-readable outputs are deterministic: JSON has sorted keys and
shortest-round-trip floats, CSV uses RFC-style quoting, matrices print at
17 significant digits.  Files written with ``-o`` embed a run manifest
(command, config path, parameters, tool version, format) for
reproduction; JSON carries it under the "manifest" key, CSV as a leading
``#`` comment line.  Mode, port and detector indices on this interface
are 0-based.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__, bench, dims, fock, gaussian, lattice, oracle, transfer
from .errors import CostGuardError, ValidationError

ORACLE_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2 (2 means cost guard)
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _manifest(args, fmt: str) -> dict:
    skip = {"output", "plot", "func"}
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k not in skip and k != "command" and k != "config" and v is not None
    }
    return {
        "command": args.command,
        "config": getattr(args, "config", None),
        "parameters": params,
        "version": __version__,
        "format": fmt,
    }


def _emit(text: str, args) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, args) -> None:
    payload = dict(payload)
    payload["manifest"] = _manifest(args, "json")
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args)


def _emit_csv(header: list, rows: list, args) -> None:
    buf = io.StringIO()
    if getattr(args, "output", None):
        buf.write("# " + json.dumps(_manifest(args, "csv"), sort_keys=True) + "\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buf.getvalue(), args)


def _parse_photons(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise ValidationError(f"expected N or N,M photon counts, got {text!r}")
    try:
        N = int(parts[0])
        M = int(parts[1]) if len(parts) == 2 else 0
    except ValueError:
        raise ValidationError(f"photon counts must be integers, got {text!r}") from None
    if N < 0 or M < 0:
        raise ValidationError("photon counts must be non-negative")
    return N, M


def _parse_pattern(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValidationError(f"pattern must be comma-separated integers, got {text!r}") from None


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ValidationError(f"expected a complex number like 1.5 or 0.3+0.2j, got {text!r}") from None


def _parse_fermion_spec(text: str, num_modes: int) -> fock.FermionOccupation:
    """SPEC is comma-separated MODE:SPIN tokens, e.g. '0:u,1:d' (0-based)."""
    up = [0] * num_modes
    down = [0] * num_modes
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            mode_text, spin = token.split(":")
            mode = int(mode_text)
        except ValueError:
            raise ValidationError(f"bad fermion token {token!r}; expected MODE:SPIN") from None
        if not 0 <= mode < num_modes:
            raise ValidationError(f"mode {mode} out of range 0..{num_modes - 1}")
        reg = {"u": up, "up": up, "d": down, "down": down}.get(spin.lower())
        if reg is None:
            raise ValidationError(f"spin must be u/up or d/down, got {spin!r}")
        if reg[mode]:
            raise ValidationError(f"duplicate occupation of mode {mode} ({spin})")
        reg[mode] = 1
    return fock.FermionOccupation(up=tuple(up), down=tuple(down))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_resources(args) -> int:
    config = lattice.load_config(args.config)
    N, M = _parse_photons(args.photons)
    report = lattice.resource_report(config, N, M)
    fields = [
        ("depth", report.depth),
        ("num_bs", report.num_bs),
        ("num_ps", report.num_ps),
        ("num_detectors", report.num_detectors),
        ("num_input_modes", report.num_input_modes),
        ("num_internal_modes", report.num_internal_modes),
        ("energy_per_run_joules", report.energy_per_run),
        ("run_time_seconds", report.run_time),
        ("area_m2", report.area),
    ]
    if args.json:
        _emit_json({k: v for k, v in fields}, args)
    else:
        lines = []
        for k, v in fields:
            if v is None:
                lines.append(f"{k} = (absent: no physical constants in config)")
            elif isinstance(v, float):
                lines.append(f"{k} = {_fmt(v)}")
            else:
                lines.append(f"{k} = {v}")
        _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_matrix(args) -> int:
    config = lattice.load_config(args.config)
    u = transfer.total_matrix(config).matrix
    n = u.shape[0]
    if args.json:
        _emit_json(
            {"dim": n, "matrix": [[[z.real, z.imag] for z in row] for row in u]},
            args,
        )
    elif args.csv:
        rows = [
            [i, j, _fmt(u[i, j].real), _fmt(u[i, j].imag)]
            for i in range(n)
            for j in range(n)
        ]
        _emit_csv(["row", "col", "re", "im"], rows, args)
    else:
        lines = []
        for row in u:
            lines.append("  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
        _emit("\n".join(lines) + "\n", args)
    return 0


def _apply_cost_cap_flag(args) -> None:
    # flag form of PACHINKO_COST_CAP, scoped to this process
    cap = getattr(args, "cost_cap", None)
    if cap is not None:
        if cap <= 0:
            raise ValidationError(f"--cost-cap must be positive, got {cap}")
        os.environ["PACHINKO_COST_CAP"] = str(cap)


def cmd_distribution(args) -> int:
    _apply_cost_cap_flag(args)
    config = lattice.load_config(args.config)
    u = transfer.total_matrix(config)
    N, M = _parse_photons(args.input)
    port_n, port_m = transfer.input_ports(config.depth)
    input_pattern = [0] * (2 * config.depth)
    input_pattern[port_n] = N
    input_pattern[port_m] = M

    if args.pattern is not None:
        pattern = _parse_pattern(args.pattern)
        if len(pattern) != 2 * config.depth:
            raise ValidationError(
                f"pattern must have {2 * config.depth} entries, got {len(pattern)}"
            )
        amp = fock.amplitude_general(u, input_pattern, pattern)
        prob = abs(amp) ** 2
        if args.json:
            _emit_json(
                {
                    "pattern": list(pattern),
                    "re_amp": amp.real,
                    "im_amp": amp.imag,
                    "probability": prob,
                },
                args,
            )
        else:
            _emit(f"{prob:.17g}\n", args)
        return 0

    dist = fock.full_distribution(u, input_pattern, threads=args.threads)
    entries = [
        (p, dist.amplitudes[p]) for p in dist.amplitudes
    ]
    if args.plot:
        from . import plots

        plots.plot_distribution(dist, args.plot, title=f"input N={N}, M={M}")
    if args.json:
        _emit_json(
            {
                "input": list(input_pattern),
                "total_photons": N + M,
                "entries": [
                    {
                        "pattern": list(p),
                        "re_amp": a.real,
                        "im_amp": a.imag,
                        "probability": abs(a) ** 2,
                    }
                    for p, a in entries
                ],
            },
            args,
        )
    else:
        rows = [
            [",".join(map(str, p)), _fmt(a.real), _fmt(a.imag), _fmt(abs(a) ** 2)]
            for p, a in entries
        ]
        _emit_csv(["pattern", "re_amp", "im_amp", "probability"], rows, args)
    return 0


def cmd_fermion(args) -> int:
    config = lattice.load_config(args.config)
    u = transfer.total_matrix(config)
    occ = _parse_fermion_spec(args.input, 2 * config.depth)
    n_up, n_down = occ.counts()
    outputs = list(fock.fermion_output_basis(2 * config.depth, n_up, n_down))
    results = []
    for out in outputs:
        amp = fock.fermion_amplitude(u, occ, out)
        results.append((out, amp))
    if args.json:
        _emit_json(
            {
                "input_up": list(occ.up),
                "input_down": list(occ.down),
                "entries": [
                    {
                        "up": list(o.up),
                        "down": list(o.down),
                        "re_amp": a.real,
                        "im_amp": a.imag,
                        "probability": abs(a) ** 2,
                    }
                    for o, a in results
                ],
            },
            args,
        )
    else:
        rows = [
            [
                ",".join(map(str, o.up)),
                ",".join(map(str, o.down)),
                _fmt(a.real),
                _fmt(a.imag),
                _fmt(abs(a) ** 2),
            ]
            for o, a in results
        ]
        _emit_csv(["up", "down", "re_amp", "im_amp", "probability"], rows, args)
    return 0


def cmd_gaussian(args) -> int:
    config = lattice.load_config(args.config)
    u = transfer.total_matrix(config)
    port = args.port
    if args.coherent is not None:
        beta = _parse_complex(args.coherent)
        amps = gaussian.propagate_coherent(u, gaussian.CoherentInput(beta=beta, port=port))
        means = np.abs(amps) ** 2
        payload = {
            "kind": "coherent",
            "port": port,
            "amplitudes": [[a.real, a.imag] for a in amps],
            "mean_photons": [float(v) for v in means],
        }
    else:
        xi = _parse_complex(args.squeezed)
        state = gaussian.squeezed_vacuum_state(xi, port, config.depth)
        out = gaussian.propagate_gaussian(u, state)
        means = out.mean_photons()
        payload = {
            "kind": "squeezed",
            "port": port,
            "mean_photons": [float(v) for v in means],
        }
    if args.plot:
        from . import plots

        plots.plot_mean_photons(means, args.plot, title=f"{payload['kind']} input, port {port}")
    if args.json:
        _emit_json(payload, args)
    else:
        lines = [f"detector {l}: mean photons = {_fmt(v)}" for l, v in enumerate(means)]
        _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_dims(args) -> int:
    if args.table is not None:
        rows = dims.complexity_table(args.table)
        if args.plot:
            from . import plots

            plots.plot_complexity(rows, args.plot)
        _emit_csv(
            ["L", "N", "dim_bosonic", "dim_fermionic", "path_count", "ryser_ops"],
            [[r.L, r.N, r.dim_bosonic, r.dim_fermionic, r.path_count, r.ryser_ops] for r in rows],
            args,
        )
        return 0
    if args.photons is None or args.depth is None:
        raise ValidationError("dims needs --photons and --depth (or --table L_MAX)")
    N, L = args.photons, args.depth
    value = dims.dim_fermionic(N, L) if args.fermionic else dims.dim_bosonic(N, L)
    if args.json:
        _emit_json(
            {
                "photons": N,
                "depth": L,
                "statistics": "fermionic" if args.fermionic else "bosonic",
                "dimension": str(value),
                "digits": dims.digit_count(value),
            },
            args,
        )
    else:
        _emit(f"{value}\n", args)
    return 0


def cmd_paths(args) -> int:
    N, M = _parse_photons(args.photons)
    value = oracle.path_count(N, M, args.depth)
    exponent = args.depth * (N + M)
    if args.json:
        _emit_json(
            {
                "photons": [N, M],
                "depth": args.depth,
                "exponent": exponent,
                "path_count": str(value),
                "approx": dims.scientific_str(value),
                "digits": dims.digit_count(value),
            },
            args,
        )
    else:
        _emit(
            f"2^{exponent} = {value}\n"
            f"~ {dims.scientific_str(value)} ({dims.digit_count(value)} digits)\n",
            args,
        )
    return 0


def cmd_oracle_check(args) -> int:
    _apply_cost_cap_flag(args)
    config = lattice.load_config(args.config)
    N, M = _parse_photons(args.input)
    u = transfer.total_matrix(config)
    port_n, port_m = transfer.input_ports(config.depth)
    input_pattern = [0] * (2 * config.depth)
    input_pattern[port_n] = N
    input_pattern[port_m] = M
    dist = fock.full_distribution(u, input_pattern)
    state = oracle.evolve(config, N, M)
    deviation = max(
        abs(dist.probability(p) - state.probability(p)) for p in dist.amplitudes
    )
    if args.report:
        rows = [
            [
                ",".join(map(str, p)),
                _fmt(dist.probability(p)),
                _fmt(state.probability(p)),
            ]
            for p in dist.amplitudes
        ]
        _emit_csv(["pattern", "prob_operator_route", "prob_state_vector"], rows, args)
        sys.stderr.write(f"max probability deviation: {deviation:.3e}\n")
    else:
        _emit(f"max probability deviation: {deviation:.3e}\n", args)
    return 0 if deviation <= ORACLE_TOL else 3


def cmd_bench(args) -> int:
    if args.target != "permanent":
        raise ValidationError(f"unknown bench target {args.target!r}")
    rows = bench.bench_permanent(args.n_min, args.n_max, reps=args.reps)
    if args.plot:
        from . import plots

        plots.plot_bench(rows, args.plot)
    _emit_csv(
        ["n", "method", "mean_seconds"],
        [[r.n, r.method, _fmt(r.mean_seconds)] for r in rows],
        args,
    )
    return 0


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pachinko", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pachinko {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="lattice config JSON file")
        p.add_argument("-o", "--output", help="write the result to this file (with manifest)")

    p = sub.add_parser("resources", help="component counts and physical cost")
    add_common(p)
    p.add_argument("--photons", required=True, metavar="N[,M]")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_resources)

    p = sub.add_parser("matrix", help="full transfer unitary")
    add_common(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("distribution", help="exact Fock output statistics")
    add_common(p)
    p.add_argument("--input", required=True, metavar="N[,M]", help="dual-Fock input photons")
    p.add_argument("--pattern", metavar="n1,n2,...", help="single output pattern")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cost-cap", type=int, help="override the pattern-count guard")
    p.add_argument("--plot", metavar="FILE", help="render a probability bar chart")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("fermion", help="fermionic output statistics")
    add_common(p)
    p.add_argument(
        "--input", required=True, metavar="SPEC",
        help="occupations as MODE:SPIN tokens, e.g. '0:u,1:d' (0-based modes)"
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fermion)

    p = sub.add_parser("gaussian", help="coherent / squeezed propagation")
    add_common(p)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--coherent", metavar="BETA", help="coherent amplitude (complex)")
    kind.add_argument("--squeezed", metavar="XI", help="squeezing parameter (complex)")
    p.add_argument("--port", type=int, required=True, help="input port (0-based)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", metavar="FILE", help="render per-detector means")
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("dims", help="exact state-space dimensions")
    add_common(p, config=False)
    p.add_argument("--photons", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--fermionic", action="store_true")
    p.add_argument("--table", type=int, metavar="L_MAX", help="emit the scaling table")
    p.add_argument("--csv", action="store_true", help="table format; CSV is also the default")
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", metavar="FILE", help="render the growth curves (with --table)")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("paths", help="exact per-photon branch count 2^(L(N+M))")
    add_common(p, config=False)
    p.add_argument("--photons", required=True, metavar="N[,M]")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("oracle-check", help="compare both engines; exit 3 on mismatch")
    add_common(p)
    p.add_argument("--input", required=True, metavar="N[,M]")
    p.add_argument("--report", action="store_true", help="emit the per-pattern comparison")
    p.add_argument("--cost-cap", type=int, help="override the pattern-count guard")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="kernel timing table (permanent vs determinant)")
    add_common(p, config=False)
    p.add_argument("target", choices=["permanent"])
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--plot", metavar="FILE", help="render the timing curves")
    p.set_defaults(func=cmd_bench)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved_cap = os.environ.get("PACHINKO_COST_CAP")
    try:
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except CostGuardError as exc:
        sys.stderr.write(f"cost guard: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except json.JSONDecodeError as exc:
        sys.stderr.write(f"error: config is not valid JSON: {exc}\n")
        return 1
    finally:
        if saved_cap is None:
            os.environ.pop("PACHINKO_COST_CAP", None)
        else:
            os.environ["PACHINKO_COST_CAP"] = saved_cap


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
