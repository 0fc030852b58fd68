"""Command line front end.

Subcommands: spectrum, transport, pst-check, cat, tmsv, evanescent,
synth.  Every run is fully determined by its flags (plus an optional
key=value config file), and numeric output is serialized with 17
significant digits so identical runs produce identical bytes.

Mode labels on the command line are 1-based; the library uses 0-based
indices internally.  Distance and angle flags accept symbolic multiples
of pi such as ``pi/2`` or ``3pi/2``.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from .fock import cat_fidelity_scan, cat_normalization
from .gaussian import (
    TmsvParams,
    evolve_covariance,
    squeezing_factor,
    symplectic_from_propagator,
    tmsv_covariance,
)
from .lattice import (
    NetworkSpec,
    custom_profile,
    evanescent_profile,
    uniform_profile,
)
from .propagation import (
    check_pst,
    offset_amplitudes,
    propagator,
    transfer_scan,
)
from .spectral import degeneracy_histogram, dispersion
from .synthesis import (
    SynthesisProblem,
    physical_parameters,
    solve_weights,
    verify_synthesis,
)

OUTDIR_ENV = "PSTNET_OUTDIR"

_PI_PATTERN = re.compile(r"^([+-]?[\d.]*)\s*pi\s*(?:/\s*([\d.]+))?$", re.IGNORECASE)


def parse_length(text: str) -> float:
    """Parse a float, allowing symbolic pi multiples like '3pi/2'."""
    s = str(text).strip()
    m = _PI_PATTERN.match(s)
    try:
        if m:
            coef = m.group(1)
            if coef in ("", "+"):
                num = 1.0
            elif coef == "-":
                num = -1.0
            else:
                num = float(coef)
            div = float(m.group(2)) if m.group(2) else 1.0
            return num * math.pi / div
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}") from None


def parse_profile(text: str):
    """Parse 'uniform:C=1,R=3', 'evanescent:mu=0.5,R=6' or 'custom:0.5,0.25'."""
    kind, sep, rest = str(text).partition(":")
    kind = kind.strip().lower()
    if not sep or not rest.strip():
        raise argparse.ArgumentTypeError(
            f"profile {text!r} must look like kind:parameters"
        )
    try:
        if kind == "custom":
            return custom_profile([float(v) for v in rest.split(",")])
        params = {}
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"expected key=value, got {item!r}")
            params[key.strip().lower()] = value.strip()
        if kind == "uniform":
            return uniform_profile(float(params.pop("c")), int(params.pop("r")))
        if kind == "evanescent":
            return evanescent_profile(float(params.pop("mu")), int(params.pop("r")))
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad profile {text!r}: {exc}") from None
    raise argparse.ArgumentTypeError(f"unknown profile kind {kind!r}")


def parse_pair(text: str) -> tuple[int, int]:
    parts = str(text).split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"pair {text!r} must be two labels 'a,b'")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"pair {text!r} must be integers") from None


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _json_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{key}": {_json_text(value, indent + 1)}'
            for key, value in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_text(v, indent) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        if math.isnan(obj):
            return "NaN"
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _out_path(args, suffix: str) -> Path:
    outdir = Path(args.outdir or os.environ.get(OUTDIR_ENV, "."))
    outdir.mkdir(parents=True, exist_ok=True)
    base = args.output or args.command
    return outdir / f"{base}{suffix}"


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, obj) -> None:
    path.write_text(_json_text(obj) + "\n")


def _wants(args, kind: str) -> bool:
    return getattr(args, "format", "both") in (kind, "both")


def _report_labels(report):
    """Shift a transfer report to the 1-based labels used on the CLI."""
    from dataclasses import replace

    return replace(report, source=report.source + 1, target=report.target + 1)


def _label_to_index(label: int, n: int, name: str) -> int:
    if not 1 <= label <= n:
        raise ValueError(f"{name} label {label} out of range 1..{n}")
    return label - 1


def _cmd_spectrum(args) -> int:
    spec = NetworkSpec(args.n, args.profile)
    spectrum = dispersion(spec)
    written = []
    if _wants(args, "csv"):
        path = _out_path(args, ".csv")
        rows = [(p, _fmt(lam)) for p, lam in enumerate(spectrum.eigenvalues)]
        _write_csv(path, ("p", "lambda_p"), rows)
        written.append(path)
    if _wants(args, "json"):
        hist = degeneracy_histogram(spectrum, args.tol)
        path = _out_path(args, ".json")
        _write_json(path, hist.to_dict())
        written.append(path)
    print("wrote " + " ".join(str(p) for p in written))
    return 0


def _cmd_transport(args) -> int:
    spec = NetworkSpec(args.n, args.profile)
    source = _label_to_index(args.source, args.n, "source")
    if not args.z_max > 0 or not 0 < args.dz <= args.z_max:
        raise ValueError("need z_max > 0 and 0 < dz <= z_max")
    zs = np.arange(0.0, args.z_max + 0.5 * args.dz, args.dz)
    zs = zs[zs <= args.z_max * (1.0 + 1e-12)]
    amps = offset_amplitudes(spec, zs)
    rows = []
    for i, z in enumerate(zs):
        probs = np.abs(amps[i][(np.arange(args.n) - source) % args.n]) ** 2
        rows.extend((_fmt(z), mode + 1, _fmt(p)) for mode, p in enumerate(probs))
    path = _out_path(args, ".csv")
    _write_csv(path, ("z", "mode", "probability"), rows)
    print(f"wrote {path}")
    return 0


def _cmd_pst_check(args) -> int:
    spec = NetworkSpec(args.n, args.profile)
    source = _label_to_index(args.source, args.n, "source")
    report = check_pst(spec, source, tol=args.tol)
    path = _out_path(args, ".json")
    _write_json(path, _report_labels(report).to_dict())
    print(f"wrote {path} (is_pst={str(report.is_pst).lower()})")
    return 0


def _cmd_cat(args) -> int:
    spec = NetworkSpec(args.n, args.profile)
    source = _label_to_index(args.source, args.n, "source")
    if args.target is None:
        target = (source + args.n // 2) % args.n
    else:
        target = _label_to_index(args.target, args.n, "target")
    cat_normalization(args.alpha, args.phi)
    result = cat_fidelity_scan(
        spec, source, target, args.alpha, args.phi, args.z_max, args.dz
    )
    written = []
    if _wants(args, "csv"):
        path = _out_path(args, ".csv")
        rows = [(_fmt(z), _fmt(f)) for z, f in zip(result.zs, result.values)]
        _write_csv(path, ("z", "fidelity"), rows)
        written.append(path)
    if _wants(args, "json"):
        path = _out_path(args, ".json")
        _write_json(
            path,
            {
                "alpha": args.alpha,
                "phi": args.phi,
                "source": source + 1,
                "target": target + 1,
                "max_fidelity": result.max_value,
                "z_at_max": result.z_at_max,
                "z_max": args.z_max,
                "dz": args.dz if args.dz is not None else 0.01 / spec.profile.max_strength,
            },
        )
        written.append(path)
    print("wrote " + " ".join(str(p) for p in written))
    return 0


def _cmd_tmsv(args) -> int:
    spec = NetworkSpec(args.n, args.profile)
    m = _label_to_index(args.pair[0], args.n, "pair")
    n_ = _label_to_index(args.pair[1], args.n, "pair")
    if args.track is None:
        half = args.n // 2
        track = ((m + half) % args.n, (n_ + half) % args.n)
    else:
        track = (
            _label_to_index(args.track[0], args.n, "track"),
            _label_to_index(args.track[1], args.n, "track"),
        )
    initial = tmsv_covariance(TmsvParams(args.w, args.theta, (m, n_)), args.n)
    if not args.z_max > 0 or not 0 < args.dz <= args.z_max:
        raise ValueError("need z_max > 0 and 0 < dz <= z_max")
    zs = np.arange(0.0, args.z_max + 0.5 * args.dz, args.dz)
    zs = zs[zs <= args.z_max * (1.0 + 1e-12)]
    rows = []
    for z in zs:
        evo = symplectic_from_propagator(propagator(spec, float(z)))
        state = evolve_covariance(initial, evo)
        rows.append(
            (
                _fmt(z),
                _fmt(squeezing_factor(state, m, n_, "Q")),
                _fmt(squeezing_factor(state, m, n_, "P")),
                _fmt(squeezing_factor(state, track[0], track[1], "Q")),
                _fmt(squeezing_factor(state, track[0], track[1], "P")),
            )
        )
    in_label = f"{m + 1}{n_ + 1}"
    tr_label = f"{track[0] + 1}{track[1] + 1}"
    header = (
        "z",
        f"S_Q_{in_label}",
        f"S_P_{in_label}",
        f"S_Q_{tr_label}",
        f"S_P_{tr_label}",
    )
    path = _out_path(args, ".csv")
    _write_csv(path, header, rows)
    print(f"wrote {path}")
    return 0


def _cmd_evanescent(args) -> int:
    profile = evanescent_profile(args.mu, args.r)
    spec = NetworkSpec(args.n, profile)
    source = _label_to_index(args.source, args.n, "source")
    if args.n % 2:
        raise ValueError("antipodal transfer needs an even number of modes")
    target = (source + args.n // 2) % args.n
    result = transfer_scan(spec, source, target, args.z_max, args.dz)
    written = []
    if _wants(args, "csv"):
        path = _out_path(args, ".csv")
        rows = [(_fmt(z), _fmt(v)) for z, v in zip(result.zs, result.values)]
        _write_csv(path, ("z", "probability"), rows)
        written.append(path)
    if _wants(args, "json"):
        path = _out_path(args, ".json")
        _write_json(
            path,
            {
                "n_modes": args.n,
                "mu": args.mu,
                "r": args.r,
                "source": source + 1,
                "target": target + 1,
                "max_transfer": result.max_value,
                "z_at_max": result.z_at_max,
                "z_max": args.z_max,
                "dz": args.dz if args.dz is not None else 0.01 / profile.max_strength,
            },
        )
        written.append(path)
    print("wrote " + " ".join(str(p) for p in written))
    return 0


def _cmd_synth(args) -> int:
    problem = SynthesisProblem(args.n, args.m, args.c, args.tolerance)
    solution = physical_parameters(
        solve_weights(problem), args.delta_scale, args.dispersive_min
    )
    report = verify_synthesis(solution, args.n)
    path = _out_path(args, ".json")
    _write_json(
        path,
        {
            "n_modes": args.n,
            "n_aux_pairs": args.m,
            "strength": args.c,
            "solution": solution.to_dict(),
            "pst_report": _report_labels(report).to_dict(),
        },
    )
    print(f"wrote {path} (is_pst={str(report.is_pst).lower()})")
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with flag defaults")
    common.add_argument("--output", help="output base name (default: subcommand)")
    common.add_argument(
        "--outdir", help=f"output directory (default: ${OUTDIR_ENV} or '.')"
    )

    network = argparse.ArgumentParser(add_help=False)
    network.add_argument("--n", type=int, required=True, help="number of waveguides")
    network.add_argument(
        "--profile",
        type=parse_profile,
        required=True,
        help="uniform:C=..,R=.. | evanescent:mu=..,R=.. | custom:c1,c2,...",
    )

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json", "both"), default="both")

    parser = argparse.ArgumentParser(
        prog="pstnet",
        description="State transfer experiments on circulant waveguide networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {}

    p = sub.add_parser(
        "spectrum", parents=[common, network, fmt], help="Fourier-mode eigenvalues"
    )
    p.add_argument("--tol", type=float, default=None, help="degeneracy bin tolerance")
    p.set_defaults(func=_cmd_spectrum)
    commands["spectrum"] = p

    p = sub.add_parser(
        "transport", parents=[common, network], help="single-photon occupation trace"
    )
    p.add_argument("--source", type=int, required=True, help="input mode label (1-based)")
    p.add_argument("--z-max", type=parse_length, required=True)
    p.add_argument("--dz", type=parse_length, required=True)
    p.set_defaults(func=_cmd_transport)
    commands["transport"] = p

    p = sub.add_parser(
        "pst-check", parents=[common, network], help="perfect-transfer report"
    )
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_pst_check)
    commands["pst-check"] = p

    p = sub.add_parser(
        "cat", parents=[common, network, fmt], help="cat-state fidelity scan"
    )
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, default=None, help="default: antipodal mode")
    p.add_argument("--alpha", type=parse_length, required=True)
    p.add_argument("--phi", type=parse_length, required=True, help="radians; accepts pi/2")
    p.add_argument("--z-max", type=parse_length, required=True)
    p.add_argument("--dz", type=parse_length, default=None)
    p.set_defaults(func=_cmd_cat)
    commands["cat"] = p

    p = sub.add_parser(
        "tmsv", parents=[common, network], help="two-mode squeezing transport"
    )
    p.add_argument("--w", type=float, required=True, help="squeezing strength")
    p.add_argument("--theta", type=parse_length, default=0.0)
    p.add_argument("--pair", type=parse_pair, required=True, help="input pair 'a,b'")
    p.add_argument("--track", type=parse_pair, default=None, help="default: antipodal pair")
    p.add_argument("--z-max", type=parse_length, required=True)
    p.add_argument("--dz", type=parse_length, required=True)
    p.set_defaults(func=_cmd_tmsv)
    commands["tmsv"] = p

    p = sub.add_parser(
        "evanescent",
        parents=[common, fmt],
        help="transfer degradation under decaying couplings",
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--r", type=int, required=True, help="interaction range")
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--z-max", type=parse_length, default=500.0)
    p.add_argument("--dz", type=parse_length, default=None)
    p.set_defaults(func=_cmd_evanescent)
    commands["evanescent"] = p

    p = sub.add_parser(
        "synth", parents=[common], help="auxiliary-mode coupling synthesis"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="auxiliary mode pairs")
    p.add_argument("--c", type=float, required=True, help="target coupling strength")
    p.add_argument("--delta-scale", type=float, default=200.0)
    p.add_argument("--dispersive-min", type=float, default=10.0)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=_cmd_synth)
    commands["synth"] = p

    return parser, commands


def _read_config(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(subparser, parser, path: str) -> None:
    try:
        values = _read_config(path)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except ValueError as exc:
        parser.error(str(exc))
    for action in subparser._actions:
        if action.dest in values:
            raw = values.pop(action.dest)
            try:
                converted = action.type(raw) if action.type else raw
            except (argparse.ArgumentTypeError, ValueError) as exc:
                parser.error(f"config value for {action.dest!r}: {exc}")
            subparser.set_defaults(**{action.dest: converted})
            if action.required:
                action.required = False
    if values:
        parser.error(f"unknown config keys: {', '.join(sorted(values))}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    parser, commands = build_parser()
    if known.config:
        command = next((tok for tok in rest if not tok.startswith("-")), None)
        if command not in commands:
            parser.error("--config requires a subcommand")
        _apply_config(commands[command], parser, known.config)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"pstnet: error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())
