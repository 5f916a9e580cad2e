"""Command line: ``iswhm solve|trace|spectrum|gates verify``.

Exit codes: 0 decided, 2 inconclusive, 1 error (and 1 when a gate fails).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import gates as gates_mod
from .decide import DecisionThresholds, Status, Verdict, verdict_from_trace
from .evolve import EvolutionParams, run_evolution
from .operators import DEFAULT_MAX_DIM, HI_FORMS, TruncationSpec, dump_operators
from .poly import parse, print_canonical
from .spectra import spectral_flow
from .svgplot import line_chart

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2

# Values a config file may set, with their converters.
CONFIG_KEYS = {
    "equation": str, "P": int, "T": float, "dt": float, "hi_form": str,
    "e0_stride": int, "record_stride": int, "out": str, "svg": bool,
    "dump_operators": str, "max_dim": int, "spectrum": str, "midpoint": bool,
    "dominance": float, "energy": float,
}


def read_config(path) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment, quotes around values are stripped."""
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        value = value.strip("\"'")
        conv = CONFIG_KEYS[key]
        if conv is bool:
            cfg[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            cfg[key] = conv(value)
    return cfg


def _add_run_flags(sp):
    sp.add_argument("-e", "--equation", help="polynomial D, e.g. \"(x+1)*(y+2)-12\"")
    sp.add_argument("-P", type=int, help="levels kept per variable")
    sp.add_argument("-T", type=float, help="total adiabatic time")
    sp.add_argument("--dt", type=float, help="time step (default 1)")
    sp.add_argument("--hi-form", dest="hi_form", choices=HI_FORMS)
    sp.add_argument("--e0-stride", dest="e0_stride", type=int)
    sp.add_argument("--record-stride", dest="record_stride", type=int)
    sp.add_argument("--midpoint", action="store_true", default=None,
                    help="evaluate s = t/T at step midpoints")
    sp.add_argument("-o", "--out", help="output file (default stdout)")
    sp.add_argument("--svg", action="store_true", default=None, help="also write SVG charts next to --out")
    sp.add_argument("--spectrum", help="also write the (t, s, e0, gap) flow CSV here")
    sp.add_argument("--dump-operators", dest="dump_operators", metavar="PATH",
                    help="write M, H_D, H_I as JSON")
    sp.add_argument("--max-dim", dest="max_dim", type=int)
    sp.add_argument("--dominance", type=float, help="dominant-probability threshold (default 0.5)")
    sp.add_argument("--energy", type=float, help="E0(T) threshold for NoSolution (default 0.5)")
    sp.add_argument("--config", help="key = value file; command-line flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iswhm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("solve", "decide solvability in positive squares; prints verdict JSON"),
                        ("trace", "write the evolution trace CSV (and optional SVG charts)"),
                        ("spectrum", "write the ground-energy flow CSV")]:
        _add_run_flags(sub.add_parser(name, help=help_))
    g = sub.add_parser("gates", help="universality gate constructions")
    gsub = g.add_subparsers(dest="gates_command", required=True)
    v = gsub.add_parser("verify", help="check the builtin phase, CNOT and Hadamard gates")
    v.add_argument("--json", action="store_true", help="emit a JSON array instead of a table")
    v.add_argument("--max-level", dest="max_level", type=int, default=gates_mod.DEFAULT_MAX_LEVEL)
    return parser


def resolve_config(args) -> dict:
    cfg = {"dt": 1.0, "hi_form": "complement_projector", "max_dim": DEFAULT_MAX_DIM,
           "svg": False, "midpoint": False, "dominance": 0.5, "energy": 0.5}
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key in ("equation", "P", "T"):
        if cfg.get(key) is None:
            raise ValueError(f"missing required setting {key!r} (flag or config)")
    for key in ("P", "T", "dt", "max_dim", "e0_stride", "record_stride"):
        if cfg.get(key) is not None and not cfg[key] > 0:
            raise ValueError(f"{key} must be positive, got {cfg[key]}")
    return cfg


def _setup(cfg):
    p = parse(cfg["equation"])
    if p.is_zero():
        return p, None, None
    spec = TruncationSpec(p.nvars, cfg["P"], max_dim=cfg["max_dim"])
    T = cfg["T"]
    params = EvolutionParams(T=int(T) if float(T).is_integer() else T, dt=cfg["dt"],
                             e0_stride=cfg.get("e0_stride"), record_stride=cfg.get("record_stride"),
                             midpoint=cfg["midpoint"])
    if cfg.get("dump_operators"):
        dump_operators(cfg["dump_operators"], p, spec, cfg["hi_form"])
    return p, spec, params


def _write_text(text: str, path, stdout):
    if path:
        Path(path).write_text(text)
    else:
        stdout.write(text)


def spectrum_csv(samples) -> str:
    lines = ["t,s,e0,gap"]
    for smp in samples:
        lines.append(",".join(format(float(v), ".12g") for v in (smp.t, smp.s, smp.e0, smp.gap)))
    return "\n".join(lines) + "\n"


def write_trace_svgs(trace, out: Path):
    stem = out.with_suffix("")
    ts = [r.t for r in trace.rows]
    labels = trace.level_labels()
    probs = {f"|{lab.replace('_', ',')}>": [r.probabilities[i] for r in trace.rows]
             for i, lab in enumerate(labels)}
    exps = {f"<{v}>": [r.expectations[i] for r in trace.rows] for i, v in enumerate(trace.variables)}
    e0_rows = [r for r in trace.rows if r.e0 is not None]
    paths = {
        "probabilities": line_chart(ts, probs, f"P_n(t) for {trace.equation} = 0", ylabel="probability"),
        "expectations": line_chart(ts, exps, "expected squares <n^2(t)>", ylabel="<n^2>"),
        "e0": line_chart([r.t for r in e0_rows], {"E0": [r.e0 for r in e0_rows]},
                         "ground energy flow E0(t)", ylabel="E0"),
    }
    written = []
    for name, svg in paths.items():
        path = Path(f"{stem}_{name}.svg")
        path.write_text(svg)
        written.append(path)
    return written


def cmd_solve(cfg, stdout=sys.stdout) -> int:
    p, spec, params = _setup(cfg)
    thresholds = DecisionThresholds(cfg["dominance"], cfg["energy"])
    if p.is_zero():
        verdict = Verdict(Status.DEGENERATE_ZERO, equation="0", P=cfg["P"], T=cfg["T"], dt=cfg["dt"])
    else:
        trace = run_evolution(p, spec, params, hi_form=cfg["hi_form"])
        verdict = verdict_from_trace(p, trace, thresholds)
    stdout.write(verdict.to_json(indent=2) + "\n")
    return EXIT_INCONCLUSIVE if verdict.status is Status.INCONCLUSIVE else EXIT_OK


def cmd_trace(cfg, stdout=sys.stdout) -> int:
    p, spec, params = _setup(cfg)
    if p.is_zero():
        raise ValueError("equation is identically zero; nothing to evolve")
    if cfg["svg"] and not cfg.get("out"):
        raise ValueError("--svg needs -o/--out to name the chart files")
    trace = run_evolution(p, spec, params, hi_form=cfg["hi_form"])
    _write_text(trace.to_csv(), cfg.get("out"), stdout)
    if cfg["svg"]:
        write_trace_svgs(trace, Path(cfg["out"]))
    if cfg.get("spectrum"):
        Path(cfg["spectrum"]).write_text(spectrum_csv(spectral_flow(p, spec, params, cfg["hi_form"])))
    return EXIT_OK


def cmd_spectrum(cfg, stdout=sys.stdout) -> int:
    p, spec, params = _setup(cfg)
    if p.is_zero():
        raise ValueError("equation is identically zero; nothing to evolve")
    samples = spectral_flow(p, spec, params, cfg["hi_form"])
    text = spectrum_csv(samples)
    _write_text(text, cfg.get("out") or cfg.get("spectrum"), stdout)
    if cfg["svg"]:
        if not cfg.get("out"):
            raise ValueError("--svg needs -o/--out to name the chart file")
        stem = Path(cfg["out"]).with_suffix("")
        Path(f"{stem}_e0.svg").write_text(line_chart(
            [s.t for s in samples], {"E0": [s.e0 for s in samples], "gap": [s.gap for s in samples]},
            f"spectral flow for {print_canonical(p)} = 0"))
    return EXIT_OK


def cmd_gates_verify(as_json: bool = False, constructions=None, max_level=None, stdout=sys.stdout) -> int:
    """Verify gate constructions (the builtins by default); 1 if any fails."""
    if constructions is None:
        constructions = gates_mod.builtin_gates()
    rows = []
    for gc in constructions:
        if max_level is not None and max_level != gc.max_level:
            gc = gates_mod.GateConstruction(gc.name, gc.target, gc.coding, gc.phi, max_level)
        f, ok = gates_mod.verify(gc)
        rows.append({"gate": gc.name, "phi": gc.phi, "fidelity": f, "pass": ok})
    if as_json:
        stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        w = csv.writer(stdout, delimiter="\t", lineterminator="\n")
        w.writerow(["gate", "phi", "fidelity", "pass"])
        for r in rows:
            w.writerow([r["gate"], f"{r['phi']:.12g}", f"{r['fidelity']:.15f}", "PASS" if r["pass"] else "FAIL"])
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_ERROR


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gates":
            return cmd_gates_verify(args.json, max_level=args.max_level, stdout=stdout)
        cfg = resolve_config(args)
        handler = {"solve": cmd_solve, "trace": cmd_trace, "spectrum": cmd_spectrum}[args.command]
        return handler(cfg, stdout=stdout)
    except (ValueError, OSError, FloatingPointError, RuntimeError) as exc:
        print(f"iswhm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
