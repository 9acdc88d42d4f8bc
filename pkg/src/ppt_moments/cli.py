"""Command-line front end: ``check``, ``sweep`` and ``certify``.

Exit codes: 0 all bounds satisfied, 3 some bound violated (entanglement
detected), 1 input error, 2 threshold not bracketed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .detectors import DETECTORS, TWO_QUBIT_DETECTORS, run_detector, threshold_bisect
from .errors import NotBracketed, PPTMomentsError
from .linalg import DEFAULT_TOL
from .pauli import OrthonormalTriad, standard_triads
from .pt import Bipartition, all_bipartitions
from .states import SWEEPABLE, StateSpecError, state_from_spec

log = logging.getLogger("ppt_moments")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_BRACKETED = 2
EXIT_VIOLATED = 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    state: dict
    detectors: list
    bipartitions: list = field(default_factory=list)
    triads: object = "standard"
    out: str | None = None
    fmt: str = "json"
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    explicit_detectors: bool = False


def _load_json_arg(value: str, what: str):
    text = value
    if not value.lstrip().startswith(("{", "[")):
        path = Path(value)
        if not path.exists():
            raise InputError(f"{what}: no such file {value!r}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON ({exc})") from None


def _parse_triads(value: str, n: int):
    if value == "standard":
        return standard_triads(n)
    raw = _load_json_arg(value, "triads")
    if isinstance(raw, dict):
        raw = [raw] * n
    if not isinstance(raw, list) or len(raw) != n:
        raise InputError(f"triads: expected {n} frames, got {raw!r:.80}")
    try:
        return tuple(OrthonormalTriad(f["k"], f["l"], f["m"]) for f in raw)
    except (KeyError, TypeError) as exc:
        raise InputError(f"triads: each frame needs k, l, m vectors ({exc})") from None
    except PPTMomentsError as exc:
        raise InputError(f"triads: {exc}") from None


def _parse_bipartitions(values, n: int) -> list:
    if not values:
        return [Bipartition.first(n)]
    cuts = []
    for value in values:
        for part in value.split(";"):
            part = part.strip()
            if part == "all":
                cuts.extend(all_bipartitions(n))
                continue
            try:
                cuts.append(Bipartition(n, tuple(int(q) for q in part.split(","))))
            except (ValueError, PPTMomentsError) as exc:
                raise InputError(f"bipartition {part!r}: {exc}") from None
    unique = []
    for b in cuts:
        if b not in unique:
            unique.append(b)
    return unique


def _parse_detectors(value: str | None, n: int) -> tuple:
    if value is None:
        names = [d for d in DETECTORS if n == 2 or d not in TWO_QUBIT_DETECTORS]
        return names, False
    names = [d.strip() for d in value.split(",") if d.strip()]
    for d in names:
        if d not in DETECTORS:
            raise InputError(f"detector {d!r} is not one of {', '.join(DETECTORS)}")
        if d in TWO_QUBIT_DETECTORS and n != 2:
            raise InputError(f"detector {d!r} needs a two-qubit state, the state has {n} qubits")
    return names, True


def _state_spec(args) -> dict:
    spec = _load_json_arg(args.state, "state")
    if not isinstance(spec, dict):
        raise InputError("state: expected a JSON object")
    if spec.get("family") == "random_separable":
        spec.setdefault("seed", args.seed)
    return spec


def build_config(args) -> tuple:
    spec = _state_spec(args)
    rho = _build_state(spec)
    n = rho.n_qubits
    detectors, explicit = _parse_detectors(args.detector, n)
    cfg = RunConfig(
        state=spec,
        detectors=detectors,
        bipartitions=_parse_bipartitions(args.bipartition, n),
        triads=_parse_triads(args.triads, n),
        out=args.out,
        fmt=args.format,
        seed=args.seed,
        tolerance=args.tol,
        explicit_detectors=explicit,
    )
    return cfg, rho


def _build_state(spec: dict):
    try:
        return state_from_spec(spec)
    except StateSpecError as exc:
        raise InputError(str(exc)) from None


def _certificates(rho, cfg: RunConfig) -> list:
    certs = []
    for name in cfg.detectors:
        for b in cfg.bipartitions:
            certs.append(run_detector(name, rho, b, cfg.triads, cfg.tolerance))
    return certs


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


CHECK_CSV_HEADER = ("detector", "bipartition", "min_eigenvalue", "bound_satisfied", "tolerance", "witness_values")


def cmd_check(args) -> int:
    cfg, rho = build_config(args)
    certs = _certificates(rho, cfg)
    if cfg.fmt == "csv":
        rows = [
            (c.detector, c.bipartition.label(), c.min_eigenvalue, c.bound_satisfied, c.tolerance,
             json.dumps(c.to_dict()["witness_values"]))
            for c in certs
        ]
        text = _csv_text(CHECK_CSV_HEADER, rows)
    else:
        text = json.dumps([c.to_dict() for c in certs], indent=2) + "\n"
    _write(text, cfg.out)
    violated = [c for c in certs if not c.bound_satisfied]
    for c in violated:
        log.info("violated: %s on {%s}, min eigenvalue %.6g", c.detector, c.bipartition.label(), c.min_eigenvalue)
    return EXIT_VIOLATED if violated else EXIT_OK


def _parse_range(value: str, with_step: bool):
    parts = value.split(":")
    expected = 4 if with_step else 3
    if len(parts) != expected:
        shape = "param:lo:hi:step" if with_step else "param:lo:hi"
        raise InputError(f"expected {shape}, got {value!r}")
    name = parts[0]
    try:
        nums = [float(p) for p in parts[1:]]
    except ValueError:
        raise InputError(f"non-numeric bound in {value!r}") from None
    return name, nums


def grid_values(lo: float, hi: float, step: float) -> list:
    """Inclusive grid ``lo + i * step`` without accumulated rounding drift."""
    if step <= 0 or hi < lo:
        raise InputError(f"grid needs step > 0 and lo <= hi, got {lo}:{hi}:{step}")
    count = int(round((hi - lo) / step))
    values = [lo + i * step for i in range(count + 1)]
    return [round(v, 12) for v in values if v <= hi + 1e-12]


def _family_param(spec: dict, name: str):
    family = spec.get("family")
    allowed = SWEEPABLE.get(family, ())
    if name not in allowed:
        raise InputError(f"unknown parameter {name!r} for family {family!r}; sweepable: {list(allowed)}")


def _sweep_header(param: str, cfg: RunConfig) -> list:
    header = [param]
    for name in cfg.detectors:
        for b in cfg.bipartitions:
            tag = f"{name}@{b.label().replace(',', '+')}"
            header += [f"{tag}_min_eigenvalue", f"{tag}_satisfied"]
    return header


def cmd_sweep(args) -> int:
    if not args.grid:
        raise InputError("sweep needs --grid param:lo:hi:step")
    cfg, _ = build_config(args)
    param, (lo, hi, step) = _parse_range(args.grid, with_step=True)
    _family_param(cfg.state, param)
    values = grid_values(lo, hi, step)

    def evaluate(value):
        spec = dict(cfg.state, **{param: int(value) if param == "seed" else value})
        rho = _build_state(spec)
        row = [value]
        for cert in _certificates(rho, cfg):
            row += [cert.min_eigenvalue, cert.bound_satisfied]
        return row

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(evaluate, values))
    header = _sweep_header(param, cfg)
    if cfg.fmt == "json":
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    else:
        text = _csv_text(header, rows)
    _write(text, cfg.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    if not args.bracket:
        raise InputError("certify needs --bracket param:lo:hi")
    cfg, _ = build_config(args)
    param, (lo, hi) = _parse_range(args.bracket, with_step=False)
    _family_param(cfg.state, param)
    if len(cfg.detectors) != 1 or len(cfg.bipartitions) != 1:
        raise InputError("certify needs exactly one --detector and one --bipartition")
    name, b = cfg.detectors[0], cfg.bipartitions[0]

    def family(value):
        return _build_state(dict(cfg.state, **{param: value}))

    def detector(rho):
        return run_detector(name, rho, b, cfg.triads, cfg.tolerance)

    try:
        result = threshold_bisect(family, detector, lo, hi, args.xtol)
    except NotBracketed as exc:
        print(f"not bracketed: {exc}", file=sys.stderr)
        return EXIT_NOT_BRACKETED
    report = {
        "parameter": param,
        "detector": name,
        "bipartition": b.to_dict(),
        "lo": lo,
        "hi": hi,
        "threshold": result.threshold,
        "iterations": result.iterations,
        "bracket": list(result.bracket),
        "bracket_width": result.width,
        "tolerance": cfg.tolerance,
    }
    _write(json.dumps(report, indent=2) + "\n", cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppt-moments", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--state", required=True, help="state JSON file or inline JSON object")
        p.add_argument("--detector", help=f"comma list from {','.join(DETECTORS)}")
        p.add_argument(
            "--bipartition",
            action="append",
            help="transposed qubits as a comma list (1-based); repeat or separate with ';'; 'all' for every cut",
        )
        p.add_argument("--triads", default="standard", help="'standard' or a JSON file/list of {k,l,m} frames")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check", help="run detectors on one state")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="tabulate detector output over a parameter grid")
    common(p)
    p.add_argument("--grid", help="param:lo:hi:step")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("certify", help="bisect the parameter where a detector flips")
    common(p)
    p.add_argument("--bracket", help="param:lo:hi")
    p.add_argument("--xtol", type=float, default=1e-12, help="final bracket width")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (InputError, PPTMomentsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
