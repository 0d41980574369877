"""Command-line front end.

Exit status: 0 on success, 1 on a domain or validation error (one-line
diagnostic on stderr), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, TextIO

from ._format import approx, exact, show
from .accumulation import build_chain, certificate_failures, chain_rows
from .blowup_chain import chain_multiplicities, factorize
from .germ import GermParams, load_germ
from .intersection import UNDEFINED, intersection_matrix
from .lattice_fan import WeightSequence
from .snp import check_membership, seed
from .volume import lift_to_dimension, volume_via_intersection, volume_z

GERM_ENV = "TORIC_VOLUME_GERM"
COMMANDS = ("intersect", "check-snp", "gen-snp", "volume", "factorize", "chain", "lift")
NEEDS_GERM = {"check-snp", "gen-snp", "volume", "chain"}
CSV_COLUMNS = ("level", "m", "value", "increment")


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    command: str
    germ_path: Optional[str] = None
    weights: Optional[str] = None
    output_format: str = "text"
    decimal: Optional[int] = None
    jobs: int = 1
    options: dict = field(default_factory=dict)


def _emit_json(obj, out: TextIO):
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


def _emit_csv(header, rows, out: TextIO):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _germ(cfg: CommandConfig) -> Optional[GermParams]:
    path = cfg.germ_path or os.environ.get(GERM_ENV)
    if not path:
        if cfg.command in NEEDS_GERM:
            raise UsageError(f"{cfg.command} needs --germ <file> (or ${GERM_ENV})")
        return None
    try:
        return load_germ(path)
    except OSError as exc:
        raise ValueError(f"cannot read germ file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"germ file {path} is not valid JSON: {exc.msg}") from None


def _weights(cfg: CommandConfig, validate: bool = True) -> WeightSequence:
    if cfg.weights is None:
        raise UsageError(f"{cfg.command} needs --weights p1:q1,...,pn:qn")
    return WeightSequence.from_text(cfg.weights, validate=validate)


def _cmd_intersect(cfg, out):
    ws = _weights(cfg)
    m = intersection_matrix(ws, _germ(cfg))
    if cfg.output_format == "json":
        _emit_json({"n": ws.n, "weights": ws.as_lists(), "matrix": m.to_json()}, out)
        return 0
    cells = [[str(e) if e is UNDEFINED else exact(e) for e in row] for row in m.entries]
    if cfg.output_format == "csv":
        _emit_csv(["i"] + [f"C{j}" for j in range(m.size)], [[f"C{i}"] + row for i, row in enumerate(cells)], out)
        return 0
    width = max(len(c) for row in cells for c in row)
    head = " " * 5 + " ".join(f"C{j}".rjust(width) for j in range(m.size))
    out.write(head + "\n")
    for i, row in enumerate(cells):
        out.write(f"C{i}".ljust(5) + " ".join(c.rjust(width) for c in row) + "\n")
    return 0


def _cmd_check_snp(cfg, out, err):
    g = _germ(cfg)
    ws = _weights(cfg, validate=False)
    verdict = check_membership(ws, g)
    if cfg.output_format == "json":
        _emit_json({"weights": ws.as_lists(), **verdict.to_json()}, out)
    else:
        out.write(("member" if verdict.member else "not a member") + "\n")
        for f in verdict.failures:
            out.write(f"  {f}\n")
    if not verdict.member:
        err.write(f"SNP: {verdict.failures[0]}\n")
        return 1
    return 0


def _cmd_gen_snp(cfg, out):
    g = _germ(cfg)
    ws = seed(cfg.options["n"], g, cfg.options.get("p1"))
    if cfg.output_format == "json":
        _emit_json({"weights": ws.as_lists(), "text": ws.to_text()}, out)
    else:
        out.write(ws.to_text() + "\n")
    return 0


def _cmd_volume(cfg, out):
    g = _germ(cfg)
    ws = _weights(cfg)
    report = volume_z(ws, g)
    oracle = volume_via_intersection(ws, g) if cfg.options.get("oracle") else None
    agree = oracle == report.vol_z if oracle is not None else None
    if cfg.output_format == "json":
        data = report.to_json()
        if oracle is not None:
            data["oracle"] = exact(oracle)
            data["agree"] = agree
        if cfg.decimal:
            data["approx"] = {"f_value": approx(report.f_value, cfg.decimal), "vol_z": approx(report.vol_z, cfg.decimal)}
        _emit_json(data, out)
    elif cfg.output_format == "csv":
        header = ["weights", "f_value", "vol_z", "vol_x"] + (["oracle", "agree"] if oracle is not None else [])
        row = [ws.to_text(), exact(report.f_value), exact(report.vol_z), exact(report.vol_x)]
        if oracle is not None:
            row += [exact(oracle), "AGREE" if agree else "DISAGREE"]
        _emit_csv(header, [row], out)
    else:
        d = cfg.decimal
        out.write(f"f={show(report.f_value, d)}\n")
        out.write(f"vol={show(report.vol_z, d)}\n")
        out.write(f"vol_x={show(report.vol_x, d)}\n")
        if oracle is not None:
            out.write(f"oracle={show(oracle, d)}\n")
            out.write(("AGREE" if agree else "DISAGREE") + "\n")
    return 0 if agree in (None, True) else 1


def _cmd_factorize(cfg, out):
    ws = _weights(cfg)
    steps = factorize(ws)
    mults = chain_multiplicities(ws)
    if cfg.output_format == "json":
        _emit_json({"steps": [s.to_json() for s in steps], "multiplicities": mults}, out)
        return 0
    if cfg.output_format == "csv":
        rows = [[s.index, s.r, s.a, exact(s.weights[0]), exact(s.weights[1]), s.c, mults[s.index - 1]] for s in steps]
        _emit_csv(["step", "r", "a", "w1", "w2", "c", "mult"], rows, out)
        return 0
    for s in steps:
        w1, w2 = (exact(w) for w in s.weights)
        out.write(f"step {s.index}: {s.singularity()}, weights ({w1}, {w2}), mult {mults[s.index - 1]}\n")
    out.write("mult chain: " + ", ".join(map(str, mults)) + "\n")
    return 0


def _cmd_chain(cfg, out, err):
    g = _germ(cfg)
    n, samples = cfg.options["n"], cfg.options["samples"]
    as_volumes = cfg.options.get("volumes", False)
    cert = build_chain(n, g)
    failures = certificate_failures(cert, max(samples, 2))
    rows = chain_rows(cert, samples, as_volumes, cfg.jobs)
    header = list(CSV_COLUMNS)
    table = [[lvl, m, exact(v), exact(inc)] for lvl, m, v, inc in rows]
    if cfg.decimal:
        header.append("approx")
        for row, (_, _, v, _) in zip(table, rows):
            row.append(approx(v, cfg.decimal))
    if cfg.options.get("csv"):
        with open(cfg.options["csv"], "w", newline="") as fh:
            _emit_csv(header, table, fh)
    if cfg.options.get("cert_out"):
        with open(cfg.options["cert_out"], "w") as fh:
            _emit_json(cert.to_json(), fh)
    if cfg.output_format == "json":
        _emit_json({
            "certificate": cert.to_json(),
            "verified": not failures,
            "value_kind": "vol" if as_volumes else "f_value",
            "rows": [dict(zip(header, row)) for row in table],
        }, out)
    elif cfg.output_format == "csv":
        _emit_csv(header, table, out)
    else:
        out.write(f"certificate: {n} levels, p = {[c.varying_p for c in reversed(cert.levels())]}, "
                  f"{'VERIFIED' if not failures else 'FAILED'}\n")
        for c in reversed(cert.levels()):
            out.write(f"level {c.level}: m >= {c.m_start} coprime to {c.m_coprime_to}, limit {exact(c.limit_value)}\n")
        widths = [max(len(str(x)) for x in col) for col in zip(header, *table)]
        for row in [header] + table:
            out.write("  ".join(str(x).rjust(w) for x, w in zip(row, widths)) + "\n")
    if failures:
        err.write(f"certificate: {failures[0]}\n")
        return 1
    return 0


def _cmd_lift(cfg, out):
    d, v = cfg.options["d"], Fraction(cfg.options["v"])
    lifted = lift_to_dimension(d, v)
    if cfg.output_format == "json":
        _emit_json({"d": d, "v": exact(v), "lifted": exact(lifted)}, out)
    elif cfg.output_format == "csv":
        _emit_csv(["d", "v", "lifted"], [[d, exact(v), exact(lifted)]], out)
    else:
        out.write(f"vol={show(lifted, cfg.decimal)}\n")
    return 0


def run(cfg: CommandConfig, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command == "intersect":
            return _cmd_intersect(cfg, out)
        if cfg.command == "check-snp":
            return _cmd_check_snp(cfg, out, err)
        if cfg.command == "gen-snp":
            return _cmd_gen_snp(cfg, out)
        if cfg.command == "volume":
            return _cmd_volume(cfg, out)
        if cfg.command == "factorize":
            return _cmd_factorize(cfg, out)
        if cfg.command == "chain":
            return _cmd_chain(cfg, out, err)
        if cfg.command == "lift":
            return _cmd_lift(cfg, out)
        raise UsageError(f"unknown command {cfg.command!r}")
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--decimal", type=_positive_int, nargs="?", const=12, default=None, metavar="DIGITS",
                        help="append a decimal approximation (default 12 significant digits)")
    common.add_argument("--jobs", type=_positive_int, default=1)

    parser = argparse.ArgumentParser(prog="toric-volume", description="Exact toric volume calculus for weighted blow-ups of a surface germ.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("intersect", parents=[common], help="intersection matrix of C_0..C_{n+1}")
    p.add_argument("--weights", required=True)
    p.add_argument("--germ")

    p = sub.add_parser("check-snp", parents=[common], help="admissibility verdict for a weight tuple")
    p.add_argument("--weights", required=True)
    p.add_argument("--germ")

    p = sub.add_parser("gen-snp", parents=[common], help="canonical admissible tuple")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--germ")
    p.add_argument("--p1", type=int)

    p = sub.add_parser("volume", parents=[common], help="f_n and vol(Z, K_Z+B_Z)")
    p.add_argument("--weights", required=True)
    p.add_argument("--germ")
    p.add_argument("--oracle", action="store_true", help="also evaluate the intersection-matrix route")

    p = sub.add_parser("factorize", parents=[common], help="weighted blow-up factorization")
    p.add_argument("--weights", required=True)

    p = sub.add_parser("chain", parents=[common], help="nested accumulation certificate and sampled values")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--germ")
    p.add_argument("--samples", type=_positive_int, default=5)
    p.add_argument("--volumes", action="store_true", help="report vol_x - f instead of f")
    p.add_argument("--csv", help="also write the table to this path")
    p.add_argument("--cert-out", help="write the certificate JSON to this path")

    p = sub.add_parser("lift", parents=[common], help="volume of the product with a degree-(d+1) hypersurface")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--v", required=True, help="exact rational, e.g. 25/28")
    return parser


def parse_config(argv=None) -> CommandConfig:
    ns = vars(build_parser().parse_args(argv))
    base = {k: ns.pop(k) for k in ("command", "output_format", "decimal", "jobs")}
    return CommandConfig(germ_path=ns.pop("germ", None), weights=ns.pop("weights", None), options=ns, **base)


def main(argv=None) -> int:
    cfg = parse_config(argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
