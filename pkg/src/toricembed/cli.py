"""Command line front end.

Exit codes: 0 success (and Embeds), 2 bad input, 3 NotEmbeds, 4 OutOfScope.
Output is assembled in memory and written only once the command succeeded,
so a failing run never leaves partial output behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import billiard, capacity, embed, products, region
from .errors import DomainError, QuadratureError, ToricEmbedError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_EMBEDS = 3
EXIT_OUT_OF_SCOPE = 4

VERDICT_EXIT = {
    embed.Verdict.EMBEDS: EXIT_OK,
    embed.Verdict.NOT_EMBEDS: EXIT_NOT_EMBEDS,
    embed.Verdict.OUT_OF_SCOPE: EXIT_OUT_OF_SCOPE,
}


class InputError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    format: str = "json"
    out: str | None = None
    tol: float | None = None
    grid: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise InputError(f"--tol must be positive, got {self.tol}")
        if self.grid is not None and self.grid < 1:
            raise InputError(f"--grid must be positive, got {self.grid}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return "inf" if math.isinf(v) else f"{v:.17g}"
    return str(v)


def _exp(p: float):
    return "inf" if math.isinf(p) else p


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _load(path) -> region.RegionSpec:
    try:
        return region.load_region(path)
    except region.RegionError as exc:
        raise InputError(f"bad region file: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read region file: {exc}") from exc


# --------------------------------------------------------------------------
# commands: each returns (text, exit_code)
# --------------------------------------------------------------------------


def cmd_capacity(args, cfg: CliConfig):
    reg = _load(args.region)
    try:
        rep = capacity.capacities(reg, numeric=args.numeric, grid_size=cfg.grid)
    except capacity.CapacityDomainError as exc:
        raise InputError(str(exc)) from exc
    doc = rep.to_json()
    if cfg.format == "json":
        return _dump_json(doc), EXIT_OK
    if cfg.format == "csv":
        keys = sorted(doc)
        return _dump_csv(keys, [[doc[k] for k in keys]]), EXIT_OK
    text = (
        f"c1         = {_fmt(rep.c1)}  ({rep.method.value}, error <= {rep.c1_error:.3g})\n"
        f"c_infinity = {_fmt(rep.c_infinity)}  ({rep.c_infinity_method.value}, error <= {rep.c_infinity_error:.3g})\n"
    )
    return text, EXIT_OK


def cmd_embed(args, cfg: CliConfig):
    a, b = _load(args.source), _load(args.target)
    try:
        v = embed.decide_embedding(a, b, tol=cfg.tol or 1e-6, grid_size=cfg.grid)
    except region.RegionError as exc:
        raise InputError(str(exc)) from exc
    doc = v.to_json()
    code = VERDICT_EXIT[v.verdict]
    if cfg.format == "json":
        return _dump_json(doc), code
    if cfg.format == "csv":
        return _dump_csv(["verdict", "case", "certificate"], [[v.verdict.value, v.case_used, doc["certificate"]["type"]]]), code
    lines = [f"verdict: {v.verdict.value}", f"case:    {v.case_used}", f"certificate: {doc['certificate']['type']}"]
    for note in doc["certificate"].get("notes", []):
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n", code


def cmd_rigidity(args, cfg: CliConfig):
    rows = [(_exp(p), _exp(q), _exp(r), _exp(s), c.value) for p, q, r, s, c in products.rigidity_table()]
    if cfg.format == "json":
        doc = [dict(zip(("p", "q", "r", "s", "class"), row)) for row in rows]
        return _dump_json(doc), EXIT_OK
    if cfg.format == "csv":
        return _dump_csv(["p", "q", "r", "s", "class"], rows), EXIT_OK
    text = "".join(f"B2_{p} x B2_{q} -> B2_{r} x B2_{s}: {c}\n" for p, q, r, s, c in rows)
    return text, EXIT_OK


def _action_rows(epsilons, cs, abs_tol):
    rows, problems = [], []
    quad = billiard.QuadratureConfig(abs_tol=abs_tol) if abs_tol else billiard.QuadratureConfig()
    for eps in epsilons:
        for c in cs:
            try:
                if eps == 0:
                    value, err = billiard.action_limit(c), 0.0
                else:
                    value, err = billiard.action(billiard.BilliardParams(eps, quad), c)
            except (DomainError, QuadratureError) as exc:
                rows.append((eps, c, math.nan, math.nan))
                problems.append(f"epsilon={_fmt(eps)} c={_fmt(c)}: {exc}")
            else:
                rows.append((eps, c, value, err))
    return rows, problems


def cmd_action(args, cfg: CliConfig):
    if any(e < 0 for e in args.epsilon):
        raise InputError("epsilon values must be nonnegative")
    cs = list(args.c) if args.c else list(np.linspace(args.c_range[0], args.c_range[1], int(args.c_range[2])))
    rows, problems = _action_rows(args.epsilon, [float(c) for c in cs], cfg.tol)
    for msg in problems:
        print(f"warning: {msg}", file=sys.stderr)
    if cfg.format == "json":
        doc = [
            {"epsilon": e, "c": c, "I": None if math.isnan(v) else v, "err": None if math.isnan(er) else er}
            for e, c, v, er in rows
        ]
        return _dump_json(doc), EXIT_OK
    if cfg.format == "csv":
        return _dump_csv(["epsilon", "c", "I", "err"], rows), EXIT_OK
    text = "".join(f"eps={_fmt(e):>24} c={_fmt(c):>24} I={_fmt(v):>24} err={er:.2g}\n" for e, c, v, er in rows)
    return text, EXIT_OK


def cmd_bidisk(args, cfg: CliConfig):
    alpha, x, y = products.bidisk_curve(args.num)
    if cfg.format == "json":
        doc = {
            "region": region.region_to_json(products.bidisk_region()),
            "curve": [{"alpha": float(a), "x": float(u), "y": float(v)} for a, u, v in zip(alpha, x, y)],
        }
        return _dump_json(doc), EXIT_OK
    if cfg.format == "csv":
        return _dump_csv(["alpha", "x", "y"], [(float(a), float(u), float(v)) for a, u, v in zip(alpha, x, y)]), EXIT_OK
    text = "".join(f"{a:.6f} {u:.6f} {v:.6f}\n" for a, u, v in zip(alpha, x, y))
    return text, EXIT_OK


def cmd_validate(args, cfg: CliConfig):
    reg = _load(args.region)
    rep = region.validate_flags(reg, sample_budget=args.samples, seed=cfg.seed)
    doc = {"region": region.region_to_json(reg), "report": rep.to_json()}
    code = EXIT_OK if rep.ok else EXIT_INPUT
    if cfg.format == "json":
        return _dump_json(doc), code
    rows = [(c.flag, c.claimed, c.passed, c.samples) for c in rep.checks]
    if cfg.format == "csv":
        return _dump_csv(["flag", "claimed", "passed", "samples"], rows), code
    text = "".join(f"{f:<10} claimed={cl!s:<5} passed={p!s:<5} samples={n}\n" for f, cl, p, n in rows)
    return text, code


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--tol", type=float, help="inclusion tolerance (embed) or quadrature abs_tol (action)")
    common.add_argument("--grid", type=int, help="direction grid size for gauge minimisation")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling validators")

    parser = argparse.ArgumentParser(prog="toricembed", description="Capacities and embeddings of toric domains.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", parents=[common], help="c_1 and c_inf of a region")
    p.add_argument("region")
    p.add_argument("--numeric", action="store_true", help="skip closed forms, use the generic gauge path")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("embed", parents=[common], help="decide X_source -> X_target")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("rigidity", parents=[common], help="the 81-row rigidity table")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("action", parents=[common], help="tabulate I_eps(c); epsilon 0 gives the limit")
    p.add_argument("--epsilon", type=float, nargs="+", default=[1.0, 0.1, 0.01, 0.001, 0.0])
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c", type=float, nargs="+")
    g.add_argument("--c-range", type=float, nargs=3, metavar=("LO", "HI", "NUM"), default=(0.5, 10.0, 20))
    p.set_defaults(func=cmd_action)

    p = sub.add_parser("bidisk", parents=[common], help="boundary curve of the bidisk region")
    p.add_argument("--num", type=int, default=257)
    p.set_defaults(func=cmd_bidisk)

    p = sub.add_parser("validate", parents=[common], help="check the claimed flags of a region")
    p.add_argument("region")
    p.add_argument("--samples", type=int, default=2000)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(args.format, args.out, args.tol, args.grid, args.seed)
        text, code = args.func(args, cfg)
    except (InputError, ToricEmbedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
