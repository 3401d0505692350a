"""Command-line front end: ``rmtenergy {closed-form, quadrature-check, identities, mc}``.

Exit codes: 0 success, 1 identity failure, 2 usage error, 3 numerical failure.
"""

import argparse
import csv
from dataclasses import dataclass, field, fields
import io
import json
import sys

from . import closedform, density, identities, logenergy
from .errors import DomainError, NumericalError
from .rmt_mc.entries import EntryDistribution
from .rmt_mc.estimator import DEFAULT_BLOCK_SIZE, DEFAULT_COLLISION_EPS, estimate_mean_energy
from .rmt_mc.samplers import (
    BETA_HERMITE, GINIBRE_EXACT, GUE_EXACT, IID, LUE_EXACT, WIGNER, WISHART, EnsembleSpec,
)

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

MC_COLUMNS = ("model", "dist", "n", "estimate", "stderr", "rejected", "moment", "penalized", "reference")
QUADRATURE_TOL = 1e-6
QUADRATURE_N_MAX = 12

_MODELS = {
    "gue": GUE_EXACT, "gue-exact": GUE_EXACT,
    "ginibre": GINIBRE_EXACT, "ginibre-exact": GINIBRE_EXACT,
    "lue": LUE_EXACT, "lue-exact": LUE_EXACT,
    "beta-hermite": BETA_HERMITE, "wigner": WIGNER, "iid": IID, "wishart": WISHART,
}
_DISTS = {
    "gaussian": "gaussian_real", "gaussian-real": "gaussian_real",
    "gaussian-complex": "gaussian_complex", "rademacher": "rademacher",
    "sgg": "sgg", "heavy": "heavy",
}
# models whose law coincides with one of the exactly solvable ensembles
_REFERENCE = {GUE_EXACT: "gue", GINIBRE_EXACT: "ginibre", LUE_EXACT: "lue"}
_GAUSSIAN_TWIN = {WIGNER: "gue", IID: "ginibre", WISHART: "lue"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    ensemble: str | None = None
    n_list: list = field(default_factory=list)
    replicas: int = 20000
    seed: int = 0
    model: str | None = None
    dist: str | None = None
    d: float | None = None
    p: float | None = None
    alpha: float | None = None
    beta: float | None = None
    tol: float = QUADRATURE_TOL
    collision_eps: float = DEFAULT_COLLISION_EPS
    block_size: int = DEFAULT_BLOCK_SIZE
    workers: int | None = None
    only: list | None = None
    n_max: int | None = None
    output: str | None = None
    format: str | None = None


def parse_n_list(text):
    """``"1..4,8"`` -> ``[1, 2, 3, 4, 8]``; must be nonempty and strictly increasing."""
    if isinstance(text, list):
        out = [int(x) for x in text]
    else:
        out = []
        for part in str(text).split(","):
            part = part.strip()
            if not part:
                continue
            try:
                if ".." in part:
                    a, b = part.split("..")
                    out.extend(range(int(a), int(b) + 1))
                else:
                    out.append(int(part))
            except ValueError as exc:
                raise UsageError(f"cannot parse n value {part!r}") from exc
    if not out:
        raise UsageError("n list is empty")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise UsageError(f"n list must be strictly increasing, got {out}")
    if out[0] < 1:
        raise UsageError("n values must be >= 1")
    return out


# --- output --------------------------------------------------------------------------

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _render(rows, columns, fmt, command):
    if fmt == "json":
        return json.dumps({"command": command, "columns": list(columns), "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(text, cfg):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands --------------------------------------------------------------------------

def _ensemble(cfg):
    if cfg.ensemble not in closedform.ENERGY_FUNCTIONS:
        raise UsageError(f"--ensemble must be one of {sorted(closedform.ENERGY_FUNCTIONS)}, got {cfg.ensemble!r}")
    return cfg.ensemble


def cmd_closed_form(cfg):
    """Rows ``(n, raw, moment, penalized, delta, delta2)`` with forward differences."""
    which = _ensemble(cfg)
    f = closedform.ENERGY_FUNCTIONS[which]
    rows = []
    for n in cfg.n_list:
        e = f(n)
        p1, p2 = f(n + 1).penalized, f(n + 2).penalized
        rows.append({"n": n, "raw": e.raw_energy, "moment": e.moment, "penalized": e.penalized,
                     "delta": p1 - e.penalized, "delta2": p2 - 2 * p1 + e.penalized})
    _emit(_render(rows, ("n", "raw", "moment", "penalized", "delta", "delta2"), cfg.format or "csv",
                  "closed-form"), cfg)
    return EXIT_OK


def quadrature_raw_energy(which, n, quad=logenergy.DEFAULT_QUAD):
    """Raw energy of the ensemble's mean spectral law by the quadrature route."""
    if which == "ginibre":
        return logenergy.log_energy_radial(density.ginibre_density(n), quad)
    dens = density.gue_density(n) if which == "gue" else density.lue_density(n)
    return logenergy.log_energy_1d(dens, quad)


def cmd_quadrature_check(cfg):
    which = _ensemble(cfg)
    if max(cfg.n_list) > QUADRATURE_N_MAX:
        raise UsageError(f"quadrature-check supports n <= {QUADRATURE_N_MAX}")
    quad = logenergy.QuadSpec(target_tol=min(logenergy.DEFAULT_QUAD.target_tol, cfg.tol / 10))
    rows = []
    for n in cfg.n_list:
        ref = closedform.ENERGY_FUNCTIONS[which](n).raw_energy
        val = quadrature_raw_energy(which, n, quad)
        diff = abs(val - ref)
        rows.append({"n": n, "closed_form": ref, "quadrature": val, "abs_diff": diff, "tol": cfg.tol,
                     "pass": diff < cfg.tol})
    _emit(_render(rows, ("n", "closed_form", "quadrature", "abs_diff", "tol", "pass"), cfg.format or "csv",
                  "quadrature-check"), cfg)
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_NUMERICAL


def cmd_identities(cfg):
    only = None if not cfg.only else [x.replace("-", "_") for x in cfg.only]
    reports = identities.run_suite(only=only, n_max=cfg.n_max)
    if (cfg.format or "json") == "json":
        text = "".join(r.to_json() + "\n" for r in reports)
    else:
        rows = [{k: (json.dumps(v) if isinstance(v, list) else v) for k, v in r.to_dict().items()}
                for r in reports]
        text = _render(rows, ("identity", "params", "lhs", "rhs", "discrepancy", "verdict"), "csv", "identities")
    _emit(text, cfg)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.to_json()}", file=sys.stderr)
    return EXIT_IDENTITY if failed else EXIT_OK


def _entry_dist(cfg):
    if cfg.dist is None:
        raise UsageError("--dist is required for this model")
    kind = _DISTS.get(cfg.dist.lower())
    if kind is None:
        raise UsageError(f"--dist must be one of {sorted(_DISTS)}, got {cfg.dist!r}")
    return EntryDistribution(kind, d=cfg.d, p=cfg.p, alpha=cfg.alpha)


def _spec(cfg, n):
    if cfg.model is None:
        raise UsageError("--model is required")
    model = _MODELS.get(cfg.model.lower())
    if model is None:
        raise UsageError(f"--model must be one of {sorted(_MODELS)}, got {cfg.model!r}")
    dist = _entry_dist(cfg) if model in (WIGNER, IID, WISHART) else None
    return EnsembleSpec(model, n, dist=dist, beta=cfg.beta if model == BETA_HERMITE else None)


def _reference(spec):
    which = _REFERENCE.get(spec.model)
    if spec.model == BETA_HERMITE and spec.beta == 2:
        which = "gue"
    if spec.dist is not None and spec.dist.kind == "gaussian_complex":
        which = _GAUSSIAN_TWIN.get(spec.model)
    return None if which is None else closedform.ENERGY_FUNCTIONS[which](spec.n).penalized


def cmd_mc(cfg):
    if cfg.replicas < 2 or cfg.replicas % 2:
        raise UsageError(f"--replicas must be even and >= 2, got {cfg.replicas}")
    specs = [_spec(cfg, n) for n in cfg.n_list]
    first = specs[0]
    if first.model == IID and first.dist.kind == "sgg" and first.dist.d == 1 and first.dist.p == 2:
        print("note: IID with SGG(1,2) entries is the real Ginibre ensemble", file=sys.stderr)
    rows = []
    for spec in specs:
        est = estimate_mean_energy(spec, cfg.replicas, cfg.seed, cfg.collision_eps, cfg.block_size, cfg.workers)
        rows.append({
            "model": spec.model,
            "dist": spec.dist.label if spec.dist else (f"beta={spec.beta:g}" if spec.beta else ""),
            "n": spec.n,
            "estimate": est.raw.value,
            "stderr": est.raw.std_error,
            "rejected": est.raw.rejected_pairs,
            "moment": est.moment.value,
            "penalized": est.penalized.value,
            "reference": _reference(spec),
            "moment_stderr": est.moment.std_error,
            "penalized_stderr": est.penalized.std_error,
            "pairs_used": est.raw.replica_pairs_used,
            # Hermitian quadratic models: penalized value with m2 forced to one
            "penalized_unit_moment": est.raw.value + 0.5 if spec.penalty == 1.0 else None,
        })
    fmt = cfg.format or "csv"
    columns = MC_COLUMNS if fmt == "csv" else MC_COLUMNS + ("moment_stderr", "penalized_stderr", "pairs_used",
                                                    "penalized_unit_moment")
    _emit(_render(rows, columns, fmt, "mc"), cfg)
    return EXIT_OK


COMMANDS = {
    "closed-form": cmd_closed_form,
    "quadrature-check": cmd_quadrature_check,
    "identities": cmd_identities,
    "mc": cmd_mc,
}


# --- parsing ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="rmtenergy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--config", help="JSON file with defaults; flags take precedence")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("closed-form", "quadrature-check"):
            p.add_argument("--ensemble", choices=sorted(closedform.ENERGY_FUNCTIONS))
            p.add_argument("--n", dest="n_list", help="comma list and/or a..b spans")
        if name == "quadrature-check":
            p.add_argument("--tol", type=float)
        if name == "identities":
            p.add_argument("--only", type=lambda s: [x for x in s.split(",") if x])
            p.add_argument("--n-max", type=int)
        if name == "mc":
            p.add_argument("--model")
            p.add_argument("--dist")
            p.add_argument("--d", type=float)
            p.add_argument("--p", type=float)
            p.add_argument("--alpha", type=float)
            p.add_argument("--beta", type=float)
            p.add_argument("--n", dest="n_list", help="comma list and/or a..b spans")
            p.add_argument("--replicas", type=int)
            p.add_argument("--seed", type=int)
            p.add_argument("--collision-eps", type=float)
            p.add_argument("--block-size", type=int)
            p.add_argument("--workers", type=int)
    return parser


def make_config(args):
    """Merge ``--config`` JSON with explicit flags (flags win)."""
    merged = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                merged.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from exc
    if "n" in merged and "n_list" not in merged:
        merged["n_list"] = merged.pop("n")
    for k, v in vars(args).items():
        if v is not None and k != "config":
            merged[k] = v
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(merged) - known)
    if unknown:
        raise UsageError(f"unknown config keys {unknown}")
    if args.command in ("closed-form", "quadrature-check", "mc"):
        if "n_list" not in merged:
            raise UsageError("--n is required")
        merged["n_list"] = parse_n_list(merged["n_list"])
    return RunConfig(**merged)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


__all__ = ["RunConfig", "main", "parse_n_list"]
