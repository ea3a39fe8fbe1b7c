"""Command-line frontend.

Subcommands: torsion, eigs, dirac, asymmetry, verify, sweep.  Domains come
from line-oriented key=value files (see load_domain_spec); results land in
--out (or $MAGSPEC_OUT) as timestamp-named CSV/JSON plus rendered figures.

Exit codes: 0 success / all checks pass, 1 usage error, 2 computation
failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import dirac as dirac_mod
from . import geometry, maglap, reporting, torsion, verify

__all__ = ["RunConfig", "parse_args", "load_domain_spec", "main"]

COMMANDS = ("torsion", "eigs", "dirac", "asymmetry", "verify", "sweep")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3


@dataclass
class RunConfig:
    command: str
    domain: str | None = None
    B: list = field(default_factory=lambda: [0.0])
    n: int = 3
    resolution: int = 256
    out: str = "."
    format: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if any(b < 0 for b in self.B):
            raise ValueError("B values must be non-negative")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 64 <= self.resolution <= 2048:
            raise ValueError("resolution must lie in [64, 2048]")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _b_list(text: str) -> list:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad B list {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty B list")
    if any(b < 0 for b in values):
        raise argparse.ArgumentTypeError("B values must be non-negative")
    return values


def parse_args(argv) -> RunConfig:
    parser = _Parser(prog="magspec",
                     description="planar spectral-geometry toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"{name} computation")
        p.add_argument("--domain", help="domain spec file (key=value lines)")
        p.add_argument("--B", type=_b_list, default=[0.0],
                       help="comma-separated field strengths")
        p.add_argument("--n", type=int, default=3,
                       help="number of eigenvalues / trial functions")
        p.add_argument("--resolution", type=int, default=256,
                       help="grid cells per unit length (64..2048)")
        p.add_argument("--out", default=".", help="output directory "
                       "(overridden by $MAGSPEC_OUT)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if name in ("sweep", "verify"):
            p.add_argument("--jobs", type=int, default=1,
                           help="concurrent workers")
    ns = parser.parse_args(argv)
    out = os.environ.get("MAGSPEC_OUT", ns.out)
    try:
        return RunConfig(command=ns.command, domain=ns.domain, B=ns.B,
                         n=ns.n, resolution=ns.resolution, out=out,
                         format=ns.format, jobs=getattr(ns, "jobs", 1))
    except ValueError as exc:
        parser.error(str(exc))


# -- domain files ------------------------------------------------------------

_KEYS_BY_KIND = {
    "disk": {"area"},
    "rectangle": {"aspect"},
    "ellipse": {"aspect", "area"},
    "polygon": {"vertices"},
    "perturbed-disk": {"radius_samples", "area"},
}
_GLOBAL_KEYS = {"kind", "resolution"}


def _parse_domain_file(path):
    """Returns (DomainSpec, resolution override or None)."""
    entries = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in entries:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)
    if "kind" not in entries:
        raise ValueError(f"{path}: missing required key 'kind'")
    kind = entries["kind"][0]
    if kind not in _KEYS_BY_KIND:
        raise ValueError(f"{path}:{entries['kind'][1]}: unknown kind {kind!r}")
    allowed = _KEYS_BY_KIND[kind] | _GLOBAL_KEYS
    for key, (_, lineno) in entries.items():
        if key not in allowed:
            raise ValueError(f"{path}:{lineno}: key {key!r} not valid for "
                             f"kind={kind}")
    resolution = None
    if "resolution" in entries:
        resolution = int(entries["resolution"][0])

    def fval(key, default=None):
        if key not in entries:
            if default is None:
                raise ValueError(f"{path}: kind={kind} requires key {key!r}")
            return default
        return float(entries[key][0])

    if kind == "disk":
        spec = geometry.disk(area=fval("area", 1.0))
    elif kind == "rectangle":
        spec = geometry.rectangle(aspect=fval("aspect", 1.0))
    elif kind == "ellipse":
        spec = geometry.ellipse(aspect=fval("aspect"), area=fval("area", 1.0))
    elif kind == "polygon":
        value, lineno = entries["vertices"]
        try:
            verts = [tuple(map(float, pair.split(",")))
                     for pair in value.split(";") if pair.strip()]
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad vertex list")
        if any(len(v) != 2 for v in verts):
            raise ValueError(f"{path}:{lineno}: vertices need x,y pairs")
        spec = geometry.polygon(verts)
    else:
        value, lineno = entries["radius_samples"]
        try:
            samples = [float(tok) for tok in value.split(";") if tok.strip()]
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad radius sample list")
        spec = geometry.perturbed_disk(samples, area=fval("area", 1.0))
    return spec, resolution


def load_domain_spec(path) -> geometry.DomainSpec:
    """Parse a line-oriented key=value domain file."""
    return _parse_domain_file(path)[0]


# -- command bodies ----------------------------------------------------------

def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _domain_or_default(cfg: RunConfig):
    if cfg.domain:
        spec, res = _parse_domain_file(cfg.domain)
        return spec, (res or cfg.resolution)
    return geometry.rectangle(1.0), cfg.resolution


def _maybe_json(rows, header, csv_path, cfg):
    if cfg.format == "json":
        keys = header.split(",")
        payload = [dict(zip(keys, row)) for row in rows]
        path = csv_path.with_suffix(".json")
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path
    return reporting.write_csv(csv_path, header, rows)


def cmd_torsion(cfg: RunConfig) -> int:
    spec, res = _domain_or_default(cfg)
    out = _outdir(cfg)
    d = geometry.rasterize(spec, res)
    tf = torsion.solve_torsion_fd(d)
    profile = torsion.level_set_profile(tf)
    stamp = time.time()
    base = reporting.timestamped("torsion", "", stamp)
    rows = list(zip(profile.t, profile.mu, profile.per, profile.alpha))
    table = _maybe_json(rows, reporting.PROFILE_HEADER,
                        out / f"{base}.csv", cfg)
    f1 = reporting.fig_torsion_field(tf, out / f"{base}-field.png")
    f2 = reporting.fig_profile(profile, out / f"{base}-profile.png")
    print(f"phi_max = {tf.max_value:.8f} at {tf.max_location}")
    print(f"threshold s = {profile.threshold:.6f}")
    for p in (table, f1, f2):
        print(f"wrote {p}")
    return EXIT_OK


def cmd_eigs(cfg: RunConfig) -> int:
    spec, res = _domain_or_default(cfg)
    out = _outdir(cfg)
    d = geometry.rasterize(spec, res)
    tf = torsion.solve_torsion_fd(d)
    spectra = []
    for B in cfg.B:
        spectra.append(maglap.eigenvalues(maglap.assemble_landau(d, B), cfg.n))
        spectra.append(maglap.eigenvalues(
            maglap.assemble_torsion_gauge(d, B, tf), cfg.n))
    stamp = time.time()
    base = reporting.timestamped("eigs", "", stamp)
    table = _maybe_json(reporting.spectra_rows(spectra),
                        reporting.SPECTRA_HEADER, out / f"{base}.csv", cfg)
    fig = reporting.fig_spectra(spectra, out / f"{base}.png")
    for s in spectra:
        print(f"{s.domain} {s.method} B={s.B:g}: "
              + " ".join(f"{v:.6f}" for v in s.eigenvalues))
    print(f"wrote {table}")
    print(f"wrote {fig}")
    return EXIT_OK


def cmd_dirac(cfg: RunConfig) -> int:
    spec, res = _domain_or_default(cfg)
    if cfg.domain is None:
        spec = geometry.disk(1.0)
    out = _outdir(cfg)
    d = geometry.rasterize(spec, res)
    tf = torsion.solve_torsion_fd(d)
    pb = dirac_mod.parametric_boundary(spec, samples=1024)
    K = max(12, cfg.n - 1)
    records = []
    tag = verify._tag(spec)
    for B in cfg.B:
        grams = dirac_mod.hardy_basis_grams(d, pb, tf, B, K)
        uppers = dirac_mod.dirac_upper_bounds(grams, cfg.n)
        lower = dirac_mod.dirac_lower_bound(d.area, tf.max_value, B)
        for i, u in enumerate(uppers, start=1):
            records.append((tag, float(B), K, i, float(u),
                            float(lower) if i == 1 else float("nan")))
        print(f"{tag} B={B:g}: lower {lower:.6f}, upper "
              + " ".join(f"{u:.6f}" for u in uppers))
    stamp = time.time()
    base = reporting.timestamped("dirac", "", stamp)
    table = _maybe_json(sorted(records), reporting.DIRAC_HEADER,
                        out / f"{base}.csv", cfg)
    pts = [(B, dirac_mod.dirac_upper_bounds(
        dirac_mod.hardy_basis_grams(d, pb, tf, B, K), 1)[0])
        for B in cfg.B if B > 0]  # the decay fit takes ln B
    print(f"wrote {table}")
    if len(pts) >= 5:
        fit = verify.fit_decay(pts, tf.max_value)
        fig = reporting.fig_decay(pts, fit, out / f"{base}.png",
                                  title="Hardy upper bound decay")
        print(f"wrote {fig}")
    return EXIT_OK


def cmd_asymmetry(cfg: RunConfig) -> int:
    spec, res = _domain_or_default(cfg)
    out = _outdir(cfg)
    d = geometry.rasterize(spec, res)
    alpha = geometry.fraenkel_asymmetry(d)
    stamp = time.time()
    base = reporting.timestamped("asymmetry", "", stamp)
    tag = verify._tag(spec)
    table = _maybe_json([(tag, res, alpha)], reporting.ASYMMETRY_HEADER,
                        out / f"{base}.csv", cfg)
    fig = reporting.fig_asymmetry_overlay(d, alpha, out / f"{base}.png")
    print(f"alpha({tag}) = {alpha:.5f}")
    print(f"wrote {table}")
    print(f"wrote {fig}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    out = _outdir(cfg)
    if cfg.domain:
        spec, res = _parse_domain_file(cfg.domain)
        res = res or cfg.resolution
        reports = []
        reports += verify.check_lower_bound_dominance(
            domains=(spec,), B_values=tuple(cfg.B) or (0.0,), resolution=res)
        d = geometry.rasterize(spec, res)
        tf = torsion.solve_torsion_fd(d)
        reports.append(torsion.talenti_deficit(d, tf))
        reports = sorted(reports, key=lambda r: r.name)
    else:
        reports = verify.run_all(resolution=cfg.resolution,
                                 jobs=max(1, cfg.jobs))
    stamp = time.time()
    base = reporting.timestamped("verify", "", stamp)
    path = reporting.write_reports_json(reports, out / f"{base}.json")
    fig = reporting.fig_margins(reports, out / f"{base}-margins.png")
    n_fail = sum(r.status == "fail" for r in reports)
    n_vac = sum(r.status == "vacuous" for r in reports)
    for r in reports:
        print(f"[{r.status:>7}] {r.name}: margin {r.margin:+.3e}")
    print(f"{len(reports)} checks: {len(reports) - n_fail - n_vac} pass, "
          f"{n_fail} fail, {n_vac} vacuous")
    print(f"wrote {path}")
    print(f"wrote {fig}")
    return EXIT_VERIFY if n_fail else EXIT_OK


def _sweep_job(args):
    kind_args, B, n, resolution = args
    spec = _spec_from_tuple(kind_args)
    d = geometry.rasterize(spec, resolution)
    s = maglap.eigenvalues(maglap.assemble_landau(d, B), n)
    return reporting.spectra_rows([s])


def _spec_from_tuple(t):
    kind = t[0]
    if kind == "disk":
        return geometry.disk(t[1])
    if kind == "rectangle":
        return geometry.rectangle(t[1])
    if kind == "ellipse":
        return geometry.ellipse(t[1])
    raise ValueError(f"sweep does not support kind {kind!r}")


def cmd_sweep(cfg: RunConfig) -> int:
    out = _outdir(cfg)
    if cfg.domain:
        spec, _ = _parse_domain_file(cfg.domain)
        if spec.kind == "disk":
            specs = [("disk", spec.area)]
        elif spec.kind == "rectangle":
            specs = [("rectangle", spec.aspect)]
        elif spec.kind == "ellipse":
            specs = [("ellipse", spec.aspect)]
        else:
            raise ValueError(f"sweep does not support kind {spec.kind!r}")
    else:
        specs = [("disk", 1.0), ("rectangle", 1.0), ("rectangle", 2.0),
                 ("ellipse", 2.0)]
    jobs = [(s, B, cfg.n, cfg.resolution) for s in specs for B in cfg.B]
    rows = []
    with ProcessPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        for chunk in pool.map(_sweep_job, jobs):
            rows.extend(chunk)
    rows.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    stamp = time.time()
    base = reporting.timestamped("sweep", "", stamp)
    table = _maybe_json(rows, reporting.SPECTRA_HEADER,
                        out / f"{base}.csv", cfg)
    manifest = {
        "command": "sweep",
        "jobs": len(jobs),
        "files": [str(table)],
        "domains": [list(s) for s in specs],
        "B": list(map(float, cfg.B)),
        "resolution": cfg.resolution,
    }
    mpath = out / f"{base}-manifest.json"
    mpath.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {table}")
    print(f"wrote {mpath}")
    return EXIT_OK


_DISPATCH = {
    "torsion": cmd_torsion,
    "eigs": cmd_eigs,
    "dirac": cmd_dirac,
    "asymmetry": cmd_asymmetry,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _DISPATCH[cfg.command](cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    raise SystemExit(main())
