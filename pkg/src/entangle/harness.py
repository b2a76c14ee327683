"""Run configurations, scan dispatch and CSV/JSON emission.

``run`` never raises library errors: it converts them into the exit-code map
carried by the exception classes and writes the message to stderr.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import boson_chain, fermion1d, fermion_highd, fisher_hartwig, oracle, spin_order
from .errors import CapabilityError, EntanglementError, InputDomainError
from .fitting import ScalingFit, fit_area_log, fit_log

OUTPUT_DIR_ENV = "ENTANGLE_OUTPUT_DIR"
FORMATS = ("csv", "json")
COMMANDS = ("fermion1d", "fisher-hartwig", "spin-afm", "spin-fm", "boson1d",
            "fermion-highd", "widom", "oracle-check", "fit")
SUITES = ("fermion", "spin", "boson", "all")

_PI_RE = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_kf(text) -> float:
    """'0.5pi', 'pi/4', '0.25*pi' or plain radians -> radians."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    m = _PI_RE.match(s)
    try:
        if m:
            coef = float(m.group(1)) if m.group(1) not in ("", "+", "-") else float(m.group(1) + "1")
            div = float(m.group(2)) if m.group(2) else 1.0
            return coef * math.pi / div
        return float(s)
    except ValueError:
        raise InputDomainError(f"cannot parse k_f value {text!r}") from None


def doubling_grid(lmin: int, lmax: int) -> list[int]:
    if lmin < 1 or lmax < lmin:
        raise InputDomainError(f"need 1 <= lmin <= lmax, got {lmin}, {lmax}")
    out = [int(lmin)]
    while out[-1] * 2 <= lmax:
        out.append(out[-1] * 2)
    return out


@dataclass
class RunConfig:
    command: str
    k_f: Optional[float] = None
    mass: Optional[float] = None
    lam: Optional[float] = None
    n: Optional[int] = None
    n1: Optional[int] = None
    n_total: Optional[int] = None
    d: Optional[int] = None
    kind: Optional[str] = None
    L_values: list = field(default_factory=list)
    nodes: int = 24
    suite: str = "all"
    input_path: Optional[str] = None
    fit: bool = False
    output: Optional[str] = None
    fmt: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputDomainError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise InputDomainError(f"unknown output format {self.fmt!r}")
        if self.suite not in SUITES:
            raise InputDomainError(f"unknown oracle suite {self.suite!r}")
        self.L_values = [int(L) for L in self.L_values]

    def used_fields(self) -> dict:
        """Config fields that carry a value, for the JSON record."""
        return {k: v for k, v in asdict(self).items()
                if v is not None and v != [] and k not in ("output", "fmt", "jobs")}


@dataclass
class RunResult:
    status: int
    columns: list
    rows: list
    fit: Optional[ScalingFit] = None
    written: list = field(default_factory=list)
    message: str = ""


def _need(cfg: RunConfig, *names):
    missing = [n for n in names if getattr(cfg, n) in (None, [])]
    if missing:
        raise InputDomainError(f"{cfg.command} needs: {', '.join(missing)}")


# --- commands --------------------------------------------------------------

def _cmd_fermion1d(cfg):
    _need(cfg, "k_f", "L_values")
    rows = fermion1d.entropy_scan(cfg.L_values, cfg.k_f, jobs=cfg.jobs)
    fit = fit_log(rows) if cfg.fit else None
    return ["L", "entropy"], [list(r) for r in rows], fit


def _cmd_fisher_hartwig(cfg):
    _need(cfg, "k_f", "lam", "L_values")
    rows = fisher_hartwig.fh_error_scan(cfg.L_values, cfg.k_f, cfg.lam)
    return ["L", "exact", "asymptotic", "abs_err"], [list(r) for r in rows], None


def _cmd_spin_afm(cfg):
    _need(cfg, "n", "n1")
    exact = spin_order.afm_entropy(cfg.n, cfg.n1)
    asym = spin_order.afm_entropy_asymptotic(cfg.n, cfg.n1)
    return (["n", "n1", "exact", "asymptotic", "gap"],
            [[cfg.n, cfg.n1, exact, asym, abs(exact - asym)]], None)


def _cmd_spin_fm(cfg):
    if cfg.L_values:
        # equal halves: total 2m, subsystem m
        rows = [[m, spin_order.fm_entropy(2 * m, m)] for m in cfg.L_values]
        fit = fit_log(rows) if cfg.fit else None
        return ["n1", "entropy"], rows, fit
    _need(cfg, "n", "n1")
    return ["n", "n1", "entropy"], [[cfg.n, cfg.n1, spin_order.fm_entropy(cfg.n, cfg.n1)]], None


def _cmd_boson1d(cfg):
    _need(cfg, "mass", "L_values")
    spec = boson_chain.HarmonicChainSpec(cfg.mass, cfg.n_total)
    rows = boson_chain.boson_entropy_scan(spec, cfg.L_values)
    fit = fit_log(rows) if cfg.fit else None
    return ["L", "entropy"], [list(r) for r in rows], fit


def _cmd_fermion_highd(cfg):
    _need(cfg, "d", "kind", "k_f", "L_values")
    region = fermion_highd.FermiSeaRegion(cfg.d, cfg.kind, cfg.k_f)
    rows = fermion_highd.area_law_scan(region, cfg.L_values)
    fit = fit_area_log([(L, s) for L, s, _ in rows], cfg.d) if cfg.fit else None
    return ["L", "entropy", "entropy_per_area"], [list(r) for r in rows], fit


def _cmd_widom(cfg):
    _need(cfg, "d", "kind", "k_f")
    region = fermion_highd.FermiSeaRegion(cfg.d, cfg.kind, cfg.k_f)
    numeric = fermion_highd.widom_coefficient(region, cfg.nodes)
    try:
        analytic = fermion_highd.widom_coefficient_analytic(region)
    except CapabilityError:
        analytic = float("nan")
    return (["d", "kind", "k_f", "numeric", "analytic", "abs_diff"],
            [[cfg.d, cfg.kind, cfg.k_f, numeric, analytic, abs(numeric - analytic)]], None)


def _cmd_fit(cfg):
    _need(cfg, "input_path")
    with open(cfg.input_path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputDomainError("fit input is empty")
        try:
            pts = [(float(r[0]), float(r[1])) for r in reader if r]
        except (ValueError, IndexError):
            raise InputDomainError("fit input needs two numeric columns") from None
    fit = fit_area_log(pts, cfg.d) if cfg.d else fit_log(pts)
    return ["slope", "intercept", "rms_residual", "n_points"], [
        [fit.slope, fit.intercept, fit.rms_residual, fit.n_points]], fit


# --- oracle suites ---------------------------------------------------------

def _fermion_checks():
    for n_sites, n_part, sites in ((6, 3, (0, 1, 2)), (8, 3, (0, 1, 2, 3)),
                                   (8, 5, (0, 2, 5, 7)), (10, 5, (0, 1, 2, 3)),
                                   (6, 0, (0, 1)), (8, 8, (0, 3))):
        mask = sum(1 << s for s in sites)
        yield (f"ring N={n_sites} n={n_part} sites={''.join(map(str, sites))}",
               oracle.exact_fermion_ring_entropy(n_sites, n_part, mask),
               fermion1d.ring_entropy(n_sites, n_part, sites), 1e-8)


def _spin_checks():
    for n, n1 in ((1, 1), (2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)):
        yield (f"afm n={n} n1={n1}", oracle.exact_afm_entropy(n, n1),
               spin_order.afm_entropy(n, n1), 1e-8)
    for total, sub in ((2, 1), (4, 2), (5, 2), (8, 3), (10, 5)):
        yield (f"fm total={total} sub={sub}", oracle.exact_fm_entropy(total, sub),
               spin_order.fm_entropy(total, sub), 1e-8)


def _boson_checks():
    for ratio in (1.0, 2.0, 10.0, 100.0):
        x, p = oracle.two_mode_state(ratio, 1.0)
        nu = boson_chain.symplectic_spectrum(boson_chain.GaussianBosonState(x[:1, :1], p[:1, :1]))
        yield f"two-mode ratio={ratio:g}", oracle.two_mode_nu(ratio, 1.0), float(nu[0]), 1e-10
        full = boson_chain.boson_entropy(
            boson_chain.symplectic_spectrum(boson_chain.GaussianBosonState(x, p)))
        yield f"two-mode ratio={ratio:g} global", 0.0, full, 1e-7


_SUITES = {"fermion": _fermion_checks, "spin": _spin_checks, "boson": _boson_checks}


def _cmd_oracle_check(cfg):
    names = list(_SUITES) if cfg.suite == "all" else [cfg.suite]
    rows = []
    for name in names:
        for label, expected, actual, tol in _SUITES[name]():
            err = abs(expected - actual)
            rows.append([name, label, expected, actual, err, int(err <= tol)])
    return ["suite", "check", "oracle", "fast", "abs_err", "passed"], rows, None


_DISPATCH = {
    "fermion1d": _cmd_fermion1d,
    "fisher-hartwig": _cmd_fisher_hartwig,
    "spin-afm": _cmd_spin_afm,
    "spin-fm": _cmd_spin_fm,
    "boson1d": _cmd_boson1d,
    "fermion-highd": _cmd_fermion_highd,
    "widom": _cmd_widom,
    "oracle-check": _cmd_oracle_check,
    "fit": _cmd_fit,
}


# --- emission --------------------------------------------------------------

def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.12g" % float(v)
    return str(v)


def format_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def format_json(cfg: RunConfig, columns, rows, fit) -> str:
    record = {
        "config": cfg.used_fields(),
        "rows": [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows],
        "fit": fit.to_dict() if fit else None,
    }
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def resolve_output(cfg: RunConfig) -> Optional[Path]:
    """Explicit path (relative ones go under $ENTANGLE_OUTPUT_DIR if set),
    else ``<dir>/<command>.<fmt>`` when the variable is set, else stdout."""
    base = os.environ.get(OUTPUT_DIR_ENV)
    if cfg.output:
        p = Path(cfg.output)
        return Path(base) / p if base and not p.is_absolute() else p
    if base:
        return Path(base) / f"{cfg.command}.{cfg.fmt}"
    return None


def _emit(cfg, columns, rows, fit, stdout) -> list:
    written = []
    if cfg.fmt == "json":
        main, side = format_json(cfg, columns, rows, fit), None
    else:
        main = format_csv(columns, rows)
        side = format_json(cfg, columns[:0], [], fit) if fit else None
    target = resolve_output(cfg)
    if target is None:
        stdout.write(main)
        if side:
            sys.stderr.write(side)
        return written
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(main)
    written.append(str(target))
    if side:
        fit_path = target.with_suffix(".fit.json")
        fit_path.write_text(side)
        written.append(str(fit_path))
    return written


def run(cfg: RunConfig, stdout=None) -> RunResult:
    """Execute one command; returns the exit status with the produced table."""
    stdout = stdout or sys.stdout
    try:
        columns, rows, fit = _DISPATCH[cfg.command](cfg)
        written = _emit(cfg, columns, rows, fit, stdout)
    except EntanglementError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return RunResult(exc.exit_code, [], [], message=str(exc))
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return RunResult(1, [], [], message=str(exc))
    status = 0
    if cfg.command == "oracle-check" and not all(r[-1] for r in rows):
        failed = [r[1] for r in rows if not r[-1]]
        sys.stderr.write("oracle mismatch: " + "; ".join(failed) + "\n")
        status = 5
    return RunResult(status, columns, rows, fit, written)
