"""mtzeta command line: point evaluations, identity checks, reference tables and
Crandall delta sweeps.

Exit codes: 0 success, 1 verification failure, 2 non-convergence, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from . import characters as ch
from . import herglotz as hz
from . import mt_zeta as mt
from . import tables
from . import verify
from .quadrature import QuadratureSpec
from .results import DomainError, EvalResult, NumericalError, PoleError

EXIT_OK, EXIT_FAIL, EXIT_NONCONV, EXIT_USAGE = 0, 1, 2, 64
DIGITS = 15


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    fmt: str = "pretty"
    tol: float | None = None
    delta: float | None = None
    max_terms: int = 4000
    quad_level: int | None = None
    seed: int = 0
    workers: int = 1
    char_values: tuple = ()

    def quad_spec(self) -> QuadratureSpec | None:
        return None if self.quad_level is None else QuadratureSpec(max_level=self.quad_level)

    def crandall(self) -> mt.CrandallParams | None:
        return None if self.delta is None else mt.CrandallParams(delta=self.delta)


_CONFIG_KEYS = {"format": ("fmt", str), "tol": ("tol", float), "delta": ("delta", float),
                "max-terms": ("max_terms", int), "quad-level": ("quad_level", int),
                "seed": ("seed", int), "workers": ("workers", int)}


def read_config_file(path: str) -> dict:
    """Flat key=value text; '#' starts a comment."""
    out = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        name, typ = _CONFIG_KEYS[key]
        try:
            out[name] = typ(val)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def build_config(ns: argparse.Namespace) -> CliConfig:
    cfg = {}
    if ns.config:
        cfg.update(read_config_file(ns.config))
    for key, (name, _) in _CONFIG_KEYS.items():
        v = getattr(ns, name, None)
        if v is not None:
            cfg[name] = v            # flags win over the file
    if getattr(ns, "char_values", None):
        cfg["char_values"] = tuple(ns.char_values)
    conf = CliConfig(**cfg)
    if conf.fmt not in ("json", "csv", "pretty"):
        raise UsageError(f"unknown format {conf.fmt!r}")
    if conf.tol is not None and not conf.tol > 0:
        raise UsageError("--tol must be positive")
    return conf


# ---------------------------------------------------------------------------
# number formatting

def fmt_num(v, digits: int = DIGITS) -> str:
    return verify.format_number(v, digits)


def _emit(conf: CliConfig, rows: list, columns: list, out) -> None:
    """rows are dicts of already-formatted strings (or bools)."""
    if conf.fmt == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
    elif conf.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_csv_cell(r.get(c, "")) for c in columns])
    else:
        widths = {c: max(len(c), *(len(_csv_cell(r.get(c, ""))) for r in rows)) for c in columns} if rows else {}
        out.write("  ".join(c.ljust(widths.get(c, len(c))) for c in columns) + "\n")
        for r in rows:
            out.write("  ".join(_csv_cell(r.get(c, "")).ljust(widths[c]) for c in columns) + "\n")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# ---------------------------------------------------------------------------
# characters on the command line

def resolve_character(label: str, conf: CliConfig):
    """Table 1 label, or NAME=v1,v2,... supplied through --char-values."""
    for entry in conf.char_values:
        name, _, vals = entry.partition("=")
        if name == label:
            try:
                table = tuple(complex(s.replace("i", "j")) for s in vals.split(","))
            except ValueError:
                raise UsageError(f"bad value table for {label}") from None
            try:
                return ch.PeriodicFunction(len(table), table)
            except DomainError as exc:
                raise UsageError(str(exc)) from None
    try:
        return ch.character(label)
    except (DomainError, KeyError):
        raise UsageError(f"unknown character {label!r}; use a Table 1 label or --char-values") from None


# ---------------------------------------------------------------------------
# eval catalogue

@dataclass(frozen=True)
class Entry:
    params: tuple
    methods: dict          # method name -> callable(p, conf) -> EvalResult
    default: str
    doc: str = ""


def _jr(p, conf, method):
    a, b = resolve_character(p["chi1"], conf), resolve_character(p["chi2"], conf)
    spec = conf.quad_spec()
    if isinstance(a, ch.PeriodicFunction) or isinstance(b, ch.PeriodicFunction):
        m = "quadrature" if method == "quadrature" else "scriptF_sum"
        return mt.periodic_j(p["z"], p["x"], ch.as_periodic(a), ch.as_periodic(b), m, spec)
    return mt.j_r(p["z"], p["x"], a, b, method, spec)


CATALOGUE = {
    "theta": Entry(("z", "x"), {
        "integral": lambda p, c: mt.theta(p["z"], p["x"], "integral", c.quad_spec()),
        "direct": lambda p, c: mt.theta(p["z"], p["x"], "direct", max_terms=c.max_terms),
    }, "integral", "Theta(z, x) = sum 1/(n m (n + m x)^{z-1})"),
    "phi": Entry(("z", "x"), {
        "series": lambda p, c: hz.phi_hh_series(p["z"], p["x"]),
        "quadrature": lambda p, c: hz.phi_hh_quadrature(p["z"], p["x"], c.quad_spec()),
    }, "series", "Herglotz-Hurwitz Phi(z, x)"),
    "F": Entry(("x",), {
        "series": lambda p, c: hz.herglotz_F(p["x"]),
        "integral": lambda p, c: hz.herglotz_F_integral(p["x"], c.quad_spec()),
    }, "series", "Herglotz-Zagier F(x)"),
    "phi_k": Entry(("k", "x"), {
        "series": lambda p, c: hz.ishibashi_phi(int(p["k"].real), p["x"]),
    }, "series", "Ishibashi Phi_k(x)"),
    "phi_k_prime": Entry(("k", "x"), {
        "series": lambda p, c: hz.ishibashi_phi_prime(int(p["k"].real), p["x"]),
    }, "series", "derivative Phi_k'(x)"),
    "J": Entry(("x",), {
        "quadrature": lambda p, c: mt.j_classic(p["x"], c.quad_spec()),
    }, "quadrature", "J(x) = int_0^1 log(1 + t^x)/(1 + t) dt"),
    "T": Entry(("x",), {
        "quadrature": lambda p, c: mt.t_classic(p["x"], c.quad_spec()),
    }, "quadrature", "T(x) = int_0^1 arctan(t^x)/(1 + t^2) dt"),
    "Jz": Entry(("z", "x"), {
        "quadrature": lambda p, c: mt.j_cap(p["z"], p["x"], c.quad_spec()),
    }, "quadrature", "J(z, x)"),
    "alt_theta": Entry(("z", "x"), {
        "integral": lambda p, c: mt.alternating_theta(p["z"], p["x"], "integral", c.quad_spec()),
        "direct": lambda p, c: mt.alternating_theta(p["z"], p["x"], "direct"),
    }, "integral", "alternating sum (-1)^{m+n}/(n m (n + m x)^{z-1})"),
    "j_r": Entry(("z", "x", "chi1", "chi2"), {
        "quadrature": lambda p, c: _jr(p, c, "quadrature"),
        "scriptF_sum": lambda p, c: _jr(p, c, "scriptF_sum"),
    }, "quadrature", "character-twisted J_{r, chi1, chi2}(z, x)"),
    "k_r": Entry(("z", "chi1", "chi2"), {
        "quadrature": lambda p, c: mt.k_r(p["z"], resolve_character(p["chi1"], c),
                                          resolve_character(p["chi2"], c), c.quad_spec()),
    }, "quadrature", "log log weighted K_{r, chi1, chi2}(z)"),
    "scriptF": Entry(("z", "x", "u", "v"), {
        "integral": lambda p, c: mt.script_f(p["z"], p["x"], p["u"], p["v"], "integral", c.quad_spec()),
        "series": lambda p, c: mt.script_f(p["z"], p["x"], p["u"], p["v"], "series",
                                           max_terms=c.max_terms),
    }, "integral", "F_z(x; u, v) = -sum u^m v^n/(m (n + m x)^z)"),
    "W": Entry(("r", "c", "d", "z", "x"), {
        "crandall": lambda p, c: mt.crandall_w(int(p["r"].real), int(p["c"].real), int(p["d"].real),
                                               p["z"], p["x"], c.crandall()),
        "direct": lambda p, c: mt.crandall_w_direct(int(p["r"].real), int(p["c"].real), int(p["d"].real),
                                                    p["z"], p["x"], max_terms=c.max_terms)[0],
    }, "crandall", "W_{c,d}(z, x) continued by the Crandall split"),
    "gauss_sum": Entry(("z", "x", "chi1", "chi2"), {
        "crandall": lambda p, c: mt.gauss_double_sum(p["z"], p["x"], resolve_character(p["chi1"], c),
                                                     resolve_character(p["chi2"], c), "crandall",
                                                     c.crandall()),
        "direct": lambda p, c: mt.gauss_double_sum(p["z"], p["x"], resolve_character(p["chi1"], c),
                                                   resolve_character(p["chi2"], c), "direct",
                                                   max_terms=c.max_terms),
    }, "crandall", "sum G(m, chi1) G(n, chi2)/(m n (n + m x)^{z-1})"),
}

_STRING_PARAMS = {"chi1", "chi2"}


def _parse_params(entry: Entry, pairs: list) -> dict:
    p = {}
    it = iter(pairs)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key, eq, val = tok[2:].partition("=")
        if not eq:
            try:
                val = next(it)
            except StopIteration:
                raise UsageError(f"missing value for --{key}") from None
        if key not in entry.params:
            raise UsageError(f"unknown parameter --{key}; expected {', '.join(entry.params)}")
        if key in _STRING_PARAMS:
            p[key] = val
        else:
            try:
                p[key] = complex(val.replace("i", "j")) if "j" in val or "i" in val else complex(float(val))
            except ValueError:
                raise UsageError(f"bad value for --{key}: {val!r}") from None
    missing = [k for k in entry.params if k not in p]
    if missing:
        raise UsageError(f"missing parameters: {', '.join('--' + m for m in missing)}")
    for k in ("x",):
        if k in p:
            if p[k].imag != 0:
                raise UsageError("--x must be real")
            p[k] = p[k].real
    return p


def cmd_eval(ns, conf: CliConfig, out) -> int:
    if ns.function not in CATALOGUE:
        raise UsageError(f"unknown function {ns.function!r}; choose from {', '.join(sorted(CATALOGUE))}")
    entry = CATALOGUE[ns.function]
    p = _parse_params(entry, ns.params)
    method = ns.method or entry.default
    if method == "both":
        methods = list(entry.methods)
    elif method in entry.methods:
        methods = [method]
    else:
        raise UsageError(f"{ns.function} methods: {', '.join(entry.methods)} (or both)")
    results = []
    for m in methods:
        try:
            results.append((m, entry.methods[m](p, conf)))
        except (DomainError, PoleError) as exc:
            raise UsageError(str(exc)) from None
        except NumericalError as exc:
            results.append((m, EvalResult(complex("nan"), float("inf"), False)))
            print(f"{m}: {exc}", file=sys.stderr)
    rows = [{"function": ns.function, "method": m, "value": fmt_num(r.value),
             "abs_err": f"{r.abs_err:.3g}", "converged": r.converged} for m, r in results]
    _emit(conf, rows, ["function", "method", "value", "abs_err", "converged"], out)
    if not all(r.converged for _, r in results):
        return EXIT_NONCONV
    if len(results) > 1:
        tol = conf.tol if conf.tol is not None else 1e-8
        ref = results[0][1]
        for _, r in results[1:]:
            if abs(r.value - ref.value) > max(tol, r.abs_err + ref.abs_err):
                return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(ns, conf: CliConfig, out) -> int:
    ids = ns.ids or ["all"]
    if ids == ["all"]:
        ids = verify.identity_ids()
    for i in ids:
        try:
            verify.get_spec(i)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    tol = {i: conf.tol for i in ids} if conf.tol is not None else None
    reports = verify.run_all(seed=conf.seed, ids=ids, workers=conf.workers, tolerances=tol)
    if conf.fmt == "json":
        out.write(verify.to_json(reports, DIGITS) + "\n")
    elif conf.fmt == "csv":
        out.write(verify.to_csv(reports, DIGITS))
    else:
        rows = [{"id": r.id, "pass": r.passed, "max_residual": f"{r.max_residual:.3g}",
                 "tolerance": f"{r.tolerance:.3g}", "samples": str(len(r.samples))} for r in reports]
        _emit(conf, rows, ["id", "pass", "max_residual", "tolerance", "samples"], out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# tables

def cmd_table(ns, conf: CliConfig, out) -> int:
    if ns.which == "table1":
        rows = tables.table1_rows()
        data = [{"label": r.label, "values": " ".join(fmt_num(v, 6) for v in r.values),
                 "parity": r.parity, "conductor": str(r.conductor), "ok": r.ok} for r in rows]
        _emit(conf, data, ["label", "values", "parity", "conductor", "ok"], out)
    else:
        rows = tables.table2_rows(tol=conf.tol if conf.tol is not None else 1e-8)
        data = []
        for r in rows:
            d = {"label": r.label, "C_expr": r.c_expr, "C_expected": fmt_num(r.c_expected)}
            for x, v in r.c_by_x:
                d[f"C(x={x:g})"] = fmt_num(v)
            d.update({"C_gauss": fmt_num(r.c_gauss), "A_err": f"{r.a_error:.3g}",
                      "B_err": f"{r.b_error:.3g}", "C_err": f"{r.c_error:.3g}", "ok": r.ok})
            data.append(d)
        cols = list(data[0]) if data else []
        _emit(conf, data, cols, out)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------------------
# crandall sweep

def cmd_sweep(ns, conf: CliConfig, out) -> int:
    try:
        z = complex(ns.z.replace("i", "j"))
    except ValueError:
        raise UsageError(f"bad z {ns.z!r}") from None
    bound = mt.crandall_delta_bound(ns.r, ns.x)
    if ns.deltas:
        deltas = ns.deltas
    elif conf.delta is not None:
        deltas = [conf.delta]
    else:
        deltas = [f * bound for f in (0.2, 0.3, 0.4, 0.5, 0.6)]
    for d in deltas:
        if not 0 < d < bound:
            raise UsageError(f"delta {d} outside the legal interval (0, {bound:.15g})")
    try:
        vals, spread = mt.crandall_sweep(ns.r, ns.c, ns.d, z, ns.x, deltas)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    rows = [{"delta": f"{d:.{DIGITS}g}", "value": fmt_num(v.value), "abs_err": f"{v.abs_err:.3g}",
             "converged": v.converged} for d, v in zip(deltas, vals)]
    _emit(conf, rows, ["delta", "value", "abs_err", "converged"], out)
    if conf.fmt == "pretty":
        out.write(f"max spread {spread:.3g}\n")
    elif conf.fmt == "csv":
        out.write(f"# max spread {spread:.{DIGITS}g}\n")
    if not all(v.converged for v in vals):
        return EXIT_NONCONV
    tol = conf.tol if conf.tol is not None else 1e-9
    return EXIT_OK if spread <= tol else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default=None)
    p.add_argument("--tol", type=float, default=None, help="tolerance override")
    p.add_argument("--delta", type=float, default=None, help="Crandall split parameter")
    p.add_argument("--max-terms", dest="max_terms", type=int, default=None)
    p.add_argument("--quad-level", dest="quad_level", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--config", default=None, help="flat key=value file; flags take precedence")
    p.add_argument("--char-values", dest="char_values", action="append", default=[],
                   metavar="NAME=v1,...,vr", help="explicit value table for a periodic weight")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mtzeta", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    pe = sub.add_parser("eval", help="evaluate one function", allow_abbrev=False)
    pe.add_argument("function")
    pe.add_argument("--method", default=None)
    _common(pe)

    pv = sub.add_parser("verify", help="run registered identities", allow_abbrev=False)
    pv.add_argument("ids", nargs="*")
    _common(pv)

    pt = sub.add_parser("table", help="regenerate a reference table", allow_abbrev=False)
    pt.add_argument("which", choices=("table1", "table2"))
    _common(pt)

    ps = sub.add_parser("crandall-sweep", help="W_{c,d}(z, x) for several deltas", allow_abbrev=False)
    ps.add_argument("--r", type=int, required=True)
    ps.add_argument("--c", type=int, required=True)
    ps.add_argument("--d", type=int, required=True)
    ps.add_argument("--z", required=True)
    ps.add_argument("--x", type=float, required=True)
    ps.add_argument("--deltas", type=float, nargs="+", default=None)
    _common(ps)

    sub.add_parser("list", help="list eval functions and identity ids", allow_abbrev=False)
    return ap


def cmd_list(ns, conf, out) -> int:
    for name, e in sorted(CATALOGUE.items()):
        out.write(f"{name:12s} params={','.join(e.params)} methods={','.join(e.methods)}  {e.doc}\n")
    for i in verify.identity_ids():
        out.write(f"identity {i}  {verify.get_spec(i).description}\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = make_parser()
        if argv and argv[0] == "eval":
            ns, rest = parser.parse_known_args(argv)
            ns.params = rest
        else:
            ns = parser.parse_args(argv)
            ns.params = []
        conf = build_config(ns) if ns.cmd != "list" else CliConfig()
        handler = {"eval": cmd_eval, "verify": cmd_verify, "table": cmd_table,
                   "crandall-sweep": cmd_sweep, "list": cmd_list}[ns.cmd]
        return handler(ns, conf, out)
    except UsageError as exc:
        print(f"mtzeta: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
