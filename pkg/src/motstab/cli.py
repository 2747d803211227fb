"""Command-line front end: ``motstab <subcommand> ...``.

Every command produces a CommandResult with the keys command, status,
payload and diagnostics. ``--format json`` prints it as JSON; the text
format prints the payload alone (polynomials and series in their canonical
encodings, reports as ``key: value`` lines).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, List, Optional

from . import catalog as cat
from . import commuting, frobenius, oracle, repstab, zeta
from .errors import MotstabError, UnknownGroup, UsageError
from .limits import DEFAULT_N_MAX, DEFAULT_WINDOW, MotSequence, limit_detect
from .mot import MotClass
from .parsing import parse_class, parse_poly

PRECISION_ENV = "MOTSTAB_PRECISION"


@dataclass
class CommandResult:
    command: str
    status: str = "ok"
    payload: Any = None
    diagnostics: List[str] = field(default_factory=list)
    exit_code: int = 0

    def to_dict(self) -> dict:
        return {"command": self.command, "status": self.status,
                "payload": self.payload, "diagnostics": list(self.diagnostics)}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if self.status != "ok":
            return "\n".join(self.diagnostics)
        return _text(self.payload)


def _text(payload, indent: str = "") -> str:
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (str, int, float)) for x in v):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        # rows of scalars (matrices, (g, ratio) pairs) stay on one line each
        return "\n".join(
            f"{indent}{'  '.join(_scalar(y) for y in x)}"
            if isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x)
            else _text(x, indent) if isinstance(x, (dict, list)) else f"{indent}{_scalar(x)}"
            for x in payload)
    return f"{indent}{_scalar(payload)}"


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        items = list(map(str, v))
        return ("; " if any("," in x for x in items) else ", ").join(items)
    return str(v)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_usage()}")


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return 10
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer")


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _catalog(args) -> cat.Catalog:
    return cat.Catalog.load(args.catalog) if args.catalog else cat.default_catalog()


def _partition(text: Optional[str]) -> repstab.Partition:
    return repstab.Partition.parse(text or "")


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


# subcommand handlers; each returns the payload and may append diagnostics

def cmd_class(args, res):
    c = _catalog(args)
    if args.genus is not None:
        return str(c.rep_surface_class(args.name, args.genus) if not args.leading
                   else c.leading_term(args.name, args.genus))
    e = c.entry(args.name, args.rank)
    if args.details:
        return e.to_dict()
    return str(e.cls)


def cmd_rep_surface(args, res):
    c = _catalog(args)
    if args.leading:
        return str(c.leading_term(args.group, args.genus))
    return str(c.rep_surface_class(args.group, args.genus))


def cmd_limit(args, res):
    if args.group:
        rep = _catalog(args).verify_conjecture_a(args.group, args.precision, args.nmax)
    else:
        if not args.expr:
            raise UsageError("limit needs --expr or --group")
        var = args.var
        seq = MotSequence(lambda n: parse_class(args.expr, **{var: n}), args.expr)
        rep = limit_detect(seq, N=args.precision, W=args.window, n_start=args.nstart,
                           n_max=args.nmax, tolerance=args.tolerance or 0)
    if not rep.converged:
        res.diagnostics.append("no stabilization detected")
    return rep.to_dict()


def cmd_sym(args, res):
    return str(zeta.sym_power(parse_poly(args.cls), args.n))


def cmd_sym_limit(args, res):
    lim = zeta.sym_limit(parse_poly(args.cls))
    return {"limit": str(lim), "expansion": str(lim.expand(args.precision))}


def cmd_zeta(args, res):
    return str(zeta.kapranov_zeta(parse_poly(args.cls)))


def _branching(args) -> commuting.BranchingSystem:
    name = args.system.lower()
    if name == "gl2":
        return commuting.gl2_branching_system()
    systems = _load_config(args.config).get("branching_systems", {})
    if name in systems:
        raw = systems[name]
        return commuting.BranchingSystem.from_strings(raw["states"], raw["A"], raw["w"], raw["v"])
    raise UnknownGroup(f"no branching system {args.system!r} (ship: gl2; others via --config)")


def cmd_commuting(args, res):
    sys_ = _branching(args)
    val = commuting.commuting_class(sys_, args.n)
    if args.system.lower() == "gl2" and val != commuting.gl2_closed_form(args.n):
        res.diagnostics.append("branching result differs from the closed form")
    return str(val)


def cmd_census(args, res):
    if args.kind.lower() != "glr":
        raise UnknownGroup(f"census is available for glr only, not {args.kind!r}")
    if args.limit:
        return commuting.census_limit_report(args.rmax, args.precision).to_dict()
    return str(commuting.census_glr(args.r))


def cmd_rank_stability(args, res):
    return commuting.rank_stability_report(args.rmax, args.precision).to_dict()


def _finite_group(args) -> frobenius.FiniteGroupData:
    if args.degrees:
        if args.order is None:
            raise UsageError("--degrees needs --order")
        return frobenius.from_degrees(_ints(args.degrees), args.order, args.commutator_order)
    if not args.group:
        raise UsageError("give --group or --degrees/--order")
    for G in _config_groups(args):
        if G.name == args.group:
            return G
    return frobenius.builtin(args.group)


def _config_groups(args) -> List[frobenius.FiniteGroupData]:
    cfg = _load_config(args.config)
    out = []
    for d in cfg.get("groups", []):
        out.append(frobenius.FiniteGroupData(
            d["name"], int(d["order"]), tuple(d["char_degrees"]), int(d["commutator_order"]),
            tuple(tuple(p) for p in d.get("generators", ()))).validate())
    return out


def cmd_frobenius(args, res):
    G = _finite_group(args)
    if args.ratios:
        return frobenius.rep_ratio_report(G, args.ratios).to_dict()
    return frobenius.rep_count(G, args.genus)


def cmd_kostka(args, res):
    if args.n is not None:
        return repstab.psi_matrix_sn(args.n).to_dict()
    return repstab.kostka(_partition(args.mu), _partition(args.lam))


def _json_arg(text: str):
    """Inline JSON object, or a path to a JSON file."""
    if text.lstrip().startswith("{"):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def cmd_decompose(args, res):
    if args.cyclic is not None:
        psi = repstab.psi_matrix_cyclic(args.cyclic)
        if not args.quotients:
            return psi.to_dict()
        raw = _json_arg(args.quotients)
        quot = {int(k): parse_class(v) for k, v in raw.items()}
        return repstab.decompose(psi, quot).to_dict()
    if args.n is None or not args.quotients:
        raise UsageError("decompose needs --n and --quotients (or --cyclic)")
    raw = _json_arg(args.quotients)
    quot = {repstab.Partition.parse(k): parse_class(v) for k, v in raw.items()}
    return repstab.motivic_decomposition(args.n, quot).to_dict()


def cmd_repstab(args, res):
    rep = repstab.rep_stability_check(parse_poly(args.cls), _partition(args.lam), args.precision)
    return rep.to_dict()


def cmd_oracle(args, res):
    what = args.what
    if what == "commuting":
        G = oracle.enumerate_group(args.group.upper(), args.p)
        count = oracle.count_commuting_tuples(G, args.n, jobs=args.jobs)
        pred = None
        if G.group_id == "GL2":
            pred = commuting.gl2_closed_form(args.n).evaluate(args.p)
        elif G.group_id == "GL3" and args.n == 2:
            pred = commuting.c2_glr_class(3).evaluate(args.p)
        elif args.n == 2 and G.group_id in ("SL2", "U2"):
            e = _catalog(args).entry(G.group_id)
            pred = _catalog(args).rep_surface_class(G.group_id, 1).evaluate(args.p, e.specialization_guard)
        return _with_prediction(count, pred)
    if what == "surface":
        if args.group.upper() in oracle.GROUP_IDS:
            G = oracle.enumerate_group(args.group.upper(), args.p)
            return _with_prediction(oracle.count_surface_tuples(G, args.genus), None)
        data = _finite_group(args)
        G = oracle.abstract_group(data)
        return _with_prediction(oracle.count_surface_tuples(G, args.genus), frobenius.rep_count(data, args.genus))
    if what == "census":
        G = oracle.enumerate_group(args.group.upper(), args.p)
        pred = commuting.census_glr(2).evaluate(args.p) if G.group_id == "GL2" else None
        return _with_prediction(oracle.count_conjugacy_classes(G), pred)
    if what == "sym":
        return _with_prediction(oracle.weil_sym_count(_ints(args.counts), args.n), None)
    raise UsageError(f"unknown oracle query {what!r}")


def _with_prediction(count, pred):
    out = {"count": count}
    if pred is not None:
        out["prediction"] = str(pred)
        out["agrees"] = count == pred
    return out


def cmd_verify(args, res):
    from .verify import verify_all

    if args.target != "all":
        raise UsageError("only `verify all` is available")
    stream = sys.stderr if args.format == "json" else sys.stdout
    report = verify_all(args.precision, args.budget, _catalog(args), args.jobs,
                        progress=(lambda i: print(f"[{i.status}] c{i.criterion} {i.name}: {i.detail}",
                                                  file=stream, flush=True)) if not args.quiet else None)
    for i in report.failed():
        res.diagnostics.append(f"FAIL {i.name}: {i.detail}")
    if not report.ok:
        res.status = "error"
        res.exit_code = 1
    out = report.to_dict()
    if args.format == "text":
        out.pop("items")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--precision", type=int, default=None,
                        help=f"series precision N (default 10, or ${PRECISION_ENV})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for oracle enumeration")
    common.add_argument("--config", help="JSON file with branching systems and finite groups")
    common.add_argument("--catalog", help="alternative group catalog JSON")

    p = _Parser(prog="motstab", description="Motivic stability calculator")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("class", cmd_class, "virtual class of a catalog group")
    sp.add_argument("name")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--genus", type=int)
    sp.add_argument("--leading", action="store_true")
    sp.add_argument("--details", action="store_true")

    sp = add("rep-surface", cmd_rep_surface, "class of Rep_G(M_g)")
    sp.add_argument("--group", required=True)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--leading", action="store_true")

    sp = add("limit", cmd_limit, "detect the limit of a sequence of classes")
    sp.add_argument("--expr", help="class expression in the index variable")
    sp.add_argument("--var", default="n")
    sp.add_argument("--group", help="run the Conjecture A check for a catalog group")
    sp.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    sp.add_argument("--nstart", type=int, default=1)
    sp.add_argument("--nmax", type=int, default=DEFAULT_N_MAX)
    sp.add_argument("--tolerance", type=str, default=None)

    for name, fn, help_ in (("sym", cmd_sym, "symmetric power of a polynomial class"),
                            ("sym-limit", cmd_sym_limit, "limit of Sym^n / q^(n dim)"),
                            ("zeta", cmd_zeta, "Kapranov zeta function")):
        sp = add(name, fn, help_)
        sp.add_argument("--class", dest="cls", required=True)
        if name == "sym":
            sp.add_argument("--n", type=int, required=True)

    sp = add("commuting", cmd_commuting, "class of commuting n-tuples")
    sp.add_argument("system", nargs="?", default="gl2")
    sp.add_argument("--n", type=int, required=True)

    sp = add("census", cmd_census, "class of the space of conjugacy classes")
    sp.add_argument("kind", nargs="?", default="glr")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--limit", action="store_true", help="report the r -> infinity limit")
    sp.add_argument("--rmax", type=int)

    sp = add("rank-stability", cmd_rank_stability, "limit of [C_2(GL_r)] / (q^r [GL_r])")
    sp.add_argument("--rmax", type=int)

    sp = add("frobenius", cmd_frobenius, "Frobenius count of surface-group homomorphisms")
    sp.add_argument("--group")
    sp.add_argument("--genus", type=int, default=1)
    sp.add_argument("--degrees")
    sp.add_argument("--order", type=int)
    sp.add_argument("--commutator-order", type=int)
    sp.add_argument("--ratios", type=int, metavar="GMAX")

    sp = add("kostka", cmd_kostka, "Kostka number or matrix")
    sp.add_argument("--mu")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--n", type=int)

    sp = add("decompose", cmd_decompose, "motivic decomposition from quotient classes")
    sp.add_argument("--n", type=int)
    sp.add_argument("--quotients")
    sp.add_argument("--cyclic", type=int)

    sp = add("repstab", cmd_repstab, "motivic representation stability of X^n")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--lambda", dest="lam", default="")

    sp = add("oracle", cmd_oracle, "brute-force finite-field counts")
    sp.add_argument("what", choices=("commuting", "surface", "census", "sym"))
    sp.add_argument("--group", default="GL2")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--genus", type=int, default=1)
    sp.add_argument("--counts", default="")
    sp.add_argument("--degrees")
    sp.add_argument("--order", type=int)
    sp.add_argument("--commutator-order", type=int)

    sp = add("verify", cmd_verify, "run the acceptance checks")
    sp.add_argument("target", nargs="?", default="all")
    sp.add_argument("--budget", choices=("small", "full"), default="full")
    sp.add_argument("--quiet", action="store_true")
    return p


def run(argv: Optional[List[str]] = None) -> CommandResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    res = CommandResult(command)
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError(build_parser().format_help())
        if args.precision is None:
            args.precision = _default_precision()
        res.payload = args.func(args, res)
    except UsageError as exc:
        res.status, res.exit_code = "error", 2
        res.diagnostics.append(f"UsageError: {exc}")
    except (MotstabError, ValueError, OSError, json.JSONDecodeError) as exc:
        res.status, res.exit_code = "error", 1
        res.diagnostics.append(f"{type(exc).__name__}: {exc}")
    return res


def _format_of(argv: List[str]) -> str:
    for i, a in enumerate(argv):
        if a == "--format" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--format="):
            return a.split("=", 1)[1]
    return "text"


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    res = run(argv)
    fmt = _format_of(argv)
    out = res.render(fmt if fmt in ("text", "json") else "text")
    stream = sys.stdout if res.status == "ok" or fmt == "json" else sys.stderr
    if out:
        print(out, file=stream)
    if fmt == "text" and res.status == "ok" and res.diagnostics:
        for d in res.diagnostics:
            print(d, file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
