"""Command-line interface.

    crysalite analyze --prime 5 --vars x0,x1 --poly "x0*x1" --nmax 10
    crysalite verify wedge-closed-form --prime 7 --vars x0,x1,x2 --poly "x0^3+x1^3+x2^3" --n 5
    crysalite verify low-degree --N 2 --d 6
    crysalite verify koszul|euler|special-fiber ...
    crysalite report certificate --prime 5 --vars x0,x1,x2 --poly "x0^2+x1^2+x2^2" --nmax 10

Exit status 0 on success, 1 when a mathematical hypothesis guard fails or a
verification does not match, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from . import serialize
from .conjugate import crys_dimensions, infinite_generation_certificate, low_degree_check
from .cotangent import (
    closed_form_wedge,
    profile_of,
    special_fiber_dims,
    wedge_cohomology,
    wedge_term_ranks,
)
from .errors import ConditionalCertificateWarning, HypothesisError, InputError, NotSmooth
from .fieldlin import check_prime
from .komplex import cohomology_table, koszul
from .polyring import HypersurfaceRing, euler_identity_check

FORMATS = ("table", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    prime: int | None = None
    names: tuple[str, ...] = ()
    poly: str | None = None
    n_max: int | None = None
    w_max: int | None = None
    n: int | None = None
    N: int | None = None
    d: int | None = None
    format: str = "table"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(flag: str):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag}: expected an integer, got {text!r}") from None
        if v < 0:
            raise argparse.ArgumentTypeError(f"{flag}: must be nonnegative, got {v}")
        return v

    return conv


def _vars(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(","))
    if not all(names):
        raise argparse.ArgumentTypeError(f"--vars: empty variable name in {text!r}")
    return names


def _ring_args(p: argparse.ArgumentParser, need_poly: bool = True) -> None:
    p.add_argument("--prime", type=_prime, required=need_poly)
    p.add_argument("--vars", type=_vars, required=need_poly)
    p.add_argument("--poly", required=need_poly)


def _format_arg(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--format", choices=FORMATS, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crysalite", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    an = sub.add_parser("analyze", help="conjugate-filtration dimension tables")
    _ring_args(an)
    an.add_argument("--nmax", type=_positive("--nmax"), required=True)
    an.add_argument("--wmax", type=_positive("--wmax"))
    _format_arg(an, "json")

    ver = sub.add_parser("verify", help="single cross-checks")
    vsub = ver.add_subparsers(dest="check", required=True, parser_class=_Parser)
    wc = vsub.add_parser("wedge-closed-form")
    _ring_args(wc)
    wc.add_argument("--n", type=_positive("--n"), required=True)
    _format_arg(wc, "table")
    ld = vsub.add_parser("low-degree")
    ld.add_argument("--N", type=_positive("--N"), required=True)
    ld.add_argument("--d", type=_positive("--d"), required=True)
    _format_arg(ld, "table")
    ko = vsub.add_parser("koszul")
    _ring_args(ko)
    _format_arg(ko, "table")
    eu = vsub.add_parser("euler")
    _ring_args(eu)
    _format_arg(eu, "table")
    sf = vsub.add_parser("special-fiber")
    _ring_args(sf, need_poly=False)
    sf.add_argument("--n", type=_positive("--n"), required=True)
    sf.add_argument("--N", type=_positive("--N"))
    _format_arg(sf, "table")

    rep = sub.add_parser("report", help="certificates")
    rsub = rep.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ce = rsub.add_parser("certificate")
    _ring_args(ce)
    ce.add_argument("--nmax", type=_positive("--nmax"), required=True)
    _format_arg(ce, "json")
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    sub = ns.command
    if sub == "verify":
        sub = f"verify {ns.check}"
    elif sub == "report":
        sub = f"report {ns.kind}"
    n_max = getattr(ns, "nmax", None)
    if n_max is not None and n_max < 1:
        raise UsageError("--nmax: must be at least 1")
    return RunConfig(
        subcommand=sub,
        prime=getattr(ns, "prime", None),
        names=getattr(ns, "vars", None) or (),
        poly=getattr(ns, "poly", None),
        n_max=n_max,
        w_max=getattr(ns, "wmax", None),
        n=getattr(ns, "n", None),
        N=getattr(ns, "N", None),
        d=getattr(ns, "d", None),
        format=ns.format,
    )


def _ring(cfg: RunConfig) -> HypersurfaceRing:
    return HypersurfaceRing.from_text(cfg.poly, cfg.names, cfg.prime)


def _emit(out, cfg: RunConfig, verdict: str, payload: dict) -> None:
    if cfg.format == "json":
        out.write(json.dumps({"result": verdict, **payload}, indent=2) + "\n")
    elif cfg.format == "csv":
        out.write("key,value\n")
        out.write(f"result,{verdict}\n")
        for k, v in payload.items():
            out.write(f"{k},{json.dumps(v).replace(',', ';')}\n")
    else:
        out.write(verdict + "\n")


def _entries(t) -> list[list[int]]:
    return [[i, w, v] for (i, w), v in sorted(t.dims.items())]


def _run(cfg: RunConfig, out) -> int:
    sub = cfg.subcommand
    if sub == "analyze":
        R = _ring(cfg)
        if cfg.n_max < R.nvars:
            raise UsageError(f"--nmax: must be at least the number of variables ({R.nvars})")
        rep = crys_dimensions(R, cfg.n_max, cfg.w_max)
        writer = {
            "json": serialize.report_to_json,
            "csv": serialize.report_to_csv,
            "table": serialize.report_to_table,
        }[cfg.format]
        out.write(writer(rep))
        return 0

    if sub == "verify low-degree":
        _emit(out, cfg, "true" if low_degree_check(cfg.N, cfg.d) else "false", {"N": cfg.N, "d": cfg.d})
        return 0

    if sub == "verify wedge-closed-form":
        R = _ring(cfg)
        closed = closed_form_wedge(R, cfg.n)
        direct = wedge_cohomology(R, cfg.n)
        ok = direct.is_complete() and direct.same_entries(closed)
        _emit(out, cfg, "MATCH" if ok else "MISMATCH",
              {"n": cfg.n, "direct": _entries(direct), "closed_form": _entries(closed)})
        return 0 if ok else 1

    if sub == "verify koszul":
        R = _ring(cfg)
        prof = profile_of(R)
        if not prof.finite_length:
            raise NotSmooth("the partials do not cut out a finite-length Jacobian ring")
        K = koszul(R.partials(), R.algebra, degree=R.d - 1)
        top_m = prof.m_table.top_weight()
        table = cohomology_table(K, support=(0, (top_m if top_m is not None else -R.d) + R.d))
        m = prof.m_table
        ok = table.in_degree(0) == m.dims and table.in_degree(-1) == m.twist(-R.d).dims and all(
            table.total(i) == 0 for i in table.degrees() if i not in (0, -1)
        )
        _emit(out, cfg, "MATCH" if ok else "MISMATCH",
              {"H0": table.in_degree(0), "H-1": table.in_degree(-1), "M": dict(m.dims)})
        return 0 if ok else 1

    if sub == "verify euler":
        R = _ring(cfg)
        ident = euler_identity_check(R.f)
        prof = profile_of(R)
        _emit(out, cfg, "true" if ident else "false",
              {"euler_identity": ident, "f_in_jacobian": prof.euler_member,
               "p_divides_d": prof.p_divides_d})
        return 0

    if sub == "verify special-fiber":
        if cfg.poly is None:
            if cfg.N is None:
                raise UsageError("verify special-fiber: give --poly (with --prime, --vars) or --N")
            prof = special_fiber_dims(cfg.N, 1, cfg.n)
            _emit(out, cfg, " ".join(f"{k}:{v}" for k, v in sorted(prof.dims.items())),
                  {"dims": {str(k): v for k, v in sorted(prof.dims.items())}})
            return 0
        if cfg.prime is None or not cfg.names:
            raise UsageError("verify special-fiber: --poly needs --prime and --vars")
        R = _ring(cfg)
        ranks = wedge_term_ranks(R, cfg.n)
        expect = dict(special_fiber_dims(R.nvars, 1, cfg.n).dims)
        ok = ranks == expect
        _emit(out, cfg, "MATCH" if ok else "MISMATCH",
              {"term_ranks": {str(k): v for k, v in sorted(ranks.items())},
               "special_fiber": {str(k): v for k, v in sorted(expect.items())}})
        return 0 if ok else 1

    if sub == "report certificate":
        R = _ring(cfg)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConditionalCertificateWarning)
            cert = infinite_generation_certificate(R, cfg.n_max)
        writer = {
            "json": serialize.certificate_to_json,
            "csv": serialize.certificate_to_csv,
            "table": serialize.certificate_to_table,
        }[cfg.format]
        out.write(writer(cert))
        return 0

    raise UsageError(f"unknown subcommand {sub!r}")


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg = parse_config(argv)
        return _run(cfg, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except InputError as exc:
        err.write(f"error: --poly: {exc}\n")
        return 2
    except HypothesisError as exc:
        err.write(f"hypothesis violated: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


__all__ = ["RunConfig", "build_parser", "main", "parse_config", "run"]
