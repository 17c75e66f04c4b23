"""
Command line front end: ``python -m app.cli {hall,quot,cartan} <command> [flags]``.

Results go to stdout (or --out FILE), logs to stderr. Exit codes:
0 verified or plain result, 1 unknown/inconclusive, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from pydantic import BaseModel

from app.config import get_settings
from app.core.cartan_service import CartanService
from app.core.hall_service import HallService
from app.core.hallcore import parse_word
from app.core.latpath import LatticeVec, parse_vec
from app.core.logging_config import get_logger, setup_logging
from app.core.quot_service import QuotService, records_to_csv
from app.core.relation_oracle import Window
from app.models.core import CountFamily, FiberStatus, Half, OutputMode, SeriesSign, Verdict
from app.schemas.hall import AlgElemRead
from app.schemas.quot import CountRecordRead

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_UNKNOWN = 1
EXIT_USAGE = 2

Result = Union[BaseModel, list[CountRecordRead]]


@dataclass
class Invocation:
    group: str
    subcommand: str
    flags: dict[str, object] = field(default_factory=dict)
    output_mode: OutputMode = OutputMode.HUMAN
    output_path: Optional[str] = None


def _int_list(text: str) -> list[int]:
    try:
        return [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _window(text: str) -> Window:
    try:
        return Window.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _vec(text: str) -> LatticeVec:
    try:
        return parse_vec(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _word(text: str) -> tuple[int, ...]:
    try:
        return parse_word(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _sign(text: str) -> SeriesSign:
    aliases = {"+": SeriesSign.PLUS, "plus": SeriesSign.PLUS, "-": SeriesSign.MINUS, "minus": SeriesSign.MINUS}
    if text not in aliases:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return aliases[text]


def _output_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", help="compact JSON output")
    mode.add_argument("--csv", action="store_true", help="CSV output (count rows only)")
    common.add_argument("--out", metavar="FILE", help="write the result to FILE instead of stdout")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
    return common


# -- hall -----------------------------------------------------------------


def _hall_empty_triangle(args: argparse.Namespace) -> BaseModel:
    service = HallService()
    if args.bound is not None:
        return service.empty_triangle_sweep(args.bound)
    if args.u is None or (args.v is None and args.j is None):
        raise ValueError("empty-triangle needs --u with --v or --j, or --bound")
    other = args.v if args.v is not None else LatticeVec(-1, args.j)
    if args.j is not None and not args.u.is_primitive:
        raise ValueError(f"vector {args.u} is not primitive")
    return service.empty_triangle(args.u, other, args.window)


HALL_HANDLERS: dict[str, Callable[[argparse.Namespace], BaseModel]] = {
    "enk": lambda a: HallService().enk(a.n, a.k),
    "mul": lambda a: HallService(a.half).multiply(a.a, a.b),
    "bracket": lambda a: HallService(a.half).bracket(a.word, a.k),
    "serre": lambda a: HallService().serre(a.k),
    "quadratic": lambda a: HallService().quadratic(a.m, a.n, a.window),
    "gary": lambda a: HallService().gary(),
    "empty-triangle": _hall_empty_triangle,
    "straighten": lambda a: HallService().straighten(a.path, a.window),
}


def _add_hall(subparsers, common: argparse.ArgumentParser) -> None:
    hall = subparsers.add_parser("hall", help="word calculus and identity checks")
    commands = hall.add_subparsers(dest="subcommand", required=True)

    enk = commands.add_parser("enk", parents=[common], help="tuple word of E_{-n,k}")
    enk.add_argument("-n", type=int, required=True)
    enk.add_argument("-k", type=int, required=True)

    mul = commands.add_parser("mul", parents=[common], help="product of two tuple words")
    mul.add_argument("--a", type=_word, required=True, help="entries like 0,1")
    mul.add_argument("--b", type=_word, required=True)
    mul.add_argument("--half", type=Half, choices=list(Half), default=Half.E)

    bracket = commands.add_parser("bracket", parents=[common], help="reduced bracket with E_k")
    bracket.add_argument("--word", type=_word, required=True)
    bracket.add_argument("-k", type=int, required=True)
    bracket.add_argument("--half", type=Half, choices=list(Half), default=Half.E)

    serre = commands.add_parser("serre", parents=[common], help="cubic Serre relation at k")
    serre.add_argument("-k", type=int, required=True)

    quadratic = commands.add_parser("quadratic", parents=[common], help="cubic E-E relation instance")
    quadratic.add_argument("-m", type=int, required=True)
    quadratic.add_argument("-n", type=int, required=True)
    quadratic.add_argument("--window", type=_window, default=None, help="maxlen,dmin,dmax")

    commands.add_parser("gary", parents=[common], help="[E_{-3,1}, E_{-2,1}]_red = E_{-5,2}")

    triangle = commands.add_parser("empty-triangle", parents=[common], help="empty-triangle commutator")
    triangle.add_argument("--u", type=_vec, default=None, help="(n,k) with n < 0")
    triangle.add_argument("--v", type=_vec, default=None)
    triangle.add_argument("--j", type=int, default=None, help="use v = (-1, j)")
    triangle.add_argument("--bound", type=int, default=None, help="check every (u, (-1,j)) pair up to bound")
    triangle.add_argument("--window", type=_window, default=None)

    straighten = commands.add_parser("straighten", parents=[common], help="expand over convex paths")
    straighten.add_argument("--path", required=True, help="(n,k);(n,k);...")
    straighten.add_argument("--window", type=_window, default=None)


# -- quot -----------------------------------------------------------------


def _locus(args: argparse.Namespace) -> list[CountRecordRead]:
    service = QuotService()
    if args.kind == "L":
        if args.n is None or args.lam is None:
            raise ValueError("locus L needs --n and --lam")
        return service.count(CountFamily.LOCUS_L, args.q, n=args.n, lam=args.lam)
    if args.d is None or args.mu is None or args.r is None:
        raise ValueError("locus M needs --d, --mu and --r")
    return service.count(CountFamily.LOCUS_M, args.q, d=args.d, mu=args.mu, r=args.r)


def _fit(args: argparse.Namespace) -> BaseModel:
    params = {
        name: getattr(args, name)
        for name in ("n", "d", "r", "lam", "mu")
        if getattr(args, name) is not None
    }
    return QuotService().fit(args.family, args.qs, args.holdout, **params)


QUOT_HANDLERS: dict[str, Callable[[argparse.Namespace], Result]] = {
    "comm": lambda a: QuotService().count(CountFamily.COMM, a.q, n=a.n),
    "comm4-components": lambda a: QuotService().comm4_components(a.q),
    "quot": lambda a: QuotService().count(CountFamily.QUOT, a.q, d=a.d, r=a.r),
    "quot-flag": lambda a: QuotService().count(CountFamily.QUOT_FLAG, a.q, d=a.d, n=a.n, r=a.r),
    "locus": _locus,
    "fit": _fit,
    "fiber-check": lambda a: QuotService().fiber_check(a.d, a.n, a.r, a.qs),
}


def _add_quot(subparsers, common: argparse.ArgumentParser) -> None:
    quot = subparsers.add_parser("quot", help="finite-field point counts")
    commands = quot.add_subparsers(dest="subcommand", required=True)

    comm = commands.add_parser("comm", parents=[common], help="|Comm_n(F_q)|")
    comm.add_argument("--n", type=int, required=True)
    comm.add_argument("--q", type=_int_list, required=True, help="prime or comma list")

    comm4 = commands.add_parser("comm4-components", parents=[common], help="Z1 and open Z2 of Comm_4")
    comm4.add_argument("--q", type=int, required=True, help="a single prime")

    quot_cmd = commands.add_parser("quot", parents=[common], help="|Quot_d(F_q)|")
    quot_cmd.add_argument("--d", type=int, required=True)
    quot_cmd.add_argument("--r", type=int, required=True)
    quot_cmd.add_argument("--q", type=_int_list, required=True)

    flag = commands.add_parser("quot-flag", parents=[common], help="flag Quot scheme count")
    flag.add_argument("--d", type=int, required=True)
    flag.add_argument("--n", type=int, required=True)
    flag.add_argument("--r", type=int, required=True)
    flag.add_argument("--q", type=_int_list, required=True)

    locus = commands.add_parser("locus", parents=[common], help="L or M defect loci")
    locus.add_argument("--kind", choices=["L", "M"], required=True)
    locus.add_argument("--n", type=int)
    locus.add_argument("--lam", type=int)
    locus.add_argument("--d", type=int)
    locus.add_argument("--mu", type=int)
    locus.add_argument("--r", type=int)
    locus.add_argument("--q", type=_int_list, required=True)

    fit = commands.add_parser("fit", parents=[common], help="interpolate counts over primes")
    fit.add_argument("--family", type=CountFamily, choices=list(CountFamily), required=True)
    fit.add_argument("--n", type=int)
    fit.add_argument("--d", type=int)
    fit.add_argument("--r", type=int)
    fit.add_argument("--lam", type=int)
    fit.add_argument("--mu", type=int)
    fit.add_argument("--qs", type=_int_list, required=True)
    fit.add_argument("--holdout", type=int, required=True)

    fiber = commands.add_parser("fiber-check", parents=[common], help="flag Quot dimension bounds")
    fiber.add_argument("--d", type=int, required=True)
    fiber.add_argument("--n", type=int, required=True)
    fiber.add_argument("--r", type=int, required=True)
    fiber.add_argument("--qs", type=_int_list, required=True, help="samples then holdout")


# -- cartan ---------------------------------------------------------------


CARTAN_HANDLERS: dict[str, Callable[[argparse.Namespace], BaseModel]] = {
    "h": lambda a: CartanService().h_series(a.sign, a.length),
    "p-from-e": lambda a: CartanService().plethystic(a.ray, a.length, a.inverse),
    "heisenberg": lambda a: CartanService().heisenberg(a.u, a.v, a.r),
    "ef-bracket": lambda a: CartanService().ef_bracket(a.k, a.l, a.r),
}


def _add_cartan(subparsers, common: argparse.ArgumentParser) -> None:
    cartan = subparsers.add_parser("cartan", help="Cartan-sector series and brackets")
    commands = cartan.add_subparsers(dest="subcommand", required=True)

    h = commands.add_parser("h", parents=[common], help="H coefficients from E_{0,l}")
    h.add_argument("--sign", type=_sign, default=SeriesSign.PLUS)
    h.add_argument("--length", type=int, default=3)

    plethystic = commands.add_parser("p-from-e", parents=[common], help="P <-> E conversion on a ray")
    plethystic.add_argument("--ray", type=_vec, required=True)
    plethystic.add_argument("--length", type=int, default=3)
    plethystic.add_argument("--inverse", action="store_true", help="convert P to E instead")

    heisenberg = commands.add_parser("heisenberg", parents=[common], help="[P_u, P_v]")
    heisenberg.add_argument("--u", type=_vec, required=True)
    heisenberg.add_argument("--v", type=_vec, required=True)
    heisenberg.add_argument("--r", type=int, default=None, help="set c = q^r")

    ef = commands.add_parser("ef-bracket", parents=[common], help="right side of [E_k, F_l]")
    ef.add_argument("-k", type=int, required=True)
    ef.add_argument("-l", type=int, required=True)
    ef.add_argument("--r", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hall-lab", description=get_settings().app_name)
    common = _output_flags()
    groups = parser.add_subparsers(dest="group", required=True)
    _add_hall(groups, common)
    _add_quot(groups, common)
    _add_cartan(groups, common)
    return parser


HANDLERS = {"hall": HALL_HANDLERS, "quot": QUOT_HANDLERS, "cartan": CARTAN_HANDLERS}


# -- rendering ------------------------------------------------------------


def _render_alg(element: AlgElemRead) -> str:
    if not element.terms:
        return "0"
    return " + ".join(f"({term.coef})*E{term.word}" for term in element.terms)


def render(result: Result, mode: OutputMode) -> str:
    if isinstance(result, list):
        if mode is OutputMode.JSON:
            payload = [record.model_dump(mode="json", by_alias=True) for record in result]
            return json.dumps(payload, separators=(",", ":"))
        text = records_to_csv(result)
        if mode is OutputMode.HUMAN:
            # data rows only
            text = text.split("\n", 1)[1]
        return text.rstrip("\n")
    if mode is OutputMode.CSV:
        raise ValueError("--csv applies to count rows only")
    if mode is OutputMode.JSON:
        return result.model_dump_json(by_alias=True)
    if isinstance(result, AlgElemRead):
        return _render_alg(result)
    lines = []
    for name, value in result:
        if isinstance(value, AlgElemRead):
            value = _render_alg(value)
        elif isinstance(value, BaseModel):
            value = value.model_dump_json(by_alias=True)
        elif isinstance(value, list):
            value = json.dumps(
                [v.model_dump(mode="json") if isinstance(v, BaseModel) else v for v in value],
                separators=(",", ":"),
            )
        elif hasattr(value, "value"):
            value = value.value
        lines.append(f"{name}: {value}")
    return "\n".join(lines)


def exit_code(result: Result) -> int:
    if isinstance(result, list):
        return EXIT_OK
    verdict = getattr(result, "verdict", None)
    if verdict is not None and verdict is not Verdict.VERIFIED:
        return EXIT_UNKNOWN
    status = getattr(result, "status", None)
    if status is not None and status is not FiberStatus.CONFIRMED:
        return EXIT_UNKNOWN
    fit = getattr(result, "fit", None)
    if fit is not None and not fit.holdout_ok:
        return EXIT_UNKNOWN
    return EXIT_OK


def _invocation(args: argparse.Namespace) -> Invocation:
    mode = OutputMode.JSON if args.json else OutputMode.CSV if args.csv else OutputMode.HUMAN
    reserved = {"group", "subcommand", "json", "csv", "out", "log_level"}
    flags = {name: value for name, value in vars(args).items() if name not in reserved}
    return Invocation(args.group, args.subcommand, flags, mode, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    setup_logging(
        log_level=args.log_level or settings.log_level,
        log_format=settings.log_format,
        include_timestamp=True,
        stream=sys.stderr,
    )
    invocation = _invocation(args)
    logger.debug(f"Invocation: {invocation}")
    try:
        result = HANDLERS[invocation.group][invocation.subcommand](args)
        text = render(result, invocation.output_mode)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"Internal check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNKNOWN

    if invocation.output_path:
        with open(invocation.output_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
