import re
from argparse import ArgumentParser
from pathlib import Path
from typing import Final, NoReturn

from config import (
    DEFAULT_CHECKPOINTS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TRUNCATION,
    ORACLE_K_MAX,
    default_workers,
)
from enums import OutputFormat
from exceptions import UsageError

INTEGER: Final[re.Pattern] = re.compile(r"^[+-]?\d+$")


def parse_integers(text: str) -> tuple[int, ...]:
    """
    "10,100, 1000" -> (10, 100, 1000)
    """
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts or not all(INTEGER.match(part) for part in parts):
        raise UsageError(f"expected comma separated integers, got {text!r}")
    return tuple(int(part) for part in parts)


def parse_form(text: str) -> tuple[int, int, int]:
    """
    "2,-1,3" -> (2, -1, 3)
    """
    values = parse_integers(text.strip("()[] "))
    if len(values) != 3:
        raise UsageError(f"a form has three coefficients, got {text!r}")
    return values


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    """
    rows separated by semicolons
    "1,1;0,1" -> ((1, 1), (0, 1))
    """
    rows = tuple(parse_integers(row) for row in text.split(";"))
    if len({len(row) for row in rows}) != 1:
        raise UsageError(f"matrix rows differ in length: {text!r}")
    return rows


class ArgumentParserWithUsageError(ArgumentParser):
    """argparse reports bad usage by raising instead of exiting with status 2"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _add_output_arguments(
    parser: ArgumentParser, default_format: OutputFormat = OutputFormat.JSON
) -> None:
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument(
        "--format", choices=OutputFormat.list(), default=default_format.value
    )
    parser.add_argument("--no-timing", dest="timing", action="store_false")


def _add_commands(parser: ArgumentParser, dest: str):
    return parser.add_subparsers(
        dest=dest, required=True, parser_class=ArgumentParserWithUsageError
    )


def build_parser() -> ArgumentParser:
    parser = ArgumentParserWithUsageError(
        prog="knot_census", description="Census of genus one simple knots"
    )
    parser.add_argument("--verbose", "-v", action="count", default=0)
    commands = _add_commands(parser, "command")

    count = commands.add_parser("count", help="localized class count for one m")
    count.add_argument("--m", type=int, required=True)
    _add_output_arguments(count)

    census = commands.add_parser("census", help="counts for every m in a range")
    census.add_argument("--from", dest="m_from", type=int, required=True)
    census.add_argument("--to", dest="m_to", type=int, required=True)
    census.add_argument("--workers", type=int, default=default_workers())
    census.add_argument("--no-structure", dest="structure", action="store_false")
    _add_output_arguments(census, OutputFormat.CSV)

    fit = commands.add_parser(
        "fit", help="stratum totals against their heuristic growth"
    )
    fit.add_argument("--to", dest="m_to", type=int, default=None)
    fit.add_argument(
        "--checkpoints", type=parse_integers, default=DEFAULT_CHECKPOINTS
    )
    fit.add_argument("--census", dest="census_path", type=Path, default=None)
    fit.add_argument("--workers", type=int, default=default_workers())
    fit.add_argument("--out", type=Path, default=None)

    density = commands.add_parser("density", help="local density at a squarefree d")
    density.add_argument("--d", type=int, required=True)
    _add_output_arguments(density)

    lattice = commands.add_parser(
        "lattice", help="reduced forms with X <= m <= 2X and d | m"
    )
    lattice.add_argument("--X", dest="x", type=int, required=True)
    lattice.add_argument("--d", type=int, default=1)
    _add_output_arguments(lattice)

    mertens = commands.add_parser(
        "mertens", help="product of 1 - (p + 1)/p^2 over p < Z"
    )
    mertens.add_argument("--Z", dest="z", type=int, required=True)
    _add_output_arguments(mertens)

    totals = commands.add_parser(
        "totals", help="class number and class number times regulator sums"
    )
    totals.add_argument("--X", dest="x", type=int, required=True)
    _add_output_arguments(totals)

    cl = commands.add_parser("cl", help="Cohen-Lenstra sampling and moments")
    cl_commands = _add_commands(cl, "action")
    sample = cl_commands.add_parser(
        "sample", help="quotients of mu^u random groups by k random elements"
    )
    sample.add_argument("--u", type=int, default=0)
    sample.add_argument("--k", type=int, default=1)
    sample.add_argument(
        "--B", dest="truncation", type=int, default=DEFAULT_TRUNCATION
    )
    sample.add_argument("--n", dest="samples", type=int, default=DEFAULT_SAMPLES)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sample.add_argument(
        "--relation", dest="exponents", type=parse_integers, default=None
    )
    _add_output_arguments(sample)
    cl_moment = cl_commands.add_parser(
        "moment", help="expected number of surjections onto a target group under mu^u"
    )
    cl_moment.add_argument("--u", type=int, default=0)
    cl_moment.add_argument("--target", type=parse_integers, required=True)
    cl_moment.add_argument(
        "--B", dest="truncation", type=int, default=DEFAULT_TRUNCATION
    )
    _add_output_arguments(cl_moment)
    gerth = cl_commands.add_parser(
        "gerth", help="principal genus of Cl(1 - 4m) against mu^0"
    )
    gerth.add_argument("--to", dest="m_to", type=int, required=True)
    gerth.add_argument("--out", type=Path, default=None)

    seifert = commands.add_parser("seifert", help="Seifert matrix utilities")
    seifert_commands = _add_commands(seifert, "action")
    matrix_actions = {
        "poly": "Alexander polynomial det(tP - P^T)",
        "form": "binary quadratic form of the symmetrized matrix (P + P^T) / 2",
    }
    for name, text in matrix_actions.items():
        action = seifert_commands.add_parser(name, help=text)
        action.add_argument("--matrix", dest="p1", type=parse_matrix, required=True)
        _add_output_arguments(action)
    sequiv = seifert_commands.add_parser(
        "sequiv", help="S-equivalence of two Seifert matrices over Z[1/m]"
    )
    sequiv.add_argument("--p1", type=parse_matrix, required=True)
    sequiv.add_argument("--p2", type=parse_matrix, required=True)
    _add_output_arguments(sequiv)
    random_matrices = seifert_commands.add_parser(
        "random",
        help="random Seifert matrices with Alexander polynomial mt^2 + (1 - 2m)t + m",
    )
    random_matrices.add_argument("--m", type=int, required=True)
    random_matrices.add_argument("--count", type=int, default=1)
    random_matrices.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_output_arguments(random_matrices)

    oracle = commands.add_parser(
        "oracle", help="bounded search for a localized equivalence"
    )
    oracle.add_argument("--m", type=int, required=True)
    oracle.add_argument("--q1", type=parse_form, required=True)
    oracle.add_argument("--q2", type=parse_form, required=True)
    oracle.add_argument("--k-max", dest="k_max", type=int, default=ORACLE_K_MAX)
    oracle.add_argument("--height-max", dest="height_max", type=int, default=None)
    _add_output_arguments(oracle)

    return parser
