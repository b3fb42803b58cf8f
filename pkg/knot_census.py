import logging
import sys
import time
from collections import Counter
from collections.abc import Sequence
from typing import Callable, Final, Optional

import numpy as np
import pandas as pd

from census.census_table import CensusTable, census
from census.densities import lattice_count_s_d, local_density, mertens_product
from census.heuristic_fit import heuristic_fit
from census.totals import gauss_total, siegel_total
from config import Config
from converters.json_converter import JsonReportConverter, Report, ReportMeta
from converters.pandas_converter import CsvReportWriter
from enums import OutputFormat
from exceptions import CapacityError, KnotCensusError
from forms.quad_form import QuadForm
from heuristics.abelian_groups import FiniteAbelianGroup
from heuristics.cohen_lenstra import (
    build_distribution,
    constrained_sample,
    empirical_law,
    moment,
    quotient_distribution,
    sample_quotients,
)
from heuristics.gerth import gerth_comparison
from localization.knot_count import knot_count, orbit_id
from localization.oracle import brute_force_localized_equivalent
from metric_functions import METRICS
from parsers.argument_parser import build_parser
from seifert.seifert_matrix import (
    SeifertMatrix,
    alexander_polynomial,
    random_seifert,
    s_equivalent,
    seifert_to_form,
)
from utils import load_census_csv

logger = logging.getLogger(__name__)

EXIT_SUCCESS: Final[int] = 0
EXIT_USAGE: Final[int] = 1
EXIT_CAPACITY: Final[int] = 2

EXACT_MERTENS_LIMIT: Final[int] = 1000


class CensusRunner:
    def __init__(self, config: Config) -> None:
        """
        :param config: validated command line configuration
        """
        self.config = config
        self.started = time.perf_counter()

    def run(self) -> None:
        handlers: dict[str, Callable[[], None]] = {
            "count": self.count,
            "census": self.census,
            "fit": self.fit,
            "density": self.density,
            "lattice": self.lattice,
            "mertens": self.mertens,
            "totals": self.totals,
            "cl": self.cohen_lenstra,
            "seifert": self.seifert,
            "oracle": self.oracle,
        }
        handlers[self.config.command]()

    def _emit(
        self,
        payload: dict,
        rows: Optional[pd.DataFrame] = None,
        value_range: Optional[list[int]] = None,
    ) -> None:
        if self.config.format == OutputFormat.CSV and rows is not None:
            CsvReportWriter(self.config.out).write(rows)
            return
        wall_time = None
        if self.config.timing:
            wall_time = round(time.perf_counter() - self.started, 3)
        meta = ReportMeta.current(value_range, wall_time)
        JsonReportConverter(self.config.out).convert(Report(meta, payload))

    def count(self) -> None:
        result = knot_count(self.config.m)
        strata = pd.DataFrame([stratum.to_dict() for stratum in result.strata])
        self._emit(result.to_dict(), strata, [self.config.m, self.config.m])

    def census(self) -> None:
        table = census(
            self.config.m_from,
            self.config.m_to,
            self.config.workers,
            self.config.structure,
        )
        data = table.to_data_frame()
        payload = table.to_summary() | {"table": data.to_dict(orient="records")}
        self._emit(payload, data, [self.config.m_from, self.config.m_to])

    def fit(self) -> None:
        checkpoints = self.config.checkpoints
        if self.config.census_path is not None:
            data = load_census_csv(self.config.census_path)
            table = CensusTable.from_data_frame(data)
        else:
            x = self.config.m_to or checkpoints[-1]
            table = census(-x, x, self.config.workers, with_structure=False)
        result = heuristic_fit(table, checkpoints)
        CsvReportWriter(self.config.out).write(result.to_data_frame())

    def density(self) -> None:
        result = local_density(self.config.d)
        payload = {
            "d": result.d,
            "count": result.count,
            "density": str(result.density),
            "density_float": float(result.density),
            "expected_count": str(result.expected_count),
        }
        self._emit(payload, pd.DataFrame([payload]))

    def lattice(self) -> None:
        payload = {
            "X": self.config.x,
            "d": self.config.d,
            "count": lattice_count_s_d(self.config.x, self.config.d),
        }
        self._emit(payload, pd.DataFrame([payload]))

    def mertens(self) -> None:
        payload = {"Z": self.config.z, "value": mertens_product(self.config.z)}
        if self.config.z <= EXACT_MERTENS_LIMIT:
            payload["exact"] = str(mertens_product(self.config.z, exact=True))
        self._emit(payload, pd.DataFrame([payload]))

    def totals(self) -> None:
        payload = {
            "X": self.config.x,
            "gauss_total": gauss_total(self.config.x),
            "siegel_total": siegel_total(self.config.x),
        }
        self._emit(payload, pd.DataFrame([payload]))

    def cohen_lenstra(self) -> None:
        config = self.config
        if config.action == "gerth":
            comparison = gerth_comparison(range(2, config.m_to + 1))
            CsvReportWriter(config.out).write(comparison)
            return
        distribution = build_distribution(config.u, config.truncation)
        if config.action == "moment":
            target = FiniteAbelianGroup.from_cyclic_orders(config.target)
            value = moment(distribution, target)
            payload = {
                "u": config.u,
                "B": config.truncation,
                "target": str(target),
                "moment": str(value),
                "moment_float": float(value),
            }
            self._emit(payload, pd.DataFrame([payload]))
            return

        if config.exponents:
            logger.info(
                f"Constrained sampling of {config.samples} quotients "
                f"with relation {config.exponents}, seed={config.seed}"
            )
            rng = np.random.default_rng(config.seed)
            counts = Counter(
                constrained_sample(distribution, config.exponents, rng)
                for _ in range(config.samples)
            )
        else:
            counts = sample_quotients(
                distribution, config.k, config.samples, config.seed
            )
        empirical = empirical_law(counts)
        shifted_law = build_distribution(config.u + config.k, config.truncation).law()
        shifted = {g: float(w) for g, w in shifted_law.items()}
        payload = {
            "u": config.u,
            "k": config.k,
            "B": config.truncation,
            "n": config.samples,
            "seed": config.seed,
            "frequencies": {str(g): p for g, p in sorted(empirical.items())},
            "tv_shifted": METRICS["total_variation"](empirical, shifted),
        }
        if not config.exponents:
            exact_law = quotient_distribution(distribution, config.k)
            exact = {g: float(w) for g, w in exact_law.items()}
            payload["tv_exact"] = METRICS["total_variation"](empirical, exact)
            payload["chi_square_p_value"] = METRICS["chi_square_p_value"](counts, exact)
        rows = pd.DataFrame(
            {"group": str(g), "observed": p, "shifted": shifted.get(g, 0.0)}
            for g, p in sorted(empirical.items())
        )
        self._emit(payload, rows)

    def seifert(self) -> None:
        config = self.config
        if config.action == "random":
            matrices = random_seifert(config.m, config.count, config.seed)
            payload = {
                "m": config.m,
                "seed": config.seed,
                "matrices": [list(map(list, p.entries)) for p in matrices],
            }
            rows = pd.DataFrame(
                {"a": p.entries[0][0], "b": p.entries[0][1], "c": p.entries[1][1]}
                for p in matrices
            )
            self._emit(payload, rows)
            return
        first = SeifertMatrix.from_rows(config.p1)
        if config.action == "poly":
            polynomial = alexander_polynomial(first)
            payload = {
                "coefficients": list(polynomial.coefficients),
                "polynomial": str(polynomial),
            }
        elif config.action == "form":
            form = seifert_to_form(first)
            payload = {
                "form": [form.a, form.b, form.c],
                "discriminant": form.discriminant(),
                "m": first.determinant,
            }
        else:
            second = SeifertMatrix.from_rows(config.p2)
            m = first.determinant
            payload = {
                "m": m,
                "s_equivalent": s_equivalent(first, second),
                "orbit_ids": [
                    orbit_id(seifert_to_form(p), m).to_dict() for p in (first, second)
                ],
            }
        self._emit(payload)

    def oracle(self) -> None:
        config = self.config
        first, second = QuadForm(*config.q1), QuadForm(*config.q2)
        result = brute_force_localized_equivalent(
            first, second, config.m, config.k_max, config.height_max
        )
        payload = {
            "m": config.m,
            "q1": str(first),
            "q2": str(second),
            "equivalent": result.equivalent,
            "classes_reached": result.classes_reached,
            "witness": None,
        }
        if result.witness is not None:
            payload["witness"] = {
                "matrix": [list(row) for row in result.witness.matrix.rows()],
                "exponent": result.witness.exponent,
            }
        self._emit(payload)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    :param argv: command line without the program name
    :return: 0 on success, 1 on bad usage or invalid input,
        2 when a capacity bound is hit
    """
    try:
        namespace = build_parser().parse_args(argv)
        level = logging.WARNING
        if namespace.verbose:
            level = logging.DEBUG if namespace.verbose > 1 else logging.INFO
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        CensusRunner(Config.from_namespace(namespace)).run()
    except CapacityError as error:
        print(f"capacity exceeded: {error}", file=sys.stderr)
        return EXIT_CAPACITY
    except KnotCensusError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    return EXIT_SUCCESS


if __name__ == "__main__":
    sys.exit(run())
