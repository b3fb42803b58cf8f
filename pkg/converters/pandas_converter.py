import logging
import sys
from pathlib import Path
from typing import Optional

import pandas as pd

logger = logging.getLogger(__name__)


class CsvReportWriter:
    def __init__(
        self, save_path: Optional[Path] = None, float_format: Optional[str] = "%.10g"
    ) -> None:
        """
        :param save_path: Path to the output CSV, stdout when missing
        :param float_format: format applied to float columns
        """
        self.save_path = save_path
        self.float_format = float_format

    def write(self, data: pd.DataFrame) -> str:
        """header first, LF line endings, no index column"""
        text = data.to_csv(
            index=False, lineterminator="\n", float_format=self.float_format
        )
        if self.save_path is None:
            sys.stdout.write(text)
        else:
            self.save_path.write_text(text)
            logger.info(f"{len(data)} rows written to {self.save_path}")
        return text
