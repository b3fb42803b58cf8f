import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from config import VERSION

logger = logging.getLogger(__name__)


@dataclass
class ReportMeta:
    version: str
    range: Optional[list[int]]
    wall_time_seconds: Optional[float]

    @classmethod
    def from_dict(cls, data: dict) -> "ReportMeta":
        return cls(
            version=data["version"],
            range=data.get("range"),
            wall_time_seconds=data.get("wall_time_seconds"),
        )

    @classmethod
    def current(
        cls,
        value_range: Optional[list[int]] = None,
        wall_time: Optional[float] = None,
    ) -> "ReportMeta":
        return cls(version=VERSION, range=value_range, wall_time_seconds=wall_time)


@dataclass
class Report:
    meta: ReportMeta
    payload: dict

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        payload = {key: value for key, value in data.items() if key != "meta"}
        return cls(meta=ReportMeta.from_dict(data["meta"]), payload=payload)

    def to_dict(self) -> dict:
        return {"meta": asdict(self.meta)} | self.payload


class JsonReportConverter:
    def __init__(self, save_path: Optional[Path] = None) -> None:
        """
        :param save_path: Path to write the report to, stdout when missing
        """
        self.save_path = save_path

    def convert(self, report: Report) -> str:
        """serialize with sorted keys so equal reports give equal bytes"""
        text = json.dumps(report.to_dict(), indent=2, sort_keys=True, default=str)
        text += "\n"
        if self.save_path is None:
            sys.stdout.write(text)
        else:
            self.save_path.write_text(text)
            logger.info(f"Report written to {self.save_path}")
        return text

    @staticmethod
    def load(path: Path) -> Report:
        with open(path) as in_file:
            return Report.from_dict(json.load(in_file))
