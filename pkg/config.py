import os
from argparse import Namespace
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Final, Optional

from enums import OutputFormat
from exceptions import UsageError

VERSION: Final[str] = "0.3.0"

INT128_BOUND: Final[int] = 2**127
MAX_FORM_M: Final[int] = 2**40
MAX_CENSUS_M: Final[int] = 10**6
MAX_REGULATOR_M: Final[int] = 10**5
MAX_GROUP_DISC: Final[int] = 10**7
MAX_CL_BOUND: Final[int] = 10**4

ORACLE_K_MAX: Final[int] = 2
ORACLE_HEIGHT_FACTOR: Final[int] = 10

DEFAULT_SEED: Final[int] = 1353
DEFAULT_TRUNCATION: Final[int] = 64
DEFAULT_SAMPLES: Final[int] = 10**5
DEFAULT_CHECKPOINTS: Final[tuple[int, ...]] = (10**2, 10**3, 10**4)

WORKERS_ENV_VAR: Final[str] = "KNOT_CENSUS_WORKERS"


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV_VAR}={raw!r} is not an integer")
    if workers < 1:
        raise UsageError(f"{WORKERS_ENV_VAR} must be at least 1, got {workers}")
    return workers


@dataclass
class Config:
    command: str
    action: Optional[str] = None
    m: Optional[int] = None
    m_from: Optional[int] = None
    m_to: Optional[int] = None
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.CSV
    workers: int = 1
    structure: bool = True
    timing: bool = True
    k_max: int = ORACLE_K_MAX
    height_max: Optional[int] = None
    seed: int = DEFAULT_SEED
    truncation: int = DEFAULT_TRUNCATION
    samples: int = DEFAULT_SAMPLES
    u: int = 0
    k: int = 1
    target: tuple[int, ...] = ()
    exponents: tuple[int, ...] = ()
    checkpoints: tuple[int, ...] = DEFAULT_CHECKPOINTS
    census_path: Optional[Path] = None
    d: Optional[int] = None
    x: Optional[int] = None
    z: Optional[int] = None
    count: int = 1
    q1: Optional[tuple[int, int, int]] = None
    q2: Optional[tuple[int, int, int]] = None
    p1: Optional[tuple[tuple[int, ...], ...]] = None
    p2: Optional[tuple[tuple[int, ...], ...]] = None

    @classmethod
    def from_namespace(cls, namespace: Namespace) -> "Config":
        known = {f.name for f in fields(cls)}
        values = {
            name: value
            for name, value in vars(namespace).items()
            if name in known and value is not None
        }
        return cls(**values)

    def __post_init__(self) -> None:
        """validate before any computation happens"""
        self.format = OutputFormat(self.format)
        if self.command in ("count", "oracle") and self.m == 0:
            raise UsageError("m must be nonzero")
        if self.command == "census":
            if self.m_from is None or self.m_to is None:
                raise UsageError("census needs --from and --to")
            if self.m_from > self.m_to:
                raise UsageError(f"--from {self.m_from} exceeds --to {self.m_to}")
        if self.workers < 1:
            raise UsageError(f"--workers must be at least 1, got {self.workers}")
        if self.k_max < 0:
            raise UsageError(f"--k-max must be nonnegative, got {self.k_max}")
        if self.height_max is not None and self.height_max < 1:
            raise UsageError(f"--height-max must be positive, got {self.height_max}")
        if list(self.checkpoints) != sorted(set(self.checkpoints)):
            raise UsageError("--checkpoints must be strictly ascending")
        if any(x < 1 for x in self.checkpoints):
            raise UsageError("--checkpoints must be positive")
        if self.truncation < 1 or self.samples < 0 or self.u < 0 or self.k < 0:
            raise UsageError("--B, --n, --u and --k must be nonnegative (B positive)")
        if self.count < 0:
            raise UsageError(f"--count must be nonnegative, got {self.count}")
