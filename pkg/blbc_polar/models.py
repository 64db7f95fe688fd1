"""Core models, enums and constants for blbc_polar."""

from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Known-zero LLR for shortened positions; also the "noiseless" magnitude in tests.
LLR_SHORTENED = 300.0

RELIABILITY_TOL = 1e-9
EXHAUSTIVE_GUARD = 200_000_000
MLD_MAX_K = 24

DEFAULT_TARGET_FRAME_ERRORS = 100
DEFAULT_MAX_FRAMES = 1_000_000
DEFAULT_BATCH_SIZE = 1000


class ChannelKind(str, Enum):
    """Binary memoryless symmetric channels understood by the reliability model."""

    BSC = "bsc"
    BEC = "bec"
    BIAWGN = "biawgn"


class MovePolicy(str, Enum):
    """How the annealer picks between a pruning flip and a permutation swap."""

    ALTERNATE = "alternate"
    UNIFORM = "uniform"


class DecoderKind(str, Enum):
    SC = "sc"
    SCL = "scl"
    MLD = "mld"


class ExhaustiveScope(str, Enum):
    PERM_ONLY = "perm-only"
    PRUNING_ONLY = "pruning-only"
    FULL = "full"


class KernelMode(str, Enum):
    """Check-node function used by SC/SCL."""

    EXACT = "exact"
    MIN_SUM = "min-sum"


class AnnealConfig(BaseModel):
    """Simulated-annealing parameters.

    The temperature at iteration t (1-based) is gamma**(t-1) * t_init.
    """

    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    t_init: float = Field(default=1.0, gt=0)
    gamma: float = Field(default=0.99999, gt=0, lt=1)
    t_max: int = Field(default=1_000_000, ge=0)
    seed: int = 0
    move_policy: MovePolicy = MovePolicy.ALTERNATE
    search_perm: bool = True
    search_pruning: bool = True
    report_every: int = Field(default=100_000, ge=1)

    @model_validator(mode="after")
    def _something_to_search(self) -> AnnealConfig:
        if not (self.search_perm or self.search_pruning):
            raise ValueError("search_perm and search_pruning cannot both be disabled")
        return self

    def temperature(self, iteration: int) -> float:
        return self.gamma ** (iteration - 1) * self.t_init


class SimConfig(BaseModel):
    """One FER campaign: code, transformation, decoder, SNR grid and stop rule."""

    model_config = ConfigDict(extra="forbid")

    code: str
    transformation: str
    decoder: DecoderKind = DecoderKind.SC
    list_size: int = Field(default=1, ge=1)
    ebno_db: list[float] = Field(min_length=1)
    max_frames: int = Field(default=DEFAULT_MAX_FRAMES, ge=1)
    target_frame_errors: int = Field(default=DEFAULT_TARGET_FRAME_ERRORS, ge=1)
    batch_size: int = Field(default=DEFAULT_BATCH_SIZE, ge=1)
    seed: int = 0
    workers: int = Field(default=1, ge=1)
    kernel: KernelMode = KernelMode.EXACT


class SimPoint(BaseModel):
    """One row of the results CSV."""

    ebno_db: float
    decoder: DecoderKind
    list_size: int
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float = Field(ge=0, le=1)
    ber: float = Field(ge=0, le=1)
    candidates: int
    wall_seconds: float
    seed: int


class SimResult(BaseModel):
    points: list[SimPoint] = Field(default_factory=list)


class RoundtripFailure(BaseModel):
    """First counterexample found by verify_roundtrip."""

    trial: int
    kind: str  # "codeword" or "shortened"
    message: list[int]
    expected: list[int]
    got: list[int]


class RoundtripReport(BaseModel):
    trials: int
    failures: int = 0
    first_failure: Optional[RoundtripFailure] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0
