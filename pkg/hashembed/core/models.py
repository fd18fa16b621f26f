"""Data models for hashembed."""

from enum import Enum
from typing import Dict, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def is_power_of_two(value: int) -> bool:
    """Return True when ``value`` is a positive power of two."""
    return value > 0 and value & (value - 1) == 0


class ThresholdMode(str, Enum):
    """How projected values are binarized."""

    ZERO = "zero"
    MEDIAN = "median"
    RANDOM = "random"  # random-coding baseline, no projection at all

    @property
    def code(self) -> int:
        """Numeric tag stored in the code file header."""
        return _THRESHOLD_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "ThresholdMode":
        """Inverse of :attr:`code`."""
        for mode, value in _THRESHOLD_CODES.items():
            if value == code:
                return mode
        raise ValueError(f"Unknown threshold mode tag: {code}")


_THRESHOLD_CODES = {
    ThresholdMode.ZERO: 0,
    ThresholdMode.MEDIAN: 1,
    ThresholdMode.RANDOM: 2,
}


class DecoderVariant(str, Enum):
    """Decoder variants."""

    LIGHT = "light"
    FULL = "full"


class EncoderConfig(BaseModel):
    """Parameters of the hashing encoder."""

    model_config = ConfigDict(frozen=True)

    c: int = Field(ge=2)
    m: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    threshold_mode: ThresholdMode = ThresholdMode.MEDIAN

    @field_validator("c")
    @classmethod
    def _c_power_of_two(cls, value: int) -> int:
        if not is_power_of_two(value):
            raise ValueError("c must be a power of 2")
        return value

    @property
    def n_bit(self) -> int:
        """Bits per code row, m * log2(c)."""
        return self.m * (self.c.bit_length() - 1)


class MemorySpec(BaseModel):
    """Inputs of the memory accountant."""

    n: int = Field(ge=1)
    d_e: int = Field(ge=1)
    f: Literal[16, 32, 64] = 32
    c: int = Field(ge=2)
    m: int = Field(ge=1)
    d_c: int = Field(default=512, ge=1)
    d_m: int = Field(default=512, ge=1)
    l: int = Field(default=3, ge=1)
    variant: DecoderVariant = DecoderVariant.LIGHT
    include_biases: bool = False
    gnn_params: int = Field(default=0, ge=0)

    @field_validator("c")
    @classmethod
    def _c_power_of_two(cls, value: int) -> int:
        if not is_power_of_two(value):
            raise ValueError("c must be a power of 2")
        return value


class MemoryReport(BaseModel):
    """Memory accounting for one embedding layer setup. Sizes are bytes."""

    raw_embedding_bytes: float
    code_bytes: float
    decoder_trainable_params: int
    decoder_nontrainable_params: int
    decoder_trainable_bytes: float
    decoder_nontrainable_bytes: float
    decoder_bytes: float
    gnn_bytes: float
    cpu_bytes: float
    gpu_bytes: float
    gpu_ratio_inputs: Tuple[float, float]
    gpu_ratio: float
    total_ratio: float


class AdamWConfig(BaseModel):
    """AdamW hyperparameters."""

    model_config = ConfigDict(frozen=True)

    lr: float = Field(default=0.001, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)
    weight_decay: float = Field(default=0.01, ge=0.0)


class DecoderConfig(BaseModel):
    """Shape of the code decoder."""

    model_config = ConfigDict(frozen=True)

    c: int = Field(ge=2)
    m: int = Field(ge=1)
    d_c: int = Field(default=512, ge=1)
    d_m: int = Field(default=512, ge=1)
    d_e: int = Field(default=64, ge=1)
    l: int = Field(default=3, ge=2)
    variant: DecoderVariant = DecoderVariant.LIGHT
    seed: int = Field(default=0, ge=0, lt=2**64)

    @field_validator("c")
    @classmethod
    def _c_power_of_two(cls, value: int) -> int:
        if not is_power_of_two(value):
            raise ValueError("c must be a power of 2")
        return value


class ReconTrainConfig(BaseModel):
    """Reconstruction training budget."""

    model_config = ConfigDict(frozen=True)

    epochs: int = Field(default=1024, ge=1)
    batch_size: int = Field(default=512, ge=1)
    optimizer: AdamWConfig = AdamWConfig()
    seed: int = Field(default=0, ge=0, lt=2**64)


class FeatureMode(str, Enum):
    """Where node-classification input features come from."""

    CODES = "codes"
    RAW = "raw"


class NodeTrainConfig(BaseModel):
    """Node-classification training budget."""

    model_config = ConfigDict(frozen=True)

    epochs: int = Field(default=10, ge=1)
    batch_size: int = Field(default=256, ge=1)
    optimizer: AdamWConfig = AdamWConfig(lr=0.01, weight_decay=0.0)
    feature_mode: FeatureMode = FeatureMode.CODES
    ks: Tuple[int, ...] = (1,)
    seed: int = Field(default=0, ge=0, lt=2**64)


class SageConfig(BaseModel):
    """GraphSAGE shape and sampling."""

    model_config = ConfigDict(frozen=True)

    layers: Literal[2] = 2
    hidden: int = Field(default=128, ge=1)
    k: int = Field(default=15, ge=1)
    activation: Literal["relu"] = "relu"
    classes: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)


class SbmConfig(BaseModel):
    """Stochastic block model parameters."""

    model_config = ConfigDict(frozen=True)

    communities: int = Field(ge=1)
    nodes_per_community: int = Field(ge=1)
    p_in: float = Field(ge=0.0, le=1.0)
    p_out: float = Field(ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _ordered_probabilities(self) -> "SbmConfig":
        if not self.p_out < self.p_in:
            raise ValueError("p_out must be strictly less than p_in")
        return self


class ClusterEmbConfig(BaseModel):
    """Clustered Gaussian embedding parameters."""

    model_config = ConfigDict(frozen=True)

    clusters: int = Field(ge=1)
    points_per_cluster: int = Field(ge=1)
    dim: int = Field(ge=1)
    center_scale: float = Field(default=1.0, gt=0.0)
    noise_scale: float = Field(default=0.1, ge=0.0)
    # std of one random shift shared by every center
    center_offset: float = Field(default=0.0, ge=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _separable(self) -> "ClusterEmbConfig":
        if not self.noise_scale < self.center_scale:
            raise ValueError("noise_scale must be below center_scale")
        return self


class EvalResult(BaseModel):
    """Accuracy and hit rates of one evaluation."""

    accuracy: float
    hits: Dict[int, float] = Field(default_factory=dict)


class EpochMetrics(BaseModel):
    """Per-epoch record of node-classification training."""

    epoch: int
    train_loss: float
    valid: EvalResult
    test: Optional[EvalResult] = None
