"""Adapter configuration."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class ModelName(enum.Enum):
    FRCNN_RESNET50 = "frcnn-resnet50"
    FRCNN_MOBILENETV3 = "frcnn-mobilenetv3"
    DETR = "detr"


class ResizeMode(enum.Enum):
    NATIVE = "native"
    SQUARE_224 = "224"


@dataclass(frozen=True)
class AdapterConfig:
    model: ModelName = ModelName.FRCNN_RESNET50
    device: str = "cpu"
    batch_size: int = 4
    resize_mode: ResizeMode = ResizeMode.NATIVE
    score_floor: float = 0.0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not 0.0 <= self.score_floor <= 1.0:
            raise ValueError(f"score_floor must be in [0, 1], got {self.score_floor}")
