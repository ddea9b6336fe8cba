"""Stage-1 runner: pretrained multilabel detectors over an image directory,
emitting the detections JSONL the coocmine pipeline ingests. Strictly one-way:
this package computes no statistics."""

from .config import AdapterConfig, ModelName, ResizeMode
from .export import ExportFormatError, export_ground_truth
from .inference import list_images, run_inference
from .jsonl import Prediction, detection_line
from .models import Detector, ModelLoadError, load_detector

__version__ = "0.1.0"

__all__ = [
    "AdapterConfig",
    "Detector",
    "ExportFormatError",
    "ModelLoadError",
    "ModelName",
    "Prediction",
    "ResizeMode",
    "detection_line",
    "export_ground_truth",
    "list_images",
    "load_detector",
    "run_inference",
]
