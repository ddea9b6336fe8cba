"""Pretrained detector wrappers behind one predict() interface.

Each wrapper takes a batch of PIL images and returns, per image, a list of
Prediction(category, score, bbox) with boxes as (x, y, w, h) in the input
image's pixel frame. Heavy imports stay inside the builders so the package
imports without torch and fails only when a model is actually requested.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from .config import AdapterConfig, ModelName
from .jsonl import Prediction


class ModelLoadError(Exception):
    """A pretrained model (or its weights) could not be loaded."""


class Detector(Protocol):
    def predict(self, images: Sequence) -> list[list[Prediction]]: ...


def _xyxy_to_xywh(box) -> tuple[float, float, float, float]:
    x1, y1, x2, y2 = (float(v) for v in box)
    return (x1, y1, x2 - x1, y2 - y1)


class _TorchvisionDetector:
    def __init__(self, model, categories: Sequence[str], device: str):
        import torch

        self._torch = torch
        self._model = model.to(device).eval()
        self._categories = list(categories)
        self._device = device

    def predict(self, images: Sequence) -> list[list[Prediction]]:
        from torchvision.transforms.functional import to_tensor

        tensors = [to_tensor(img).to(self._device) for img in images]
        with self._torch.no_grad():
            outputs = self._model(tensors)
        results = []
        for output in outputs:
            predictions = []
            for box, label, score in zip(
                output["boxes"].cpu(), output["labels"].cpu(), output["scores"].cpu()
            ):
                name = self._categories[int(label)]
                if name in ("__background__", "N/A"):
                    continue
                x, y, w, h = _xyxy_to_xywh(box)
                if w <= 0 or h <= 0:
                    continue  # degenerate box would violate the output schema
                predictions.append(Prediction(name, float(score), (x, y, w, h)))
            results.append(predictions)
        return results


class _DetrDetector:
    HF_NAME = "facebook/detr-resnet-50"

    def __init__(self, device: str):
        try:
            from transformers import DetrForObjectDetection, DetrImageProcessor
        except ImportError as e:
            raise ModelLoadError(
                "DETR needs the `transformers` package (install the [detr] extra)"
            ) from e
        try:
            self._processor = DetrImageProcessor.from_pretrained(self.HF_NAME)
            self._model = DetrForObjectDetection.from_pretrained(self.HF_NAME)
        except Exception as e:
            raise ModelLoadError(f"could not load {self.HF_NAME}: {e}") from e
        import torch

        self._torch = torch
        self._model = self._model.to(device).eval()
        self._device = device

    def predict(self, images: Sequence) -> list[list[Prediction]]:
        inputs = self._processor(images=list(images), return_tensors="pt").to(self._device)
        with self._torch.no_grad():
            outputs = self._model(**inputs)
        sizes = self._torch.tensor([[img.height, img.width] for img in images])
        processed = self._processor.post_process_object_detection(
            outputs, threshold=0.0, target_sizes=sizes
        )
        id2label = self._model.config.id2label
        results = []
        for item in processed:
            predictions = []
            for box, label, score in zip(item["boxes"], item["labels"], item["scores"]):
                x, y, w, h = _xyxy_to_xywh(box)
                if w <= 0 or h <= 0:
                    continue
                predictions.append(
                    Prediction(id2label[int(label)], float(score), (x, y, w, h))
                )
            results.append(predictions)
        return results


def load_detector(cfg: AdapterConfig) -> Detector:
    """Build the configured pretrained detector; raises ModelLoadError."""
    if cfg.model is ModelName.DETR:
        return _DetrDetector(cfg.device)
    try:
        from torchvision.models import detection
    except ImportError as e:
        raise ModelLoadError("torchvision is required for Faster R-CNN models") from e
    try:
        if cfg.model is ModelName.FRCNN_RESNET50:
            weights = detection.FasterRCNN_ResNet50_FPN_Weights.DEFAULT
            model = detection.fasterrcnn_resnet50_fpn(weights=weights)
        else:
            weights = detection.FasterRCNN_MobileNet_V3_Large_FPN_Weights.DEFAULT
            model = detection.fasterrcnn_mobilenet_v3_large_fpn(weights=weights)
    except Exception as e:
        raise ModelLoadError(f"could not load {cfg.model.value} weights: {e}") from e
    return _TorchvisionDetector(model, weights.meta["categories"], cfg.device)
