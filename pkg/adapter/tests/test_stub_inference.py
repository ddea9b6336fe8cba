import json
import logging

import pytest
from PIL import Image

from detector_adapter import AdapterConfig, Prediction, ResizeMode, run_inference
from adapter_helpers import run_coocmine


class StubDetector:
    """Deterministic stand-in with the same predict() interface as the real
    wrappers: one centered 'person' box plus one low-score 'dog' box."""

    def predict(self, images):
        results = []
        for img in images:
            w, h = img.width, img.height
            results.append([
                Prediction("person", 0.9, (w * 0.25, h * 0.25, w * 0.5, h * 0.5)),
                Prediction("dog", 0.3, (1.0, 1.0, w * 0.1, h * 0.1)),
            ])
        return results


def make_images(tmp_path, sizes):
    image_dir = tmp_path / "images"
    image_dir.mkdir()
    for i, (w, h) in enumerate(sizes):
        Image.new("RGB", (w, h), color=(i * 40 % 255, 80, 120)).save(
            image_dir / f"img{i:02d}.png"
        )
    return image_dir


def read_lines(path):
    return [json.loads(l) for l in path.read_text().splitlines()]


def test_one_line_per_image(tmp_path):
    image_dir = make_images(tmp_path, [(64, 48), (100, 80), (32, 32)])
    out = tmp_path / "dets.jsonl"
    written = run_inference(image_dir, AdapterConfig(batch_size=2), out, detector=StubDetector())
    assert written == 3
    lines = read_lines(out)
    assert [l["image_id"] for l in lines] == ["img00", "img01", "img02"]
    assert lines[1]["width"] == 100 and lines[1]["height"] == 80
    assert {d["category"] for d in lines[0]["detections"]} == {"person", "dog"}


def test_undecodable_image_skipped_with_warning(tmp_path, caplog):
    image_dir = make_images(tmp_path, [(64, 48)])
    (image_dir / "broken.png").write_bytes(b"not a png")
    out = tmp_path / "dets.jsonl"
    with caplog.at_level(logging.WARNING):
        written = run_inference(image_dir, AdapterConfig(), out, detector=StubDetector())
    assert written == 1
    assert any("broken.png" in r.message for r in caplog.records)


def test_score_floor_one_empties_detections(tmp_path):
    image_dir = make_images(tmp_path, [(64, 48), (64, 48)])
    out = tmp_path / "dets.jsonl"
    cfg = AdapterConfig(score_floor=1.0)
    written = run_inference(image_dir, cfg, out, detector=StubDetector())
    assert written == 2
    assert all(l["detections"] == [] for l in read_lines(out))


def test_resize_mode_reports_224_frame(tmp_path):
    image_dir = make_images(tmp_path, [(640, 480)])
    out = tmp_path / "dets.jsonl"
    cfg = AdapterConfig(resize_mode=ResizeMode.SQUARE_224)
    run_inference(image_dir, cfg, out, detector=StubDetector())
    line = read_lines(out)[0]
    assert line["width"] == 224 and line["height"] == 224
    x, y, w, h = line["detections"][0]["bbox"]
    assert x == 56.0 and y == 56.0 and w == 112.0 and h == 112.0


def test_inference_is_deterministic(tmp_path):
    image_dir = make_images(tmp_path, [(64, 48), (80, 80)])
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_inference(image_dir, AdapterConfig(), out1, detector=StubDetector())
    run_inference(image_dir, AdapterConfig(), out2, detector=StubDetector())
    assert out1.read_bytes() == out2.read_bytes()


def test_output_reingests_through_pipeline(tmp_path):
    image_dir = make_images(tmp_path, [(64, 48), (100, 80)])
    out = tmp_path / "dets.jsonl"
    run_inference(image_dir, AdapterConfig(), out, detector=StubDetector())
    result = run_coocmine(
        "ingest", str(out), "--format", "jsonl", "--out", str(tmp_path / "run")
    )
    assert result.returncode == 0, result.stderr
    artifact = (tmp_path / "run" / "transactions.jsonl").read_text().splitlines()
    assert len(artifact) == 2  # dog at 0.3 filtered by the default 0.5 threshold
    assert all(
        [d["category"] for d in json.loads(l)["detections"]] == ["person"]
        for l in artifact
    )


def test_duplicate_stems_rejected(tmp_path):
    image_dir = make_images(tmp_path, [(64, 48)])
    Image.new("RGB", (10, 10)).save(image_dir / "img00.jpg")  # img00 again
    with pytest.raises(ValueError, match="stems"):
        run_inference(image_dir, AdapterConfig(), tmp_path / "o.jsonl", detector=StubDetector())


def test_config_validation():
    with pytest.raises(ValueError):
        AdapterConfig(batch_size=0)
    with pytest.raises(ValueError):
        AdapterConfig(score_floor=1.5)
