"""Shared helpers for the adapter tests.

The downstream pipeline is only ever touched through its installed CLI; that
file-and-subprocess boundary is the adapter's whole contract.
"""

from __future__ import annotations

import shutil
import subprocess

import pytest

COOCMINE = shutil.which("coocmine")


def coco_doc():
    return {
        "images": [
            {"id": 1, "width": 100, "height": 100},
            {"id": 2, "width": 100, "height": 100},
        ],
        "annotations": [
            {"image_id": 1, "category_id": 1, "bbox": [10, 10, 30, 40]},
            {"image_id": 1, "category_id": 2, "bbox": [50, 50, 20, 20]},
            {"image_id": 2, "category_id": 1, "bbox": [5, 5, 60, 60]},
        ],
        "categories": [{"id": 1, "name": "person"}, {"id": 2, "name": "dog"}],
    }


def run_coocmine(*args):
    if COOCMINE is None:
        pytest.skip("coocmine CLI not installed")
    return subprocess.run(
        [COOCMINE, *args], capture_output=True, text=True, check=False
    )
