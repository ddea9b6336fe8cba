from __future__ import annotations

import json

import pytest

from adapter_helpers import coco_doc


@pytest.fixture
def coco_file(tmp_path):
    path = tmp_path / "gt.json"
    path.write_text(json.dumps(coco_doc()))
    return path
