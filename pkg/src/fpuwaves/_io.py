"""Shared writers for experiment and CLI artifacts."""

from __future__ import annotations

import csv
import json
from pathlib import Path


def prepare_dir(out_dir: str | Path) -> Path:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def dump_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def dump_rows(path: str | Path, rows: list[dict]) -> None:
    """CSV with the union of keys, first-seen order; missing cells blank."""
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, restval="")
        writer.writeheader()
        writer.writerows(rows)
