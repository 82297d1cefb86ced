"""Helpers for the figure-layer tests: fabricate canonical sweep CSVs.

The writer here mirrors the producer's CSV contract (header order and
%.12g float formatting) without importing the producing package -- the
file format IS the interface under test.
"""

import csv
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from figlib import CANONICAL_HEADER  # noqa: E402


def write_sweep_csv(path, rows):
    """rows: list of (z_over_lambda_p, F, F_err) triples."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CANONICAL_HEADER)
        for zb, f, ferr in rows:
            writer.writerow(
                [
                    f"{zb:.12g}",
                    f"{f:.12g}",
                    f"{ferr:.12g}",
                    "100000",
                    "intermediate",
                    f"{-1.3e-30 / zb**4:.12g}",
                    "1.14556021725e-09",
                    "deadbeefdeadbeef",
                ]
            )
    return Path(path)


@pytest.fixture
def sample_rows():
    return [
        (3.0, 4.25e-07, 4.6e-09),
        (7.2, 3.91e-08, 4.4e-10),
        (17.3, 3.3e-09, 4.1e-11),
        (30.0, 4.8e-10, 9.0e-12),
    ]


@pytest.fixture
def sweep_csv(tmp_path, sample_rows):
    return write_sweep_csv(tmp_path / "sweep.csv", sample_rows)
