"""Shared output helpers for the demo scripts."""

import os

OUTPUT_DIR = os.path.join(os.path.dirname(__file__), "output")


def output_path(name: str) -> str:
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    return os.path.join(OUTPUT_DIR, name)


def write_csv(name: str, header: str, columns) -> str:
    """Write aligned columns with full precision; returns the path."""
    path = output_path(name)
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{value:.17g}" for value in row) + "\n")
    return path


def maybe_pyplot():
    """matplotlib is optional for the demos; CSVs are always written."""
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        return plt
    except ImportError:
        return None
