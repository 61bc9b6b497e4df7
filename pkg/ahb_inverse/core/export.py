"""Plain-text and image writers for experiment artifacts."""

import csv
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from loguru import logger

from .models import RunRecord, SummaryRow

PathLike = Union[str, Path]

ITERATION_HEADER = ["n", "residual_norm", "alpha", "beta", "gamma_tilde", "truth_error"]
SUMMARY_HEADER = ["delta", "delta_rel", "method", "iterations", "error", "stop_reason", "seed"]
TIMING_HEADER = ["delta", "method", "seed", "time_seconds"]


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ""
    return f"{value:.12g}"


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    logger.debug(f"Wrote {path}")
    return path


def write_iteration_log(path: PathLike, record: RunRecord) -> Path:
    """Per-iteration log without wall-clock columns, so reruns are byte-identical."""
    rows = (
        [
            row.n,
            format_number(row.residual_norm),
            format_number(row.alpha),
            format_number(row.beta),
            format_number(row.gamma_tilde),
            format_number(row.truth_error),
        ]
        for row in record.rows
    )
    return write_csv(path, ITERATION_HEADER, rows)


def write_summary(path: PathLike, rows: List[SummaryRow]) -> Path:
    return write_csv(
        path,
        SUMMARY_HEADER,
        (
            [
                format_number(row.delta),
                format_number(row.delta_rel),
                row.method,
                row.iterations,
                format_number(row.error),
                row.stop_reason,
                row.seed,
            ]
            for row in rows
        ),
    )


def write_timings(path: PathLike, rows: List[SummaryRow]) -> Path:
    """Wall-clock seconds per run; the one artifact that differs between reruns."""
    return write_csv(
        path,
        TIMING_HEADER,
        ([format_number(row.delta), row.method, row.seed, f"{row.time_seconds:.3f}"] for row in rows),
    )


def write_curve(path: PathLike, points: Sequence[Tuple[int, float]]) -> Path:
    """Two-column (n, error) series."""
    return write_csv(path, ["n", "error"], ([n, format_number(err)] for n, err in points))


def scale_to_bytes(image: np.ndarray, low: float, high: float) -> np.ndarray:
    if high <= low:
        return np.zeros(image.shape, dtype=np.uint8)
    scaled = np.clip((image - low) / (high - low), 0.0, 1.0)
    return np.round(255.0 * scaled).astype(np.uint8)


def write_pgm(path: PathLike, image: np.ndarray, low: float, high: float) -> Path:
    """Binary 8-bit portable graymap, values mapped linearly from [low, high]."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pixels = scale_to_bytes(np.asarray(image, dtype=float), low, high)
    rows, cols = pixels.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{cols} {rows}\n255\n".encode("ascii"))
        f.write(pixels.tobytes())
    return path


def read_pgm(path: PathLike) -> np.ndarray:
    """Read a binary graymap written by write_pgm."""
    data = Path(path).read_bytes()
    header = data.split(b"\n", 3)
    if header[0] != b"P5":
        raise ValueError(f"{path} is not a binary PGM file")
    cols, rows = (int(v) for v in header[1].split())
    return np.frombuffer(header[3], dtype=np.uint8, count=rows * cols).reshape(rows, cols)


def write_array(path: PathLike, header: Sequence[str], array: np.ndarray, fmt) -> Path:
    """Numeric table through ``np.savetxt`` with a plain comma-separated header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, array, fmt=fmt, delimiter=",", header=",".join(header), comments="")
    logger.debug(f"Wrote {path}")
    return path


def write_image_csv(path: PathLike, image: np.ndarray) -> Path:
    image = np.asarray(image, dtype=float)
    return write_array(path, [f"c{j}" for j in range(image.shape[1])], image, "%.12g")


def write_coo(path: PathLike, matrix) -> Path:
    """Matrix in (row, col, value) text form, one nonzero per line."""
    coo = sp.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    table = np.column_stack((coo.row[order], coo.col[order], coo.data[order]))
    return write_array(path, ["row", "col", "value"], table, ["%d", "%d", "%.12g"])
