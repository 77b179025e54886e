"""
coxnorm/kernels/kernel_io.py
Kernel files and JSON-lines reports.

A kernel is read from a CSV matrix (2-ary; complex entries written like
"1+2j") or from JSON, either a bare nested array or
{"values": [...], "complex": true, "symmetric": false}. With "complex" set,
every innermost entry is an [re, im] pair.
"""

import json
import logging
from pathlib import Path
from typing import IO, Iterable, List, Union

import numpy as np

from kernels.errors import InvalidKernel
from kernels.report import CheckReport
from kernels.step_kernel import StepKernel

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def kernel_from_dict(doc, symmetric: bool = False) -> StepKernel:
    if isinstance(doc, list):
        doc = {'values': doc}
    try:
        values = np.asarray(doc['values'], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidKernel(f"Kernel document has no numeric 'values' array: {exc}") from exc
    if doc.get('complex', False):
        if values.shape[-1:] != (2,):
            raise InvalidKernel("Complex kernels store [re, im] pairs as innermost entries")
        values = values[..., 0] + 1j * values[..., 1]
    return StepKernel(values, symmetric=bool(doc.get('symmetric', symmetric)))


def kernel_to_dict(kernel: StepKernel) -> dict:
    if kernel.is_complex:
        values = np.stack([kernel.values.real, kernel.values.imag], axis=-1)
    else:
        values = kernel.values
    return {'values': values.tolist(), 'complex': kernel.is_complex, 'symmetric': kernel.symmetric}


def _parse_cell(token: str) -> complex:
    token = token.strip().replace(' ', '')
    try:
        return complex(token) if 'j' in token else float(token)
    except ValueError as exc:
        raise InvalidKernel(f"Bad kernel entry {token!r}") from exc


def read_csv_kernel(path: PathLike, symmetric: bool = False) -> StepKernel:
    rows = []
    for line in Path(path).read_text(encoding='utf-8').splitlines():
        line = line.strip()
        if line and not line.startswith('#'):
            rows.append([_parse_cell(token) for token in line.split(',')])
    if not rows or any(len(row) != len(rows) for row in rows):
        raise InvalidKernel(f"{path}: expected a square n x n matrix")
    values = np.array(rows)
    if np.iscomplexobj(values) and not np.any(values.imag):
        values = values.real
    return StepKernel(values, symmetric=symmetric)


def load_kernel(path: PathLike, symmetric: bool = False) -> StepKernel:
    """Load a kernel, choosing the format by file suffix."""
    path = Path(path)
    if path.suffix.lower() == '.csv':
        kernel = read_csv_kernel(path, symmetric=symmetric)
    else:
        with open(path, encoding='utf-8') as f:
            kernel = kernel_from_dict(json.load(f), symmetric=symmetric)
    logger.info("Loaded %d-ary kernel at resolution %d from %s", kernel.arity, kernel.resolution, path)
    return kernel


def write_kernel(kernel: StepKernel, path: PathLike):
    path = Path(path)
    if path.suffix.lower() == '.csv':
        if kernel.arity != 2:
            raise InvalidKernel("Only 2-ary kernels are written as CSV")
        cell = (lambda x: repr(complex(x))) if kernel.is_complex else (lambda x: repr(float(x)))
        lines = [','.join(cell(x) for x in row) for row in kernel.values]
        path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    else:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(kernel_to_dict(kernel), f)


def write_reports(reports: Iterable[CheckReport], stream: IO[str]) -> int:
    """Write one JSON object per report; returns the number written."""
    count = 0
    for r in reports:
        stream.write(r.to_json_line() + '\n')
        count += 1
    return count


def read_reports(path: PathLike) -> List[dict]:
    with open(path, encoding='utf-8') as f:
        return [json.loads(line) for line in f if line.strip()]
