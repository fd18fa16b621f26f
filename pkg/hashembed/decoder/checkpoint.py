"""Decoder checkpoints: a manifest text file plus a GEF32 payload.

Manifest lines::

    # hashembed decoder checkpoint
    version 1
    payload <file name, relative to the manifest>
    config <DecoderConfig as JSON>
    tensor <name> <comma-separated shape> <byte offset into payload>

Each tensor is stored as one GEF32 block of prod(shape[:-1]) rows.
"""

from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
from pydantic import ValidationError

from hashembed.core.exceptions import CodeFormatError
from hashembed.core.logger import logger
from hashembed.core.models import DecoderConfig, DecoderVariant
from hashembed.codes.storage import read_dense_block, read_dense_header, write_dense
from hashembed.decoder.model import DecoderParams
from hashembed.nn.tensor import Tensor

MANIFEST_VERSION = 1


def _as_matrix(array: np.ndarray) -> np.ndarray:
    return array.reshape(-1, array.shape[-1]) if array.ndim > 1 else array.reshape(1, -1)


def save_checkpoint(params: DecoderParams, path: Union[str, Path]) -> Path:
    """
    Write ``params`` to ``path`` (manifest) and ``path.bin`` (payload).

    Returns:
        Path of the payload file
    """
    path = Path(path)
    payload = path.with_name(path.name + ".bin")
    lines = [
        "# hashembed decoder checkpoint",
        f"version {MANIFEST_VERSION}",
        f"payload {payload.name}",
        f"config {params.config.model_dump_json()}",
    ]
    with payload.open("wb") as fh:
        for name, tensor in params.named_tensors():
            shape = ",".join(str(s) for s in tensor.shape)
            lines.append(f"tensor {name} {shape} {fh.tell()}")
            write_dense(_as_matrix(tensor.data), fh)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Checkpoint written: {path}")
    return payload


def _parse_manifest(path: Path) -> Tuple[Path, DecoderConfig, List[Tuple[str, Tuple[int, ...], int]]]:
    payload = None
    config = None
    tensors = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        if key not in ("version", "payload", "config", "tensor"):
            raise CodeFormatError(f"{path}:{lineno}: unknown manifest key {key!r}")
        try:
            if key == "version":
                version = int(rest)
            elif key == "payload":
                payload = path.with_name(rest.strip())
            elif key == "config":
                config = DecoderConfig.model_validate_json(rest)
            else:
                name, shape, offset = rest.split()
                tensors.append((name, tuple(int(s) for s in shape.split(",")), int(offset)))
        except ValidationError as e:
            first = e.errors()[0]
            raise CodeFormatError(f"{path}:{lineno}: bad config: {first['msg']}") from None
        except ValueError as e:
            raise CodeFormatError(f"{path}:{lineno}: malformed {key} line: {e}") from None
        if key == "version" and version != MANIFEST_VERSION:
            raise CodeFormatError(f"{path}:{lineno}: unsupported manifest version {version}")
    if payload is None or config is None:
        raise CodeFormatError(f"{path}: manifest lacks payload or config")
    return payload, config, tensors


def _tensor_names(config: DecoderConfig) -> List[str]:
    names = ["codebooks"]
    if config.variant is DecoderVariant.LIGHT:
        names.append("w0")
    for i in range(config.l):
        names.extend((f"layer{i}.weight", f"layer{i}.bias"))
    return names


def load_checkpoint(path: Union[str, Path]) -> DecoderParams:
    """
    Read a checkpoint written by :func:`save_checkpoint`.

    Raises:
        CodeFormatError: On a malformed manifest or payload
    """
    path = Path(path)
    payload, config, entries = _parse_manifest(path)
    expected = _tensor_names(config)
    found = [name for name, _, _ in entries]
    if sorted(found) != sorted(expected):
        raise CodeFormatError(f"{path}: tensors {found} do not match the config, expected {expected}")
    arrays: Dict[str, np.ndarray] = {}
    with payload.open("rb") as fh:
        for name, shape, offset in entries:
            fh.seek(offset)
            rows, cols = read_dense_header(fh)
            if rows * cols != int(np.prod(shape)):
                raise CodeFormatError(f"tensor {name} has {rows}x{cols} values for shape {shape}", offset)
            arrays[name] = read_dense_block(fh, rows, cols).reshape(shape).astype(np.float32)

    full = config.variant is DecoderVariant.FULL
    layers = []
    i = 0
    while f"layer{i}.weight" in arrays:
        layers.append(
            (
                Tensor(arrays[f"layer{i}.weight"], requires_grad=True),
                Tensor(arrays[f"layer{i}.bias"], requires_grad=True),
            )
        )
        i += 1
    logger.info(f"Checkpoint read: {path}")
    return DecoderParams(
        config=config,
        codebooks=Tensor(arrays["codebooks"], requires_grad=full),
        w0=Tensor(arrays["w0"], requires_grad=True) if "w0" in arrays else None,
        layers=layers,
    )
