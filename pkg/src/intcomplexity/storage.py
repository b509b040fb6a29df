"""Binary persistence for complexity tables.

Layout (little-endian, no padding)::

    offset  size  field
    0       4     magic b"NCX1"
    4       4     format version, uint32 (currently 1)
    8       8     max_n, uint64
    16      max_n payload; byte i-1 holds ||i||
"""

from __future__ import annotations

import os
import struct
from typing import BinaryIO, Union

import numpy as np

from .core import ComplexityTable
from .errors import BadMagicError, TableFormatError, TruncatedPayloadError, VersionMismatchError

__all__ = ["MAGIC", "VERSION", "dumps", "loads", "save_table", "load_table"]

MAGIC = b"NCX1"
VERSION = 1
_HEADER = struct.Struct("<4sIQ")

PathOrFile = Union[str, os.PathLike, BinaryIO]


def dumps(table: ComplexityTable) -> bytes:
    return _HEADER.pack(MAGIC, VERSION, table.max_n) + table.values[1:].tobytes()


def loads(data: bytes) -> ComplexityTable:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, found {bytes(data[:4])!r}")
    if len(data) < _HEADER.size:
        raise TruncatedPayloadError(f"header needs {_HEADER.size} bytes, file has {len(data)}")
    _, version, max_n = _HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatchError(f"unsupported format version {version} (expected {VERSION})")
    payload = len(data) - _HEADER.size
    if payload < max_n:
        raise TruncatedPayloadError(f"header declares max_n={max_n} but payload has {payload} bytes")
    if payload > max_n:
        raise TableFormatError(f"{payload - max_n} trailing bytes after payload")
    if max_n < 1:
        raise TableFormatError("table must hold at least one entry")
    values = np.zeros(max_n + 1, dtype=np.uint8)
    values[1:] = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    return ComplexityTable(max_n, values)


def save_table(table: ComplexityTable, destination: PathOrFile) -> None:
    data = dumps(table)
    if hasattr(destination, "write"):
        destination.write(data)
        return
    with open(destination, "wb") as fh:
        fh.write(data)


def load_table(source: PathOrFile) -> ComplexityTable:
    if hasattr(source, "read"):
        return loads(source.read())
    with open(source, "rb") as fh:
        return loads(fh.read())
