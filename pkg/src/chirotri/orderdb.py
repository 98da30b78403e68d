"""Reader for fixed-width binary point-configuration databases.

Files are concatenated records with no header: each record is n points of two
unsigned coordinates. The coordinate width is 8 bits for n <= 8 and 16 bits
(little-endian) for n in {9, 10}; both parameters stay overridable because
the convention is external to this package.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from itertools import combinations

from .errors import GeneralPositionViolation, MalformedFile, OutOfRange
from .geometry import PointSet


@dataclass(frozen=True)
class OrderTypeRecord:
    index: int
    n: int
    coords: tuple  # n pairs of unsigned ints

    def point_set(self) -> PointSet:
        return PointSet(self.coords)


def default_width(n: int) -> int:
    return 8 if n <= 8 else 16


def _is_general_position(coords) -> bool:
    for (ax, ay), (bx, by), (cx, cy) in combinations(coords, 3):
        if (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) == 0:
            return False
    return True


def iter_order_types(data: bytes, n: int, width: int | None = None,
                     lenient: bool = False, skipped: list | None = None):
    """Yield validated OrderTypeRecords from raw database bytes.

    A record with a collinear triple raises GeneralPositionViolation unless
    ``lenient`` is set, in which case its index is appended to ``skipped``
    and the record is dropped.
    """
    if n < 3:
        raise OutOfRange(f"need n >= 3, got {n}")
    width = default_width(n) if width is None else width
    if width not in (8, 16):
        raise OutOfRange(f"width must be 8 or 16 bits, got {width}")
    rec_bytes = n * 2 * (width // 8)
    if len(data) % rec_bytes != 0:
        raise MalformedFile(
            f"file size {len(data)} is not a multiple of the record size "
            f"{rec_bytes} (n={n}, width={width})")
    fmt = "<" + ("B" if width == 8 else "H") * (2 * n)
    for idx in range(len(data) // rec_bytes):
        values = struct.unpack_from(fmt, data, idx * rec_bytes)
        coords = tuple((values[2 * i], values[2 * i + 1]) for i in range(n))
        if not _is_general_position(coords):
            if lenient:
                if skipped is not None:
                    skipped.append(idx)
                continue
            raise GeneralPositionViolation(f"record {idx} has a collinear triple")
        yield OrderTypeRecord(idx, n, coords)


def read_order_types(path, n: int, width: int | None = None,
                     lenient: bool = False):
    """Read a database file; returns (records, skipped indices)."""
    with open(path, "rb") as fh:
        data = fh.read()
    skipped: list[int] = []
    records = list(iter_order_types(data, n, width, lenient, skipped))
    return records, skipped


def serialize_order_types(records, width: int | None = None) -> bytes:
    """Inverse of the reader; round-trips a parsed file byte-for-byte."""
    if not records:
        return b""
    n = records[0].n
    width = default_width(n) if width is None else width
    fmt = "<" + ("B" if width == 8 else "H") * (2 * n)
    out = bytearray()
    for rec in records:
        if rec.n != n:
            raise MalformedFile("records of mixed size")
        flat = [v for pair in rec.coords for v in pair]
        out.extend(struct.pack(fmt, *flat))
    return bytes(out)
