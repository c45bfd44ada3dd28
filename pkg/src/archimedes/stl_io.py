"""Bit-exact STL reader/writer for both encodings.

Binary layout: 80-byte header (zero padded, must not begin with "solid"),
little-endian uint32 triangle count, then 50 bytes per facet: twelve
little-endian IEEE-754 float32 values (normal, then three vertices) plus a
uint16 attribute count written as 0.  File length is exactly 84 + 50*T.

ASCII grammar is the canonical solid/facet/outer loop form with two-space
indentation per level and numbers rendered as the shortest decimal that
round-trips the underlying float32 value.

Vertices are held at float64 internally but serialized at STL's 32-bit
width, so round-trip contracts are stated at 32-bit: normals are always
recomputed from the float32-cast vertices, which is what makes
write(read(write(m))) byte-identical to write(m).
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass, field

import numpy as np

from .mesh import TriangleMesh

_FACET_DTYPE = np.dtype(
    [("normal", "<f4", (3,)), ("vertices", "<f4", (3, 3)), ("attr", "<u2")]
)
assert _FACET_DTYPE.itemsize == 50


class StlFormatError(ValueError):
    """Raised for malformed STL payloads."""


@dataclass
class StlSolid:
    name: str
    normals: np.ndarray  # (T, 3) float32, as stored in the file
    vertices: np.ndarray  # (T, 3, 3) float32
    attributes: np.ndarray  # (T,) uint16; always 0 for our own writers


@dataclass
class StlDocument:
    """Decoded STL payload; preserves everything needed for exact re-emission."""

    header_text: str
    solids: list[StlSolid]
    encoding: str  # "ascii" | "binary"
    attributes_nonzero: bool = field(default=False)

    @property
    def triangle_count(self) -> int:
        return sum(len(s.vertices) for s in self.solids)

    def to_mesh(self) -> TriangleMesh:
        """Indexed mesh from the triangle soup; coincident corners are welded.

        Nonzero attribute counts survive in the document but are dropped
        here, with a warning.
        """
        if self.attributes_nonzero:
            warnings.warn("nonzero STL attribute byte counts dropped on mesh conversion")
        if not self.solids or self.triangle_count == 0:
            return TriangleMesh(np.empty((0, 3)), np.empty((0, 3), dtype=np.int32))
        corners = np.vstack([s.vertices.astype(np.float64) for s in self.solids])
        flat = corners.reshape(-1, 3)
        uniq, inverse = np.unique(flat, axis=0, return_inverse=True)
        return TriangleMesh(uniq, inverse.reshape(-1, 3))


def _cast_f32(mesh: TriangleMesh) -> np.ndarray:
    return mesh.vertices.astype("<f4")[mesh.triangles]


def _facet_normals(corners32: np.ndarray) -> np.ndarray:
    """Unit right-hand-rule normals from float32 corners (zeros if degenerate)."""
    c = corners32.astype(np.float64)
    n = np.cross(c[:, 1] - c[:, 0], c[:, 2] - c[:, 0])
    length = np.linalg.norm(n, axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(length > 0.0, n / length, 0.0)
    return unit.astype("<f4")


def write_binary(mesh: TriangleMesh, header: str = "archimedes binary stl") -> bytes:
    """Serialize a mesh to the fixed 84 + 50*T byte binary layout."""
    raw = header.encode("latin-1")
    if len(raw) > 80:
        raise ValueError(f"header exceeds 80 bytes ({len(raw)})")
    if raw.startswith(b"solid"):
        raise ValueError('binary header must not begin with "solid" (breaks detection)')
    count = mesh.triangle_count
    if count >= 2**32:
        raise ValueError("triangle count does not fit in uint32")
    corners = _cast_f32(mesh)
    rec = np.zeros(count, dtype=_FACET_DTYPE)
    rec["normal"] = _facet_normals(corners)
    rec["vertices"] = corners
    return raw.ljust(80, b"\x00") + struct.pack("<I", count) + rec.tobytes()


def _fmt(value: np.float32) -> str:
    # numpy's float32 str is the shortest decimal that round-trips the bits
    return str(np.float32(value))


def write_ascii(mesh: TriangleMesh, name: str = "model") -> str:
    """Serialize a mesh to canonical ASCII STL (no trailing newline)."""
    if name == "" or any(ch.isspace() for ch in name):
        raise ValueError(f"solid name must be a whitespace-free token, got {name!r}")
    corners = _cast_f32(mesh)
    normals = _facet_normals(corners)
    lines = [f"solid {name}"]
    for n, tri in zip(normals, corners):
        lines.append(f"  facet normal {_fmt(n[0])} {_fmt(n[1])} {_fmt(n[2])}")
        lines.append("    outer loop")
        for v in tri:
            lines.append(f"      vertex {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
        lines.append("    endloop")
        lines.append("  endfacet")
    lines.append(f"endsolid {name}")
    return "\n".join(lines)


def _parse_floats(tokens: list[str], lineno: int, what: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in tokens], dtype="<f4")
    except ValueError:
        raise StlFormatError(f"line {lineno}: malformed {what}: {' '.join(tokens)!r}") from None


def _parse_ascii(text: str) -> StlDocument:
    lines = text.split("\n")
    pos = 0

    def next_content() -> tuple[int, list[str]]:
        nonlocal pos
        while pos < len(lines):
            pos += 1
            stripped = lines[pos - 1].strip()
            if stripped:
                return pos, stripped.split()
        return pos, []

    solids: list[StlSolid] = []
    lineno, tokens = next_content()
    while tokens:
        if tokens[0].lower() != "solid":
            raise StlFormatError(f"line {lineno}: expected 'solid', got {tokens[0]!r}")
        name = tokens[1] if len(tokens) > 1 else ""
        normals, tris = [], []
        while True:
            lineno, tokens = next_content()
            if not tokens:
                raise StlFormatError(f"line {lineno}: missing 'endsolid'")
            word = tokens[0].lower()
            if word == "endsolid":
                break
            if word != "facet":
                raise StlFormatError(f"line {lineno}: expected 'facet' or 'endsolid', got {tokens[0]!r}")
            if len(tokens) >= 5 and tokens[1].lower() == "normal":
                try:
                    normal = _parse_floats(tokens[2:5], lineno, "normal")
                except StlFormatError:
                    normal = np.zeros(3, dtype="<f4")  # garbage normals tolerated
            else:
                normal = np.zeros(3, dtype="<f4")
            lineno, tokens = next_content()
            if [t.lower() for t in tokens[:2]] != ["outer", "loop"]:
                raise StlFormatError(f"line {lineno}: expected 'outer loop'")
            tri = []
            for _ in range(3):
                lineno, tokens = next_content()
                if not tokens or tokens[0].lower() != "vertex" or len(tokens) != 4:
                    raise StlFormatError(f"line {lineno}: expected 'vertex x y z'")
                tri.append(_parse_floats(tokens[1:4], lineno, "vertex"))
            lineno, tokens = next_content()
            if not tokens or tokens[0].lower() != "endloop":
                raise StlFormatError(f"line {lineno}: expected 'endloop'")
            lineno, tokens = next_content()
            if not tokens or tokens[0].lower() != "endfacet":
                raise StlFormatError(f"line {lineno}: expected 'endfacet'")
            normals.append(normal)
            tris.append(np.array(tri))
        solids.append(
            StlSolid(
                name=name,
                normals=np.array(normals, dtype="<f4").reshape(-1, 3),
                vertices=np.array(tris, dtype="<f4").reshape(-1, 3, 3),
                attributes=np.zeros(len(tris), dtype="<u2"),
            )
        )
        lineno, tokens = next_content()
    if not solids:
        raise StlFormatError("line 1: no 'solid' block found")
    return StlDocument(header_text="", solids=solids, encoding="ascii")


def _parse_binary(data: bytes) -> StlDocument:
    if len(data) < 84:
        raise StlFormatError(f"binary STL needs >= 84 bytes, got {len(data)}")
    (count,) = struct.unpack_from("<I", data, 80)
    expected = 84 + 50 * count
    if len(data) != expected:
        raise StlFormatError(
            f"binary length mismatch: header claims {count} triangles "
            f"({expected} bytes) but file has {len(data)} bytes"
        )
    rec = np.frombuffer(data, dtype=_FACET_DTYPE, count=count, offset=84)
    header = data[:80].rstrip(b"\x00").decode("latin-1")
    solid = StlSolid(
        name="",
        normals=rec["normal"].copy(),
        vertices=rec["vertices"].copy(),
        attributes=rec["attr"].copy(),
    )
    return StlDocument(
        header_text=header,
        solids=[solid],
        encoding="binary",
        attributes_nonzero=bool(rec["attr"].any()),
    )


def read_stl(data: bytes) -> StlDocument:
    """Decode an STL payload with format auto-detection.

    A file is ASCII iff it begins with "solid" and parses completely;
    otherwise the binary layout is attempted with an exact length check.
    """
    ascii_error: StlFormatError | None = None
    if data.startswith(b"solid"):
        try:
            return _parse_ascii(data.decode("ascii"))
        except UnicodeDecodeError:
            ascii_error = StlFormatError("starts with 'solid' but is not ASCII text")
        except StlFormatError as exc:
            ascii_error = exc
    try:
        return _parse_binary(data)
    except StlFormatError as binary_error:
        if ascii_error is not None:
            raise ascii_error
        if len(data) < 84:
            raise StlFormatError(
                f"unrecognized STL format: no 'solid' prefix and too short "
                f"for binary ({len(data)} bytes)"
            ) from None
        raise binary_error


def scale_mesh(
    mesh: TriangleMesh,
    factor: float | None = None,
    units: tuple[str, str] | None = None,
) -> TriangleMesh:
    """Uniformly scale a mesh by a factor or a (from, to) unit pair.

    Inch to millimeter uses 25.4 exactly; factor 1 is the identity.
    """
    per_mm = {"mm": 1.0, "inch": 25.4}
    if (factor is None) == (units is None):
        raise ValueError("give exactly one of factor or units")
    if units is not None:
        src, dst = units
        if src not in per_mm or dst not in per_mm:
            raise ValueError(f"unknown units {units}; known: {sorted(per_mm)}")
        factor = per_mm[src] / per_mm[dst]
    if factor <= 0:
        raise ValueError(f"scale factor must be positive, got {factor}")
    return TriangleMesh(mesh.vertices * float(factor), mesh.triangles)
