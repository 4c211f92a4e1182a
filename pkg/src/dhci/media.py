"""8-bit binary PGM (P5) images and raw message files as bit streams."""

from dataclasses import dataclass

import numpy as np

from .bitcore import as_bitstream, bytes_to_bits
from .errors import ContractError, FormatError

WHITESPACE = b" \t\n\r\v\f"


class PgmError(FormatError):
    code = "pgm"


class PgmMagicError(PgmError):
    code = "bad-magic"


class PgmHeaderError(PgmError):
    code = "bad-header"


class PgmDepthError(PgmError):
    code = "unsupported-depth"


class PgmTruncatedError(PgmError):
    code = "truncated"


@dataclass(frozen=True, eq=False)
class GrayImage:
    width: int
    height: int
    pixels: np.ndarray
    maxval: int = 255

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ContractError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if self.maxval != 255:
            raise ContractError("only maxval 255 is supported")
        pixels = np.ascontiguousarray(self.pixels, dtype=np.uint8).reshape(-1)
        if pixels.size != self.width * self.height:
            raise ContractError(f"{pixels.size} pixels for a {self.width}x{self.height} image")
        object.__setattr__(self, "pixels", pixels)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and np.array_equal(
            self.pixels, other.pixels
        )


def parse_pgm(data):
    if data[:2] != b"P5":
        raise PgmMagicError("not a binary PGM file (magic P5 expected)")
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise PgmHeaderError("header ends early")
        c = data[pos : pos + 1]
        if c in WHITESPACE:
            pos += 1
        elif c == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
        else:
            if not fields and pos == 2:
                raise PgmMagicError("magic must be followed by whitespace")
            start = pos
            while pos < len(data) and data[pos : pos + 1] not in WHITESPACE and data[pos : pos + 1] != b"#":
                pos += 1
            token = data[start:pos]
            if not token.isdigit():
                raise PgmHeaderError(f"bad header field {token!r}")
            fields.append(int(token))
    width, height, maxval = fields
    if maxval != 255:
        raise PgmDepthError(f"maxval {maxval} not supported, only 255")
    if width < 1 or height < 1:
        raise PgmHeaderError(f"bad dimensions {width}x{height}")
    if pos >= len(data) or data[pos : pos + 1] not in WHITESPACE:
        raise PgmTruncatedError("missing whitespace byte before pixel data")
    pos += 1
    count = width * height
    raw = data[pos : pos + count]
    if len(raw) < count:
        raise PgmTruncatedError(f"expected {count} pixel bytes, found {len(raw)}")
    return GrayImage(width, height, np.frombuffer(raw, dtype=np.uint8).copy())


def read_pgm(path):
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def format_pgm(img):
    return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()


def write_pgm(img, path):
    with open(path, "wb") as fh:
        fh.write(format_pgm(img))


def image_to_bits(img):
    return np.unpackbits(img.pixels)


def bits_to_image(bits, width, height):
    bits = as_bitstream(bits)
    if bits.size != 8 * width * height:
        raise ContractError(f"{bits.size} bits cannot fill a {width}x{height} 8-bit image")
    return GrayImage(width, height, np.packbits(bits))


def read_message(path):
    with open(path, "rb") as fh:
        return bytes_to_bits(fh.read())
