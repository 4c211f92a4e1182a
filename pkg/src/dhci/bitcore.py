"""Bit-level configurations and the decimal bijection.

A configuration of length ``l`` is a tuple of ``l`` ints in {0, 1}. The
component ``x_1`` lives at tuple index 0 and is the *least* significant bit
of the decimal index, so ``deci((1, 0)) == 1``. Every truth table and matrix
index in the package uses this order.

Bit streams (hosts, messages) are numpy ``uint8`` arrays of 0/1 values,
packed MSB-first when converted from bytes.
"""

import numpy as np

from .errors import RangeError

MAX_EMBED_BITS = 24
MAX_ANALYSIS_BITS = 12


def deci(x):
    """Decimal value of configuration ``x`` with ``x[0]`` as the low bit."""
    value = 0
    for i, bit in enumerate(x):
        if bit:
            value |= 1 << i
    return value


def undeci(i, length):
    if length < 1:
        raise RangeError(f"configuration length must be positive, got {length}")
    if not 0 <= i < (1 << length):
        raise RangeError(f"{i} is not in [0, 2^{length} - 1]")
    return tuple((i >> k) & 1 for k in range(length))


def flip(x, i):
    """Return ``x`` with component ``i`` (1-based) complemented."""
    if not 1 <= i <= len(x):
        raise RangeError(f"component index {i} outside [1, {len(x)}]")
    bits = list(x)
    bits[i - 1] ^= 1
    return tuple(bits)


def hamming(x, y):
    return sum(a != b for a, b in zip(x, y))


def bytes_to_bits(data):
    """MSB-first bit stream of ``data``; its length is 8 * len(data)."""
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits):
    """Pack a bit stream MSB-first, zero-padding the last byte."""
    return np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes()


def as_bitstream(bits):
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise RangeError("bit stream must be one-dimensional")
    if arr.size and arr.max() > 1:
        raise RangeError("bit stream entries must be 0 or 1")
    return arr
