"""Keyed strategy adapters.

A strategy for an ``l``-component system is an endless sequence of indices
in ``[1, l]``. Here it is produced by xorshift64* seeded with a 64-bit FNV-1a
digest of ``(key, message)``, and reduced to ``[1, l]`` by rejection so every
index is exactly equally likely. Nothing about the cover enters the stream.
"""

from .bitcore import bits_to_bytes
from .errors import ContractError, RangeError

MASK64 = (1 << 64) - 1
FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
XORSHIFT_MULTIPLIER = 2685821657736338717


def fnv1a64(data, h=FNV_OFFSET):
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & MASK64
    return h


def derive_seed(key, message_bits=()):
    """Seed for the strategy instantiated by ``message_bits`` under ``key``.

    The key bytes are absorbed first, then the message packed 8 bits per byte
    (first bit most significant, tail zero-padded). A zero digest is replaced
    by the offset basis so the generator state is never zero.
    """
    key = bytes(key)
    if not key:
        raise ContractError("embedding key must not be empty")
    h = fnv1a64(key)
    if len(message_bits):
        h = fnv1a64(bits_to_bytes(message_bits), h)
    return h or FNV_OFFSET


class StrategyStream:
    """Infinite iterator over ``[1, l]`` driven by xorshift64*.

    Single-consumer: iterating advances the shared state.
    """

    def __init__(self, seed, l):
        if l < 1:
            raise RangeError(f"strategy range must be at least 1, got {l}")
        seed &= MASK64
        self.state = seed or FNV_OFFSET
        self.l = l
        self.count = 0
        self._bound = (1 << 64) - ((1 << 64) % l)

    def next_word(self):
        """Advance once and return the raw 64-bit output word."""
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        self.state = s
        return (s * XORSHIFT_MULTIPLIER) & MASK64

    def next_index(self):
        while True:
            w = self.next_word()
            if w < self._bound:
                self.count += 1
                return w % self.l + 1

    def below(self, bound):
        """Uniform integer in ``[0, bound)`` from the same raw stream."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            w = self.next_word()
            if w < limit:
                return w % bound

    def take(self, count):
        return [self.next_index() for _ in range(count)]

    def __iter__(self):
        return self

    def __next__(self):
        return self.next_index()


def make_strategy(key, message_bits, l):
    return StrategyStream(derive_seed(key, message_bits), l)
