"""Signification functions and the MSC / LSC / passive split of a host.

Bit positions are 0-based, position 0 being the most significant bit of the
first byte of the host stream. With the 8-bit plane weighting
``u^k = 8 - (k mod 8)`` the MSB of every byte weighs 8 and the LSB weighs 1.
"""

from dataclasses import dataclass

import numpy as np

from .bitcore import as_bitstream
from .errors import ContractError, StructuralError


class BitplaneSignification:
    """``u^k = 8 - (k mod 8)`` for 8-bit samples packed MSB-first."""

    kind = "bitplane-8"

    def values(self, total_bits):
        return 8 - (np.arange(total_bits) % 8)


class ExplicitSignification:
    kind = "explicit"

    def __init__(self, weights):
        self.weights = np.asarray(weights, dtype=np.float64)

    def values(self, total_bits):
        if total_bits > self.weights.size:
            raise ContractError(
                f"explicit signification has {self.weights.size} terms, host has {total_bits} bits"
            )
        return self.weights[:total_bits]


BITPLANE_8 = BitplaneSignification()


def classify(u, m, M, total_bits):
    """Return ``(u_M, u_m, u_p)``: positions with weight ``>= M``, ``<= m``, and in between."""
    if not m < M:
        raise ContractError(f"thresholds must satisfy m < M, got m={m}, M={M}")
    w = u.values(total_bits)
    u_M = np.flatnonzero(w >= M)
    u_m = np.flatnonzero(w <= m)
    u_p = np.flatnonzero((w > m) & (w < M))
    assert u_M.size + u_m.size + u_p.size == total_bits
    return u_M, u_m, u_p


@dataclass(frozen=True, eq=False)
class DecomposedHost:
    u_M: np.ndarray
    u_m: np.ndarray
    u_p: np.ndarray
    phi_M: np.ndarray
    phi_m: np.ndarray
    phi_p: np.ndarray
    total_bits: int

    def replace_lsc(self, w):
        return DecomposedHost(self.u_M, self.u_m, self.u_p, self.phi_M, as_bitstream(w), self.phi_p, self.total_bits)


def decompose(x, u, m, M):
    x = as_bitstream(x)
    u_M, u_m, u_p = classify(u, m, M, x.size)
    return DecomposedHost(u_M, u_m, u_p, x[u_M], x[u_m], x[u_p], x.size)


def _check_structure(d):
    for name in ("M", "m", "p"):
        idx = getattr(d, "u_" + name)
        phi = getattr(d, "phi_" + name)
        if len(idx) != len(phi):
            raise StructuralError(f"|u_{name}| = {len(idx)} but |phi_{name}| = {len(phi)}")
        if len(idx) > 1 and np.any(np.diff(idx) <= 0):
            raise StructuralError(f"u_{name} is not strictly increasing")
    positions = np.concatenate([d.u_M, d.u_m, d.u_p]).astype(np.int64)
    if positions.size != d.total_bits or not np.array_equal(np.sort(positions), np.arange(d.total_bits)):
        raise StructuralError(f"coefficient index sets do not partition [0, {d.total_bits - 1}]")


def recompose(d):
    _check_structure(d)
    x = np.empty(d.total_bits, dtype=np.uint8)
    x[d.u_M] = d.phi_M
    x[d.u_m] = d.phi_m
    x[d.u_p] = d.phi_p
    return x


def embed_coefficients(d, w):
    """Host of ``d`` with its LSC bits replaced by ``w``."""
    w = as_bitstream(w)
    if w.size != d.u_m.size:
        raise ContractError(f"embedded vector has {w.size} bits, host offers {d.u_m.size} LSCs")
    return recompose(d.replace_lsc(w))
