"""dhCI embedding and non-blind verification.

The host's LSC vector is iterated ``q`` times under the mode instantiated at
``l = |u_m|``, following the strategy keyed by ``(key, message)``. The final
configuration replaces the LSCs. Checking recomputes that configuration from
the original host and compares it with the candidate's LSCs.
"""

from dataclasses import dataclass, field

import numpy as np

from .bitcore import as_bitstream
from .dynamics import iterate
from .errors import ContractError
from .modes import NegationMode
from .significance import BITPLANE_8, decompose, embed_coefficients
from .strategy import make_strategy

DEFAULT_TAU = 0.95


@dataclass(frozen=True)
class EmbeddingParams:
    key: bytes
    mode: object = field(default_factory=NegationMode)
    signification: object = BITPLANE_8
    m: float = 2
    M: float = 6
    q: int = 17
    tau: float = DEFAULT_TAU

    def __post_init__(self):
        if not self.m < self.M:
            raise ContractError(f"thresholds must satisfy m < M, got m={self.m}, M={self.M}")
        if self.q < 1:
            raise ContractError(f"iteration count must be positive, got {self.q}")
        if not 0 <= self.tau <= 1:
            raise ContractError(f"similarity threshold must lie in [0, 1], got {self.tau}")
        if not self.key:
            raise ContractError("embedding key must not be empty")


def _watermark_from(d, y, p):
    l = d.u_m.size
    if l == 0:
        raise ContractError("host has no least significant coefficients under these thresholds")
    f = p.mode.instantiate(l)
    strategy = make_strategy(p.key, y, l)
    return np.array(iterate(f, strategy, tuple(d.phi_m.tolist()), p.q), dtype=np.uint8)


def compute_watermark(x, y, p):
    """The ``q``-th iterate of the host's LSC vector (the bits actually embedded)."""
    return _watermark_from(decompose(x, p.signification, p.m, p.M), as_bitstream(y), p)


def dhci_embed(x, y, p):
    d = decompose(x, p.signification, p.m, p.M)
    return embed_coefficients(d, _watermark_from(d, as_bitstream(y), p))


def dhci_check(x, z, y, p):
    """Return ``(similarity, marked)`` for candidate ``z`` against host ``x``."""
    x = as_bitstream(x)
    z = as_bitstream(z)
    if z.size != x.size:
        raise ContractError(f"candidate has {z.size} bits, host has {x.size}")
    d = decompose(x, p.signification, p.m, p.M)
    expected = _watermark_from(d, as_bitstream(y), p)
    similarity = float(np.count_nonzero(z[d.u_m] == expected)) / expected.size
    return similarity, similarity >= p.tau
