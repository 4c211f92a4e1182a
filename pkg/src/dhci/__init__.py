"""dhCI information hiding: chaotic asynchronous iterations on a host's least
significant coefficients, plus tooling that checks a mode's stego-security
and chaos-security prerequisites."""

from .bitcore import deci, flip, undeci
from .dynamics import (
    ModeInstance,
    build_iteration_graph,
    component_update,
    is_strongly_connected,
    iterate,
)
from .markov import (
    build_markov,
    evolve,
    is_doubly_stochastic,
    mixing_time,
    period_and_primitivity,
)
from .modes import (
    NegationMode,
    XorMode,
    generate_valid_mode,
    instantiate_xor_mode,
    load_mode,
    negation_mode,
    save_mode,
)
from .significance import BITPLANE_8, classify, decompose, embed_coefficients, recompose
from .strategy import derive_seed, make_strategy
from .watermark import EmbeddingParams, compute_watermark, dhci_check, dhci_embed

__version__ = "0.1.0"
