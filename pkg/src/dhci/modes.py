"""Concrete modes and mode files.

A *mode* here is any object with ``instantiate(l)`` returning a map on
``B^l``. :class:`NegationMode` works at every size. :class:`XorMode` and
plain :class:`~dhci.dynamics.ModeInstance` tables are tied to one size.

The xor family ``f_k(x) = x_k XOR g_k(x without x_k)`` makes each direction
map ``x -> F_f(k, x)`` a bijection of ``B^n``. The Markov matrix is then an
average of permutation matrices and therefore doubly stochastic.
"""

import json

import numpy as np

from .bitcore import MAX_ANALYSIS_BITS, MAX_EMBED_BITS
from .dynamics import ModeInstance, NegationInstance, build_iteration_graph, is_strongly_connected
from .errors import CapacityError, ContractError, FormatError, GenerationError, RangeError
from .markov import build_markov, is_doubly_stochastic, period_and_primitivity
from .strategy import FNV_OFFSET, StrategyStream


def negation_mode(n):
    if not 1 <= n <= MAX_EMBED_BITS:
        raise RangeError(f"negation mode tables are supported for 1 <= n <= {MAX_EMBED_BITS}")
    return NegationInstance(n)


def _check_table_size(n):
    if not 1 <= n <= MAX_EMBED_BITS:
        raise CapacityError(f"truth-table modes are limited to 1 <= n <= {MAX_EMBED_BITS}, got {n}")


def identity_mode(n):
    _check_table_size(n)
    return ModeInstance(n, np.arange(1 << n))


def constant_mode(n, value=0):
    """Every state maps to ``value``; the negative control of the analysis."""
    _check_table_size(n)
    return ModeInstance(n, np.full(1 << n, value))


def _remove_bit(states, k):
    """Drop bit ``k`` (0-based) from each integer in ``states``."""
    low = states & ((1 << k) - 1)
    high = states >> (k + 1)
    return low | (high << k)


def instantiate_xor_mode(g, n):
    """Truth table of ``f_k(x) = x_k XOR g_k(x_{-k})``.

    ``g[k-1]`` is a 0/1 table of length ``2^(n-1)`` indexed by the decimal
    value of ``x`` with component ``k`` removed, remaining components keeping
    their relative order.
    """
    if len(g) != n:
        raise ContractError(f"expected {n} g-tables, got {len(g)}")
    tables = [np.asarray(t, dtype=np.int64) for t in g]
    for k, t in enumerate(tables, start=1):
        if t.shape != (1 << (n - 1),):
            raise ContractError(f"g_{k} must have 2^{n - 1} entries, got {t.size}")
        if t.size and (t.min() < 0 or t.max() > 1):
            raise ContractError(f"g_{k} entries must be 0 or 1")
    states = np.arange(1 << n, dtype=np.int64)
    table = states.copy()
    for k, t in enumerate(tables):
        table ^= t[_remove_bit(states, k)] << k
    return ModeInstance(n, table)


class NegationMode:
    name = "negation"

    def instantiate(self, length):
        return NegationInstance(length)


class XorMode:
    """An xor-family mode fixed at ``n = len(g)``."""

    def __init__(self, g):
        self.g = [list(t) for t in g]
        self.n = len(self.g)

    def instantiate(self, length):
        if length != self.n:
            raise ContractError(f"xor mode is defined for n={self.n}, not {length}")
        return instantiate_xor_mode(self.g, self.n)


def draw_xor_tables(stream, n):
    return [[stream.below(2) for _ in range(1 << (n - 1))] for _ in range(n)]


def generate_valid_mode(n, seed, max_tries=1000):
    """First xor-mode drawn from ``seed`` that is strongly connected and primitive.

    Deterministic in ``(n, seed)``. The number of candidates drawn is left on
    the result as ``tries``.
    """
    if not 1 <= n <= MAX_ANALYSIS_BITS:
        raise CapacityError(f"mode generation needs graph analysis, limited to n <= {MAX_ANALYSIS_BITS}")
    stream = StrategyStream(seed or FNV_OFFSET, 2)
    for tries in range(1, max_tries + 1):
        candidate = instantiate_xor_mode(draw_xor_tables(stream, n), n)
        if not is_strongly_connected(build_iteration_graph(candidate)):
            continue
        markov = build_markov(candidate)
        assert is_doubly_stochastic(markov)
        if period_and_primitivity(markov)[1]:
            candidate.tries = tries
            return candidate
    raise GenerationError(f"no valid mode found for n={n} after {max_tries} tries", max_tries)


def save_mode(f, path):
    doc = {"n": f.n, "truth_table": [int(v) for v in f.truth_table]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_mode(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or not isinstance(doc.get("truth_table"), list):
        raise FormatError(f"{path}: expected an object with integer 'n' and list 'truth_table'")
    n, table = doc["n"], doc["truth_table"]
    if not all(isinstance(v, int) for v in table):
        raise FormatError(f"{path}: truth table entries must be integers")
    if n < 1 or n > MAX_EMBED_BITS:
        raise FormatError(f"{path}: n={n} outside [1, {MAX_EMBED_BITS}]")
    if len(table) != 1 << n:
        raise FormatError(f"{path}: truth table has {len(table)} entries, expected {1 << n}")
    if any(not 0 <= v < (1 << n) for v in table):
        raise RangeError(f"{path}: truth table entry outside [0, {(1 << n) - 1}]")
    return ModeInstance(n, table)


class SizedFamily:
    """A mode built on demand at whatever size it is instantiated with."""

    def __init__(self, name, build):
        self.name = name
        self._build = build

    def instantiate(self, length):
        return self._build(length)


BUILTIN_MODES = {
    "negation": NegationMode(),
    "identity": SizedFamily("identity", identity_mode),
    "zero": SizedFamily("zero", constant_mode),
}
