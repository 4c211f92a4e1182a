"""Markov chain of the asynchronous dynamics under a uniform strategy.

With the strategy index uniform on ``[1, n]`` and independent of the state,
one step moves ``j`` to ``F_f(k, j)`` with probability ``1/n`` for each ``k``.
:class:`MarkovMatrix` keeps the integer counts ``n * M`` so structural checks
are exact; only :func:`evolve` and :func:`mixing_time` touch floats.
"""

from collections import deque
from math import gcd

import numpy as np
from scipy import sparse

from .dynamics import direction_targets, strongly_connected_components
from .errors import ContractError, PreconditionError


class MarkovMatrix:
    """``counts[j, i]`` = number of directions ``k`` with ``F_f(k, j) = i``."""

    def __init__(self, n, counts):
        counts = np.asarray(counts)
        size = 1 << n
        if counts.shape != (size, size):
            raise ContractError(f"counts must be {size}x{size}, got {counts.shape}")
        if not np.all(counts.sum(axis=1) == n):
            raise ContractError(f"every row of counts must sum to n={n}")
        self.n = n
        self.counts = counts
        self._step = None

    @property
    def size(self):
        return 1 << self.n

    @property
    def probabilities(self):
        return self.counts / self.n

    def support(self):
        """Successor lists of the positive-entry graph."""
        rows, cols = np.nonzero(self.counts)
        adjacency = [[] for _ in range(self.size)]
        for r, c in zip(rows.tolist(), cols.tolist()):
            adjacency[r].append(c)
        return adjacency

    def step(self, pi):
        """One product ``pi M``; summation order is fixed by the CSR layout."""
        if self._step is None:
            self._step = sparse.csr_matrix(self.probabilities.T)
        return self._step @ pi


def build_markov(f):
    targets = direction_targets(f)
    size = 1 << f.n
    counts = np.zeros((size, size), dtype=np.int16)
    rows = np.arange(size)
    for k in range(f.n):
        np.add.at(counts, (rows, targets[k]), 1)
    return MarkovMatrix(f.n, counts)


def is_doubly_stochastic(m):
    return bool(np.all(m.counts.sum(axis=0, dtype=np.int64) == m.n))


def period_and_primitivity(m):
    """Period of the chain and whether it is primitive (period 1).

    The period is the gcd of ``level[u] + 1 - level[v]`` over every support
    arc, with BFS levels measured from state 0. That equals the gcd of cycle
    lengths through state 0 for an irreducible chain.
    """
    adjacency = m.support()
    if len(strongly_connected_components(adjacency)) != 1:
        raise PreconditionError("period is only defined here for a strongly connected chain")
    level = [-1] * m.size
    level[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if level[v] == -1:
                level[v] = level[u] + 1
                queue.append(v)
    period = 0
    for u, succ in enumerate(adjacency):
        for v in succ:
            period = gcd(period, level[u] + 1 - level[v])
            if period == 1:
                return 1, True
    return period, period == 1


def uniform(n):
    size = 1 << n
    return np.full(size, 1.0 / size)


def point_mass(n, j=0):
    pi = np.zeros(1 << n)
    pi[j] = 1.0
    return pi


def evolve(pi0, m, t):
    pi = np.asarray(pi0, dtype=np.float64)
    if pi.shape != (m.size,):
        raise ContractError(f"distribution has shape {pi.shape}, matrix needs ({m.size},)")
    for _ in range(t):
        pi = m.step(pi)
    return pi


def total_variation(a, b):
    return 0.5 * float(np.abs(np.asarray(a) - np.asarray(b)).sum())


def mixing_time(m, epsilon, t_max=None, start=0):
    """Least ``q <= t_max`` with ``TV(e_start M^q, uniform) < epsilon``.

    Returns ``(q, tv)``; ``q`` is ``None`` when the threshold is never met,
    in which case ``tv`` is the distance at ``t_max``. ``t_max`` defaults
    to ``4**n``.
    """
    if epsilon <= 0:
        raise ContractError("epsilon must be positive")
    if t_max is None:
        t_max = 4 ** m.n
    target = uniform(m.n)
    pi = point_mass(m.n, start)
    for t in range(t_max + 1):
        tv = total_variation(pi, target)
        if tv < epsilon:
            return t, tv
        if t < t_max:
            pi = m.step(pi)
    return None, tv
