"""Asynchronous Boolean dynamics and the iteration graph.

A map ``f: B^n -> B^n`` is held as a :class:`ModeInstance` whose truth table
entry ``j`` is ``deci(f(undeci(j, n)))``. The asynchronous update
``F_f(i, x)`` replaces component ``i`` of ``x`` by ``f_i(x)`` and leaves the
rest alone; ``iterate`` applies it along a strategy.
"""

import numpy as np

from .bitcore import MAX_ANALYSIS_BITS, MAX_EMBED_BITS, deci
from .errors import CapacityError, ContractError, RangeError


class ModeInstance:
    """A map B^n -> B^n stored as a truth table.

    An instance is also usable wherever a mode is expected: ``instantiate(l)``
    returns itself when ``l == n`` and fails otherwise.
    """

    def __init__(self, n, truth_table):
        if n < 1:
            raise RangeError(f"mode size must be positive, got {n}")
        if n > MAX_EMBED_BITS:
            raise CapacityError(f"truth tables are limited to n <= {MAX_EMBED_BITS}")
        table = np.asarray(truth_table, dtype=np.int64)
        if table.shape != (1 << n,):
            raise RangeError(f"truth table must have exactly 2^{n} entries, got {table.size}")
        if table.size and (table.min() < 0 or table.max() >= (1 << n)):
            raise RangeError(f"truth table entries must lie in [0, 2^{n} - 1]")
        table = table.copy()
        table.flags.writeable = False
        self.n = n
        self._table = table

    @property
    def truth_table(self):
        return self._table

    def image(self, j):
        """``deci(f(undeci(j)))``."""
        return int(self._table[j])

    def component(self, i, x):
        """``f_i(x)`` for 1-based ``i``."""
        return (self.image(deci(x)) >> (i - 1)) & 1

    def instantiate(self, length):
        if length != self.n:
            raise ContractError(f"mode is fixed at n={self.n}, cannot instantiate at {length}")
        return self

    def __eq__(self, other):
        if not isinstance(other, ModeInstance):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.truth_table, other.truth_table)

    def __hash__(self):
        return hash((self.n, self.truth_table.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"


class NegationInstance(ModeInstance):
    """``x -> not x`` at any size; the truth table is only built on request."""

    def __init__(self, n):
        if n < 1:
            raise RangeError(f"mode size must be positive, got {n}")
        self.n = n
        self._table = None

    @property
    def truth_table(self):
        if self._table is None:
            if self.n > MAX_EMBED_BITS:
                raise CapacityError(f"truth tables are limited to n <= {MAX_EMBED_BITS}")
            table = (1 << self.n) - 1 - np.arange(1 << self.n, dtype=np.int64)
            table.flags.writeable = False
            self._table = table
        return self._table

    def image(self, j):
        return ((1 << self.n) - 1) ^ j

    def component(self, i, x):
        return 1 - x[i - 1]


def component_update(f, i, x):
    """``F_f(i, x)``: ``x`` with component ``i`` replaced by ``f_i(x)``."""
    if len(x) != f.n:
        raise ContractError(f"configuration has length {len(x)}, mode has n={f.n}")
    if not 1 <= i <= f.n:
        raise RangeError(f"component index {i} outside [1, {f.n}]")
    bits = list(x)
    bits[i - 1] = f.component(i, x)
    return tuple(bits)


def iterate(f, strategy, x0, q):
    """Configuration part of ``G_f^q(s, x0)``.

    Consumes exactly ``q`` indices from ``strategy`` (any iterable of 1-based
    indices; infinite streams are read lazily).
    """
    n = f.n
    if len(x0) != n:
        raise ContractError(f"configuration has length {len(x0)}, mode has n={n}")
    if q < 0:
        raise ContractError("iteration count must be non-negative")
    if q == 0:
        return tuple(x0)
    indices = iter(strategy)

    def draw():
        try:
            i = next(indices)
        except StopIteration:
            raise ContractError("strategy exhausted before q iterations") from None
        if not 1 <= i <= n:
            raise ContractError(f"strategy produced index {i} outside [1, {n}]")
        return i

    if n <= MAX_EMBED_BITS:
        # small systems: walk the decimal index, one table lookup per step
        state = deci(x0)
        for _ in range(q):
            i = draw()
            mask = 1 << (i - 1)
            state = (state & ~mask) | (f.image(state) & mask)
        return tuple((state >> k) & 1 for k in range(n))

    bits = [int(b) for b in x0]
    for _ in range(q):
        i = draw()
        bits[i - 1] = f.component(i, bits)
    return tuple(bits)


class IterationGraph:
    """Γ(f): one arc ``(x, k, F_f(k, x))`` per state ``x`` and direction ``k``.

    ``targets[k - 1, x]`` holds the head of the arc leaving ``x`` along ``k``.
    Parallel arcs are kept (multiset view); ``successors`` gives the set view.
    """

    def __init__(self, n, targets):
        self.n = n
        self.targets = targets

    @property
    def num_vertices(self):
        return 1 << self.n

    @property
    def num_arcs(self):
        return int(self.targets.size)

    def arcs(self):
        for k in range(self.n):
            for x, y in enumerate(self.targets[k].tolist()):
                yield x, k + 1, y

    def successors(self, v):
        return sorted(set(self.targets[:, v].tolist()))

    def adjacency(self):
        """Successor lists for every vertex (set view, sorted)."""
        cols = self.targets.T.tolist()
        return [sorted(set(c)) for c in cols]


def direction_targets(f):
    """``(n, 2^n)`` array with entry ``[k-1, x] = deci(F_f(k, undeci(x)))``."""
    n = f.n
    if n > MAX_ANALYSIS_BITS:
        raise CapacityError(f"graph analysis is limited to n <= {MAX_ANALYSIS_BITS}, got {n}")
    states = np.arange(1 << n, dtype=np.int64)
    images = f.truth_table
    targets = np.empty((n, 1 << n), dtype=np.int64)
    for k in range(n):
        mask = 1 << k
        targets[k] = (states & ~mask) | (images & mask)
    return targets


def build_iteration_graph(f):
    return IterationGraph(f.n, direction_targets(f))


def strongly_connected_components(adjacency):
    """Tarjan's algorithm without recursion.

    ``adjacency[v]`` lists the successors of vertex ``v`` (vertices are
    ``0 .. len(adjacency) - 1``). Components come out in reverse topological
    order.
    """
    num = len(adjacency)
    index = [-1] * num
    lowlink = [0] * num
    on_stack = [False] * num
    stack = []
    components = []
    counter = 0

    for root in range(num):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = adjacency[v]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components


def is_strongly_connected(g):
    return len(strongly_connected_components(g.adjacency())) == 1
