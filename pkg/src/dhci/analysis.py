"""Security checks for a mode.

Structural hypotheses (strong connectivity, doubly stochastic matrix) come
from the markov and dynamics modules. The stego-security side is also probed
empirically. Uniformly drawn configurations are pushed through ``q`` keyed
iterations and the output histogram goes through a chi-square test at
alpha = 0.01.
"""

import hashlib
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from .bitcore import MAX_ANALYSIS_BITS
from .dynamics import build_iteration_graph, is_strongly_connected
from .errors import CapacityError, ContractError
from .markov import build_markov, is_doubly_stochastic, mixing_time, period_and_primitivity
from .strategy import StrategyStream, make_strategy

ALPHA = 0.01


def chi_square_critical(dof, alpha=ALPHA):
    return float(stats.chi2.ppf(1 - alpha, dof))


@dataclass(frozen=True)
class UniformityResult:
    chi2: float
    dof: int
    critical: float
    passed: bool


def sample_uniform_states(l, count, seed):
    stream = StrategyStream(seed, 1)
    size = 1 << l
    return np.array([stream.below(size) for _ in range(count)], dtype=np.int64)


def push_states(table, states, indices):
    """Apply ``F_f(i, .)`` for each ``i`` in ``indices`` to every state at once."""
    for i in indices:
        mask = 1 << (i - 1)
        states = (states & ~mask) | (table[states] & mask)
    return states


def uniformity_experiment(mode, l, key, y, q, samples, sampler_seed):
    """Chi-square test of the output distribution of ``q`` keyed iterations."""
    if not 1 <= l <= MAX_ANALYSIS_BITS:
        raise CapacityError(f"uniformity experiments are limited to l <= {MAX_ANALYSIS_BITS}")
    size = 1 << l
    if samples < 10 * size:
        raise ContractError(f"need at least {10 * size} samples for 2^{l} bins, got {samples}")
    table = np.asarray(mode.instantiate(l).truth_table, dtype=np.int64)
    indices = make_strategy(key, y, l).take(q)
    states = push_states(table, sample_uniform_states(l, samples, sampler_seed), indices)
    observed = np.bincount(states, minlength=size)
    expected = samples / size
    chi2 = float(((observed - expected) ** 2).sum() / expected)
    dof = size - 1
    critical = chi_square_critical(dof)
    return UniformityResult(chi2, dof, critical, chi2 < critical)


def chaos_security_verdict(f):
    return is_strongly_connected(build_iteration_graph(f))


@dataclass
class SecurityReport:
    mode: str
    n: int
    strongly_connected: bool
    doubly_stochastic: bool
    period: object
    primitive: bool
    mixing_q: object
    final_tv: float
    chaos_secure: bool
    stego_secure_hypotheses: bool
    chi2: float = None
    dof: int = None
    critical: float = None
    chi2_pass: bool = None

    def to_dict(self):
        return asdict(self)


def mode_fingerprint(f):
    return "sha256:" + hashlib.sha256(np.asarray(f.truth_table, dtype="<i8").tobytes()).hexdigest()[:16]


def full_report(f, epsilon=0.01, t_max=None, key=b"\x00", y=(), q=17, samples=None, sampler_seed=1, name=None):
    """Every structural check plus the chi-square experiment for ``f``.

    ``samples`` defaults to ``100 * 2^n``.
    """
    n = f.n
    if n > MAX_ANALYSIS_BITS:
        raise CapacityError(f"analysis is limited to n <= {MAX_ANALYSIS_BITS}, got {n}")
    connected = chaos_security_verdict(f)
    markov = build_markov(f)
    doubly = is_doubly_stochastic(markov)
    if connected:
        period, primitive = period_and_primitivity(markov)
    else:
        period, primitive = None, False
    q_mix, tv = mixing_time(markov, epsilon, t_max)
    if samples is None:
        samples = 100 * (1 << n)
    experiment = uniformity_experiment(f, n, key, y, q, samples, sampler_seed)
    return SecurityReport(
        mode=name or mode_fingerprint(f),
        n=n,
        strongly_connected=connected,
        doubly_stochastic=doubly,
        period=period,
        primitive=primitive,
        mixing_q=q_mix,
        final_tv=tv,
        chaos_secure=connected,
        stego_secure_hypotheses=connected and doubly,
        chi2=experiment.chi2,
        dof=experiment.dof,
        critical=experiment.critical,
        chi2_pass=experiment.passed,
    )
