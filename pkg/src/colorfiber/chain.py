"""Switch Markov chain on a fiber, driven by a fixed-seed SplitMix64 stream.

The chain proposes a uniformly random move with a uniformly random sign
and holds whenever the proposal would leave the fiber (drive a pair count
negative). Because proposal and its reverse are equally likely and holds
preserve the state, the stationary distribution is uniform over the
multigraph fiber containing the start.

Simple graphs: the moves are NOT irreducible on simple-graph fibers, so
there is no simple-graph chain here. `simple_samples_only` merely filters
recorded multigraph samples down to the simple ones (rejection); whether
that reaches every simple realization depends on the instance.

Two implementations must agree bit for bit: the array kernel in the
active backend (`run`) and the step-at-a-time pure path (`step`), kept
for inspection and tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from colorfiber import _backend
from colorfiber.graphs import ColorAssignment, EdgeVector
from colorfiber.moves import MoveSet, enumerate_quadratic_moves

__all__ = [
    "ACCEPT",
    "HOLD",
    "REJECT",
    "ChainConfig",
    "ChainState",
    "RunResult",
    "SplitMix64",
    "UniformityReport",
    "default_moves",
    "run",
    "step",
    "uniformity_diagnostic",
]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

ACCEPT = "accept"
REJECT = "reject"
HOLD = "hold"


class SplitMix64:
    """SplitMix64 word stream; the chain's only randomness source.

    Fixed constants, no numpy Generator involved, so runs are reproducible
    across platforms and across the compiled/pure backends.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_word(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by 128-bit multiply-shift."""
        return (self.next_word() * n) >> 64

    def sign(self) -> int:
        """+1 or -1 from the top bit of the next word."""
        return -1 if (self.next_word() >> 63) else 1

    def coin(self) -> bool:
        return bool(self.next_word() >> 63)


@dataclass(frozen=True)
class ChainConfig:
    seed: int
    steps: int
    burn_in: int = 0
    thin: int = 1
    lazy: bool = False

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK):
            raise ValueError("seed must fit in 64 bits")
        if self.steps < 0 or self.burn_in < 0:
            raise ValueError("steps and burn_in must be nonnegative")
        if self.thin < 1:
            raise ValueError("thin must be >= 1")


@dataclass
class ChainState:
    gamma: EdgeVector
    t: int = 0
    accepted: int = 0
    rejected: int = 0


def step(
    state: ChainState,
    moves: MoveSet,
    rng: SplitMix64,
    lazy: bool = False,
) -> tuple[str, int, int]:
    """Advance one step in place; returns (outcome, move_index, sign).

    Word-for-word the same RNG consumption as the backend kernel: an
    optional leading hold word, then index word, then sign word. For a
    HOLD outcome move_index is -1 and sign 0.
    """
    state.t += 1
    if lazy and rng.coin():
        return HOLD, -1, 0
    idx = rng.below(len(moves))
    sign = rng.sign()
    mv = moves[idx]
    proposal = state.gamma + (mv if sign > 0 else mv.negated()).as_edge_vector()
    if proposal.is_multigraph():
        state.gamma = proposal
        state.accepted += 1
        return ACCEPT, idx, sign
    state.rejected += 1
    return REJECT, idx, sign


@dataclass(frozen=True)
class RunResult:
    samples: np.ndarray  # (S, P) int64 entry vectors
    accepted: int
    rejected: int
    final: EdgeVector
    config: ChainConfig
    moves: MoveSet

    @property
    def held(self) -> int:
        return self.config.steps - self.accepted - self.rejected

    def sample_vectors(self) -> list[EdgeVector]:
        n = self.final.n
        return [EdgeVector(n, row) for row in self.samples]


def default_moves(n: int, z: ColorAssignment) -> MoveSet:
    """The standard move set: all quadratic moves for the coloring."""
    return enumerate_quadratic_moves(n, z)


def run(
    start: EdgeVector,
    config: ChainConfig,
    moves: MoveSet,
    simple_samples_only: bool = False,
) -> RunResult:
    """Run the chain on the active backend.

    Samples are recorded after `burn_in` steps, every `thin` steps. With
    `simple_samples_only` a recorded state is kept only when every pair
    count is at most one; see the module note on what that does NOT give.
    """
    if moves.n != start.n:
        raise ValueError("moves and start vector live on different vertex counts")
    if len(moves) == 0:
        raise ValueError("empty move set")
    midx, mval, mlen = moves.packed()
    samples, accepted, rejected, final = _backend.chain_run(
        start.entries,
        midx,
        mval,
        mlen,
        config.steps,
        config.burn_in,
        config.thin,
        config.seed,
        config.lazy,
        simple_samples_only,
    )
    return RunResult(
        samples=samples,
        accepted=int(accepted),
        rejected=int(rejected),
        final=EdgeVector(start.n, final),
        config=config,
        moves=moves,
    )


@dataclass(frozen=True)
class UniformityReport:
    counts: np.ndarray  # visits per fiber element
    total: int
    chisq: float
    dof: int
    pvalue: float
    mean_tv_distance: float = field(default=0.0)

    def summary(self) -> str:
        return (
            f"samples={self.total} elements={len(self.counts)} "
            f"chisq={self.chisq:.3f} dof={self.dof} pvalue={self.pvalue:.4f} "
            f"tv={self.mean_tv_distance:.4f}"
        )


def uniformity_diagnostic(samples: np.ndarray, fiber) -> UniformityReport:
    """Chi-square goodness of fit of the samples against uniform.

    `fiber` is a Fiber holding every element of the multigraph fiber; each
    sample row must be one of its elements. Also reports the total
    variation distance between the empirical distribution and uniform.
    """
    from scipy import stats

    F = len(fiber)
    if F == 0:
        raise ValueError("empty fiber")
    counts = np.zeros(F, dtype=np.int64)
    n = fiber.label.n
    for row in samples:
        counts[fiber.index_of(EdgeVector(n, row))] += 1
    total = int(counts.sum())
    if total == 0:
        raise ValueError("no samples to test")
    expected = total / F
    chisq = float(((counts - expected) ** 2 / expected).sum())
    dof = F - 1
    pvalue = float(stats.chi2.sf(chisq, dof)) if dof > 0 else 1.0
    tv = 0.5 * float(np.abs(counts / total - 1.0 / F).sum())
    return UniformityReport(
        counts=counts,
        total=total,
        chisq=chisq,
        dof=dof,
        pvalue=pvalue,
        mean_tv_distance=tv,
    )
