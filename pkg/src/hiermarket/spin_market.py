"""Level 1: a spin market for a single asset.

Agents sit on an L x L periodic square lattice. Each carries a trading
decision spin s_i in {-1,+1} (buy/sell, read as demand) and a strategy spin
C_i in {-1,+1} (fundamentalist/chartist). A local field couples each agent
ferromagnetically to its four nearest neighbours and contrarian-wise to the
global magnetization M = mean(s):

    simplified field (default):   h_i = J * sum_nn(s) - alpha * s_i * |M|
    strategy-coupled field:       h_i = J * sum_nn(s) - alpha * C_i * M

Spins follow heat-bath dynamics: s_i becomes +1 with probability
1 / (1 + exp(-2 beta h_i)). When strategy dynamics are enabled, C_i flips
whenever alpha * s_i * C_i * sum(s) < 0 (agents in the majority turn
fundamentalist, agents in the minority turn chartist).

Magnetization is read as net demand. With linear demand and constant market
depth the price compounds as p(t+1) = p(t) * exp(c * M(t)), so the log
return is X(t) = c * M(t-1).

The frustration between local ordering and the global contrarian term is
what produces intermittent bursts of |M|, hence volatility clustering and
fat-tailed returns, without tuning to a critical point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _spin_kernels
from .errors import DomainError, ValidationError

UPDATE_ORDERS = ("sequential", "synchronous")

# Defaults land the lattice in the metastable regime with intermittent
# magnetization bursts; behaviour (not these numbers) is what is pinned
# by the stylized-fact checks.
DEFAULT_LATTICE_SIZE = 32
DEFAULT_NN_COUPLING = 1.0
DEFAULT_GLOBAL_COUPLING = 4.0
DEFAULT_INVERSE_TEMPERATURE = 0.67
DEFAULT_PRICE_SCALE = 0.1


@dataclass
class SpinMarketState:
    """Lattice of decision and strategy spins plus couplings and its RNG.

    Arrays are flat int8 views of the L x L grid in row-major order; site
    index i maps to (i // L, i % L). ``spin_sum`` caches sum(spins) as an
    exact integer so magnetization never drifts.
    """

    spins: np.ndarray
    strategies: np.ndarray
    lattice_size: int
    nn_coupling: float
    global_coupling: float
    inverse_temperature: float
    use_strategies: bool
    update_order: str
    rng: np.random.Generator
    time: int = 0
    spin_sum: int = field(default=0)

    @property
    def n_sites(self) -> int:
        return self.lattice_size * self.lattice_size

    def validate(self) -> None:
        L = self.lattice_size
        if L < 1:
            raise ValidationError("lattice_size must be >= 1")
        if self.spins.shape != (L * L,) or self.strategies.shape != (L * L,):
            raise ValidationError("spin arrays must be flat with N = L^2 entries")
        for name, arr in (("spins", self.spins), ("strategies", self.strategies)):
            if not np.all(np.abs(arr) == 1):
                raise ValidationError(f"{name} must all be -1 or +1")
        if self.nn_coupling < 0:
            raise DomainError("nn_coupling must be >= 0")
        if self.global_coupling <= 0:
            raise DomainError("global_coupling must be > 0")
        if self.inverse_temperature <= 0:
            raise DomainError("inverse_temperature must be > 0")
        if self.update_order not in UPDATE_ORDERS:
            raise ValidationError(f"update_order must be one of {UPDATE_ORDERS}")
        if int(self.spins.sum()) != self.spin_sum:
            raise ValidationError("cached spin_sum does not match the lattice")


def initial_state(lattice_size: int = DEFAULT_LATTICE_SIZE,
                  *,
                  nn_coupling: float = DEFAULT_NN_COUPLING,
                  global_coupling: float = DEFAULT_GLOBAL_COUPLING,
                  inverse_temperature: float = DEFAULT_INVERSE_TEMPERATURE,
                  use_strategies: bool = False,
                  update_order: str = "sequential",
                  seed: int | np.random.Generator = 0,
                  spins: np.ndarray | None = None,
                  strategies: np.ndarray | None = None) -> SpinMarketState:
    """Build a lattice state: i.i.d. random spins, all-fundamentalist strategies.

    ``seed`` may be an integer or an existing Generator (which the state then
    owns). Explicit ``spins``/``strategies`` arrays override the defaults.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = lattice_size * lattice_size
    if spins is None:
        spins = rng.choice(np.array([-1, 1], dtype=np.int8), size=n)
    else:
        spins = np.asarray(spins, dtype=np.int8).reshape(n).copy()
    if strategies is None:
        strategies = np.ones(n, dtype=np.int8)
    else:
        strategies = np.asarray(strategies, dtype=np.int8).reshape(n).copy()
    state = SpinMarketState(
        spins=spins,
        strategies=strategies,
        lattice_size=lattice_size,
        nn_coupling=float(nn_coupling),
        global_coupling=float(global_coupling),
        inverse_temperature=float(inverse_temperature),
        use_strategies=bool(use_strategies),
        update_order=update_order,
        rng=rng,
        spin_sum=int(spins.sum()),
    )
    state.validate()
    return state


def magnetization(state: SpinMarketState) -> float:
    """Mean spin M = (1/N) sum_j s_j, the net demand for the asset."""
    return state.spin_sum / state.n_sites


def neighbor_sum(state: SpinMarketState, site: int) -> int:
    """Sum of the four periodic nearest-neighbour spins of ``site``."""
    L = state.lattice_size
    if not 0 <= site < state.n_sites:
        raise IndexError(f"site index {site} out of range for N={state.n_sites}")
    row, col = divmod(site, L)
    s = state.spins
    return int(s[((row - 1) % L) * L + col] + s[((row + 1) % L) * L + col]
               + s[row * L + (col - 1) % L] + s[row * L + (col + 1) % L])


def local_field(state: SpinMarketState, site: int) -> float:
    """Net demand field h_i acting on one agent.

    Simplified form (default): J * sum_nn(s) - alpha * s_i * |M|.
    With strategy dynamics enabled: J * sum_nn(s) - alpha * C_i * M.
    """
    nn = neighbor_sum(state, site)
    m = magnetization(state)
    if state.use_strategies:
        global_term = state.global_coupling * state.strategies[site] * m
    else:
        global_term = state.global_coupling * state.spins[site] * abs(m)
    return state.nn_coupling * nn - global_term


def heat_bath_probability(beta: float, h: float) -> float:
    """P(s -> +1) = 1 / (1 + exp(-2 beta h)); complement is P(s -> -1)."""
    return 1.0 / (1.0 + math.exp(-2.0 * beta * h))


def spin_update(state: SpinMarketState, site: int, u: float) -> int:
    """Heat-bath draw for one site given a uniform u in [0, 1). Pure."""
    p_plus = heat_bath_probability(state.inverse_temperature, local_field(state, site))
    return 1 if u < p_plus else -1


def strategy_switch(state: SpinMarketState, site: int) -> int:
    """New strategy for ``site``: flips iff alpha * s_i * C_i * sum(s) < 0."""
    if not 0 <= site < state.n_sites:
        raise IndexError(f"site index {site} out of range for N={state.n_sites}")
    c = int(state.strategies[site])
    product = state.global_coupling * int(state.spins[site]) * c * state.spin_sum
    return -c if product < 0 else c


def step(state: SpinMarketState) -> tuple[SpinMarketState, float]:
    """Advance one sweep (N single-site updates) and return (state, M).

    Sequential order visits N uniformly drawn sites, recomputing M after
    every update; synchronous order updates every site at once from the
    sweep-start state. Each sweep consumes, in order, N site indices
    (sequential only) then N uniforms from the state's stream. The state is
    mutated in place and returned for chaining.
    """
    n = state.n_sites
    if state.update_order == "sequential":
        sites = state.rng.integers(0, n, size=n)
        uniforms = state.rng.random(n)
        state.spin_sum = int(_spin_kernels.sequential_sweep(
            state.spins, state.strategies, state.lattice_size,
            state.nn_coupling, state.global_coupling, state.inverse_temperature,
            state.use_strategies, sites, uniforms, state.spin_sum))
    else:
        uniforms = state.rng.random(n)
        state.spin_sum = int(_spin_kernels.synchronous_sweep(
            state.spins, state.strategies, state.lattice_size,
            state.nn_coupling, state.global_coupling, state.inverse_temperature,
            state.use_strategies, uniforms, state.spin_sum))
    state.time += 1
    return state, magnetization(state)


def run(state: SpinMarketState, n_sweeps: int) -> np.ndarray:
    """Run ``n_sweeps`` sweeps and return the magnetization after each."""
    mags = np.empty(n_sweeps)
    for k in range(n_sweeps):
        _, mags[k] = step(state)
    return mags


@dataclass
class PriceSeries:
    """Log prices compounded from magnetization at scale c.

    log_prices has one more entry than the magnetization series that built
    it; returns[t] = log_prices[t+1] - log_prices[t] = c * M(t) exactly.
    """

    log_prices: np.ndarray
    price_scale: float
    returns: np.ndarray

    @property
    def prices(self) -> np.ndarray:
        return np.exp(self.log_prices)


def prices_from_magnetization(mags: np.ndarray, initial_price: float,
                              price_scale: float) -> PriceSeries:
    """Compound prices as p(t+1) = p(t) * exp(c * M(t)).

    Each return is exactly c times the prior magnetization; no exp/log
    round trip touches the returns themselves.
    """
    if initial_price <= 0:
        raise DomainError("initial_price must be > 0")
    if price_scale <= 0:
        raise DomainError("price_scale must be > 0")
    mags = np.asarray(mags, dtype=float)
    returns = price_scale * mags
    log_prices = np.concatenate(([math.log(initial_price)],
                                 math.log(initial_price) + np.cumsum(returns)))
    return PriceSeries(log_prices=log_prices, price_scale=price_scale,
                       returns=returns)
