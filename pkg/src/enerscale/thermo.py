"""Closed-form identities of the dissipative-system view of civilization.

These are identities, not a fitted model: a stock of potential G is sustained
by energy consumption over a dissipation timescale tau_d, a small surplus
fraction epsilon does the irreversible work of growth, and the surplus is
partitioned between making more network nodes and raising their specific
potential. A tiny synthetic integrator exists solely so the partition-closure
property can be exercised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError
from .units import Quantity, Unit


@dataclass(frozen=True)
class ThermoState:
    """A consistent (G, tau_d, epsilon, k, n, mu) tuple; G = n*mu is enforced."""

    g: float  # total potential, J
    tau_d: float  # dissipation timescale, s
    epsilon: float  # surplus fraction, dimensionless
    k: float  # partition constant, dimensionless
    n: float  # network node count
    mu: float  # specific potential, J per node

    def __post_init__(self) -> None:
        if self.tau_d <= 0 or self.k <= 0 or self.n <= 0 or self.mu <= 0:
            raise DomainError("tau_d, k, n and mu must be positive")
        if not 0.0 <= self.epsilon < 1.0:
            raise DomainError("epsilon must lie in [0, 1)")
        if abs(self.g - self.n * self.mu) > 1e-12 * abs(self.g):
            raise DomainError("state is inconsistent: G must equal n*mu")

    @classmethod
    def from_nodes(
        cls, n: float, mu: float, tau_d: float = 86400.0, epsilon: float = 0.0, k: float = 2.0
    ) -> "ThermoState":
        return cls(g=n * mu, tau_d=tau_d, epsilon=epsilon, k=k, n=n, mu=mu)


def sustenance_power(st: ThermoState) -> float:
    """Power required to sustain circulations: G / tau_d, in watts."""
    return st.g / st.tau_d


def surplus_fraction(tau_d: float, tau_long: float) -> float:
    """epsilon = tau_d / (tau_d + tau_long)."""
    if tau_d <= 0 or tau_long <= 0:
        raise DomainError("timescales must be positive")
    return tau_d / (tau_d + tau_long)


def potential_growth_rate(st: ThermoState) -> float:
    """Growth rate of the potential, eps/((1-eps)*tau_d), in 1/s.

    The frequently used shortcut eps/tau_d is accurate to a relative error
    below eps itself.
    """
    return st.epsilon / ((1.0 - st.epsilon) * st.tau_d)


def node_production_rate(st: ThermoState, energy: float) -> float:
    """Nodes created per second from consumption ``energy`` (W): eps*E/(k*mu)."""
    if energy < 0:
        raise DomainError("energy consumption cannot be negative")
    return st.epsilon * energy / (st.k * st.mu)


def productivity_bridge(epsilon: float, scale: Quantity, tau_d: float = 86400.0) -> Quantity:
    """Economic productivity implied by the surplus fraction: eps/(lambda*tau_d).

    Returns T$2010 per EJ, comparable directly with production-per-energy data.
    """
    if epsilon < 0 or tau_d <= 0:
        raise DomainError("epsilon must be nonnegative and tau_d positive")
    if scale.unit is not Unit.GW_PER_TUSD:
        raise DomainError("scaling must be in GW per T$2010")
    watts_per_dollar = scale.value * 1e9 / 1e12
    dollars_per_joule = epsilon / (watts_per_dollar * tau_d)
    # $ per J -> T$ per EJ: x 1e18 J/EJ / 1e12 $/T$.
    return Quantity(dollars_per_joule * 1e6, Unit.TUSD_PER_EJ)


EnergyPath = Union[float, Callable[[float], float]]


def simulate_partition(
    initial: ThermoState, energy: EnergyPath, dt: float, steps: int
) -> list[ThermoState]:
    """Integrate node production under the proportional-partition rule.

    With d(mu)/d(n) = (k-1) * mu/n, the specific potential follows
    mu = mu0 * (n/n0)^(k-1) and the surplus eps*E splits so that
    dG/dt = k * mu * dn/dt exactly; the trajectory lets tests verify that
    closure numerically. Classical RK4 on n with ``energy`` in watts.
    """
    if dt <= 0 or steps <= 0:
        raise DomainError("dt and steps must be positive")
    source: Callable[[float], float] = energy if callable(energy) else (lambda _t: float(energy))
    n0, mu0, k = initial.n, initial.mu, initial.k

    def mu_of(n: float) -> float:
        return mu0 * (n / n0) ** (k - 1.0)

    def dn_dt(t: float, n: float) -> float:
        return initial.epsilon * source(t) / (k * mu_of(n))

    states = [initial]
    t, n = 0.0, n0
    for _ in range(steps):
        k1 = dn_dt(t, n)
        k2 = dn_dt(t + dt / 2.0, n + dt * k1 / 2.0)
        k3 = dn_dt(t + dt / 2.0, n + dt * k2 / 2.0)
        k4 = dn_dt(t + dt, n + dt * k3)
        n = n + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        t += dt
        mu = mu_of(n)
        states.append(
            ThermoState(
                g=n * mu, tau_d=initial.tau_d, epsilon=initial.epsilon, k=k, n=n, mu=mu
            )
        )
    return states
