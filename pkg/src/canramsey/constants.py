"""Constants of the layered rainbow-path construction.

For path parameter k and local-density scale rho:

    gamma_i = (1/4) (1/20)^i            for i = 0..k-1
    theta   = gamma_{k-1} / 2^(4k)
    d       = (1/4) (theta/4)^(2k) prod_{i=1}^{k-1} gamma_i^2
    xi      = rho^2 d
    eps     = alpha = xi^2
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class LayerConstants:
    k: int
    rho: float
    gammas: tuple[float, ...]
    theta: float
    d: float
    xi: float
    eps: float
    alpha: float

    @classmethod
    def default(cls, k: int, rho: float = 0.25, **overrides) -> "LayerConstants":
        """The literal constants; ``overrides`` replace individual fields
        afterwards without recomputing the others."""
        if k < 2:
            raise ValueError("k must be at least 2")
        if not 0 < rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        gammas = tuple(0.25 * (1 / 20) ** i for i in range(k))
        theta = gammas[k - 1] / 2 ** (4 * k)
        d = 0.25 * (theta / 4) ** (2 * k) * math.prod(g * g for g in gammas[1:])
        xi = rho * rho * d
        base = cls(k, rho, gammas, theta, d, xi, xi * xi, xi * xi)
        if "gammas" in overrides:
            overrides["gammas"] = tuple(overrides["gammas"])
        unknown = set(overrides) - set(asdict(base))
        if unknown:
            raise ValueError(f"unknown constant(s): {sorted(unknown)}")
        return replace(base, **overrides)

    def beta(self, ell: int, p: float, layer_sizes: list[int]) -> float:
        """(theta/4)^(2 ell) p^(2 ell - 1) prod_{j=1}^{ell} |U_{k-j}|^2."""
        prod = math.prod(layer_sizes[self.k - j] ** 2 for j in range(1, ell + 1))
        return (self.theta / 4) ** (2 * ell) * p ** (2 * ell - 1) * prod

    def to_dict(self) -> dict:
        out = asdict(self)
        out["gammas"] = list(self.gammas)
        return out


def default_density(k: int) -> float:
    """The d of the constants above (it does not depend on rho)."""
    return LayerConstants.default(k).d
