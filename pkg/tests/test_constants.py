from __future__ import annotations

import math

import pytest

from canramsey.constants import LayerConstants, default_density


def test_default_constants_k2():
    c = LayerConstants.default(2)
    assert c.gammas == (0.25, 0.25 / 20)
    assert c.theta == pytest.approx(0.0125 / 256)
    d = 0.25 * (c.theta / 4) ** 4 * (0.0125**2)
    assert c.d == pytest.approx(d, rel=1e-12)
    assert c.xi == pytest.approx(d / 16)
    assert c.alpha == c.eps == pytest.approx(c.xi**2)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_constants_are_tiny_and_ordered(k):
    c = LayerConstants.default(k)
    assert all(a > b for a, b in zip(c.gammas, c.gammas[1:]))
    assert 0 < c.alpha < c.xi < c.d < c.theta < c.gammas[-1]
    assert default_density(k) == c.d


def test_overrides_and_validation():
    c = LayerConstants.default(3, theta=0.5, gammas=[0.3, 0.2, 0.1])
    assert c.theta == 0.5 and c.gammas == (0.3, 0.2, 0.1)
    # other fields are not recomputed
    assert c.d == LayerConstants.default(3).d
    with pytest.raises(ValueError):
        LayerConstants.default(1)
    with pytest.raises(ValueError):
        LayerConstants.default(2, rho=0)
    with pytest.raises(ValueError):
        LayerConstants.default(2, zeta=1)


def test_beta_formula():
    c = LayerConstants.default(3, theta=0.4)
    sizes = [100, 20, 5]
    assert c.beta(1, 0.1, sizes) == pytest.approx(0.1**2 * 0.1 * 5**2)
    assert c.beta(2, 0.1, sizes) == pytest.approx(0.1**4 * 0.1**3 * 25 * 400)
    assert math.isclose(c.to_dict()["theta"], 0.4)
