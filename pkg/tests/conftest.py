"""Shared test fixtures for tightscatter tests."""

import pytest
import yaml

from tightscatter.coeffring import ONE, ZERO
from tightscatter.scattering import RAY, InitialData, ScatteringDiagram, Wall, ks_complete

D22_ORDER = 20


@pytest.fixture(scope="session")
def d22():
    """Completed diagram for P1 = 1 + x^2, P2 = 1 + y^2, written out to order 20.

    Rays (k+1,k) and (k,k+1) carry 1 + t^2; the ray (1,1) carries
    1/(1 - t^2)^2 = 1 + 2t^2 + 3t^4 + ...
    """
    rays = {}
    for k in range(1, D22_ORDER):
        for w in ((k + 1, k), (k, k + 1)):
            if 2 * (w[0] + w[1]) <= D22_ORDER:
                rays[w] = Wall(w, RAY, (ONE, ZERO, ONE))
    diag = [ONE]
    for j in range(1, D22_ORDER // 2 + 1):
        diag.append(ZERO if j % 2 else ONE * (j // 2 + 1))
    rays[(1, 1)] = Wall((1, 1), RAY, tuple(diag))
    return ScatteringDiagram(InitialData.cluster(2, 2).walls(), rays, D22_ORDER)


@pytest.fixture(scope="session")
def cubic_quadratic_data():
    """P1 = 1 + x^3, P2 = 1 + y^2."""
    return InitialData.cluster(3, 2)


@pytest.fixture(scope="session")
def cubic_quadratic_diagram(cubic_quadratic_data):
    return ks_complete(cubic_quadratic_data, 10)


@pytest.fixture(scope="session")
def symbolic_11_diagram():
    return ks_complete(InitialData.symbolic(1, 1), 4)


@pytest.fixture
def write_yaml(tmp_path):
    """Write a dict to a YAML file under tmp_path and return its path."""
    def _write(content: dict, name: str = "jobs.yaml") -> str:
        path = tmp_path / name
        path.write_text(yaml.dump(content))
        return str(path)
    return _write
