"""Shared pytest fixtures"""

import pytest

from app import create_app
from services.scenario import canonical_fig2, canonical_fig3, canonical_fig4, simulate


@pytest.fixture
def app():
    return create_app({'TESTING': True})


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def fig2_graph():
    return simulate(canonical_fig2())


@pytest.fixture
def fig3_graph():
    return simulate(canonical_fig3())


@pytest.fixture
def fig4_graph():
    return simulate(canonical_fig4())
