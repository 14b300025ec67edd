import sys
import random

import pytest

from qgeo.freealg import Element
from qgeo.models import lookup
from qgeo.scalars import IMAG, Scalar

MODEL_NAMES = ["planck1d", "bicso3", "qplane", "frt_sl2", "braided_matrices_sl2"]


def presentation_of(name):
    obj = lookup(name)
    return obj.P


def random_scalar(rng, params):
    c = Scalar(rng.randint(-3, 3)) + IMAG * rng.randint(-1, 1)
    if params and rng.random() < 0.5:
        c = c * Scalar.param(rng.choice(params)) ** rng.randint(1, 2)
    if c.is_zero():
        c = Scalar(1)
    return c


def random_element(rng, P, max_len=3, max_terms=4):
    params = list(P.params) if P.params is not None else []
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(P.gens) for _ in range(rng.randint(0, max_len)))
        terms[w] = random_scalar(rng, params)
    return Element(terms)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
