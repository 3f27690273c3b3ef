#!/usr/bin/env python

"""Shared fixtures: the three (p, e, f) configurations and their formal groups."""

import numpy as np
import pytest

from ltlab.core.Config import Config
from ltlab.core.Utils import load_json
from ltlab.model.LubinTate import FormalGroup
from ltlab.model.Padic import make_field


@pytest.fixture(scope="session")
def q3():
    """Q_3, signature (3, 1, 1)."""
    return make_field(3)


@pytest.fixture(scope="session")
def q5():
    """Q_5, signature (5, 1, 1)."""
    return make_field(5)


@pytest.fixture(scope="session")
def sqrt3():
    """Q_3(sqrt 3), signature (3, 2, 1)."""
    return make_field(3, [[-3, 0, 1]])


@pytest.fixture(scope="session")
def special3(q3):
    return FormalGroup.special(q3)


@pytest.fixture(scope="session")
def special5(q5):
    return FormalGroup.special(q5)


@pytest.fixture(scope="session")
def special_sqrt3(sqrt3):
    return FormalGroup.special(sqrt3)


@pytest.fixture(scope="session")
def cyclotomic3(q3):
    return FormalGroup.cyclotomic(q3)


@pytest.fixture
def rng():
    return np.random.default_rng(20230612)


@pytest.fixture
def small_config():
    """A cheap configuration for end-to-end runs."""
    return Config(p=3, padic_digits=12, series_order=8, t_order=6, moment_horizon=4, seed=7)


@pytest.fixture
def ini_file(tmp_path):
    def write(text: str):
        path = tmp_path / "ltlab.ini"
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture(scope="session")
def report_schema():
    return load_json("schema/report-v1.schema.json")
