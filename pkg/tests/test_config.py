#!/usr/bin/env python

"""Tests for `ltlab.core.Config`."""

import pytest

from ltlab.core.Config import (CONFIG_ENV, SUITES, Config, catalog_tower, field_signature,
                               standard_configurations)
from ltlab.core.Errors import ConfigError

STANDARD = """\
[field]
p = 5
tower = qp
frobenius = special

[precision]
padic_digits = 14
series_order = 10

[run]
suites = padic, eps
seed = 3
allow_skip = yes
"""


def test_defaults():
    config = Config()
    assert (config.p, config.tower, config.frobenius) == (3, "qp", "special")
    assert config.selected_suites == list(SUITES)
    echo = config.echo()
    assert echo["precision"]["padic_digits"] == 20
    assert echo["suites"] == ["all"]
    assert echo["allow_skip"] is False


def test_load_from_file(ini_file):
    config = Config.create_config_from_file(ini_file(STANDARD))
    assert config.p == 5
    assert config.padic_digits == 14
    assert config.series_order == 10
    assert config.t_order == 12
    assert config.suites == ["padic", "eps"]
    assert config.selected_suites == ["padic", "eps"]
    assert config.allow_skip is True
    assert config.seed == 3


def test_overrides_win(ini_file):
    config = Config.create_config_from_file(ini_file(STANDARD), p=3, seed=None)
    assert config.p == 3
    assert config.seed == 3


def test_environment_variable(ini_file, monkeypatch):
    monkeypatch.setenv(CONFIG_ENV, ini_file(STANDARD))
    assert Config.create_config().p == 5
    assert Config.create_config(padic_digits=30).padic_digits == 30
    monkeypatch.delenv(CONFIG_ENV)
    assert Config.create_config().p == 3


@pytest.mark.parametrize("text", [
    "[field]\np = 3\n[extra]\nx = 1\n",
    "[field]\nprime = 3\n",
    "[field]\np = 4\n",
    "[field]\ntower = sqrt_7\n",
    "[field]\nfrobenius = formal\n",
    "[field]\nfrobenius = [0, x]\n",
    "[precision]\nseries_order = 0\n",
    "[run]\nsuites = padic, everything\n",
    "[run]\nallow_skip = maybe\n",
    "not an ini file",
])
def test_invalid_files(ini_file, text):
    with pytest.raises(ConfigError):
        Config.create_config_from_file(ini_file(text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        Config.create_config_from_file(tmp_path / "absent.ini")


def test_catalog_towers():
    assert catalog_tower("qp", 3) == []
    assert catalog_tower("sqrt_p", 5) == [[-5, 0, 1]]
    assert catalog_tower("lt_torsion", 3) == [[3, 0, 1]]
    with pytest.raises(ConfigError):
        catalog_tower("sqrt_7", 3)


def test_tower_as_polynomials():
    config = Config(tower="[[-3, 0, 1]]")
    assert config.tower_polynomials == [[-3, 0, 1]]
    assert field_signature(config.build_field()) == "(3,2,1)"
    assert config.echo()["tower"] == [[-3, 0, 1]]


def test_invalid_tower_is_a_config_error():
    with pytest.raises(ConfigError):
        Config(tower="[[-9, 0, 1]]").build_field()
    with pytest.raises(ConfigError):
        Config(frobenius=[0, 3, 0, 2]).build_group()


def test_build_group():
    group = Config(p=5, frobenius="cyclotomic").build_group()
    assert group.variant == "cyclotomic"
    assert group.q == 5
    assert Config(frobenius="[0, 3, 3, 1]").build_group().variant == "custom"


def test_replace_revalidates():
    config = Config()
    assert config.replace(p=7).p == 7
    with pytest.raises(ConfigError):
        config.replace(p=9)


def test_standard_configurations():
    signatures = [field_signature(c.build_field()) for c in standard_configurations()]
    assert signatures == ["(3,1,1)", "(5,1,1)", "(3,2,1)"]
    assert [c.level for c in standard_configurations()] == [2, 1, 1]
    shared = standard_configurations(seed=4, padic_digits=12, suites=["eps"])
    assert all(c.seed == 4 and c.padic_digits == 12 and c.selected_suites == ["eps"] for c in shared)
