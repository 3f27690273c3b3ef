#!/usr/bin/env python

"""Tests for `ltlab` package."""

import pytest

import ltlab
from ltlab.core.Config import field_signature
from ltlab.sample.Sample import Sample


@pytest.fixture
def sample():
    return Sample()


def test_version():
    assert ltlab.__version__


@pytest.mark.parametrize("name, signature", [("standard", "(3,1,1)"), ("ramified", "(3,2,1)")])
def test_sample_configurations(sample, name, signature):
    config = sample.config(name)
    assert field_signature(config.build_field()) == signature
    assert config.build_group().variant == "special"


def test_sample_overrides(sample):
    config = sample.config("ramified", seed=11)
    assert config.seed == 11
    assert config.selected_suites == ["identities", "eps", "coh"]
