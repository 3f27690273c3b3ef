# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 09/06/2023
 * Time: 09:15
 *
 * Edited by: eniocc
 * Date: 14/06/2023
 * Time: 18:27
"""
import configparser
import json
import logging
import os
import pathlib
from dataclasses import dataclass, field, fields
from typing import List, Optional, Sequence, Union

from sympy import isprime

from ltlab.core.Errors import ConfigError, LtlabError
from ltlab.model.LubinTate import FormalGroup
from ltlab.model.Padic import LocalField, _shifted_cyclotomic, make_field

_logger = logging.getLogger(__name__)

CONFIG_ENV = "LTLAB_CONFIG"

SUITES = ("padic", "series", "identities", "residues", "eps", "coh", "amice", "descent", "constants",
          "precision")

TOWER_CATALOG = ("qp", "sqrt_p", "cyclotomic1", "cyclotomic2", "lt_torsion")

_SECTIONS = {
    "field": ("p", "tower", "frobenius"),
    "precision": ("padic_digits", "series_order", "t_order", "moment_horizon"),
    "run": ("level", "suites", "seed", "allow_skip"),
    "output": ("log_level",),
}


def catalog_tower(name: str, p: int) -> List[List[int]]:
    """
    Stage polynomials (coefficients low to high) of a catalog tower.

    :param name: one of ``TOWER_CATALOG``.
    :param p: the prime.
    :return: list of stage polynomials over Q_p.
    """
    if name == "qp":
        return []
    if name == "sqrt_p":
        return [[-p, 0, 1]]
    if name.startswith("cyclotomic") and name[len("cyclotomic"):].isdigit():
        return [_shifted_cyclotomic(p, int(name[len("cyclotomic"):]))]
    if name == "lt_torsion":
        return [[p] + [0] * (p - 2) + [1]]
    raise ConfigError(detail=f"unknown tower {name!r}, expected one of {', '.join(TOWER_CATALOG)}")


@dataclass
class Config:
    p: int = 3
    tower: Union[str, List[List[int]]] = "qp"
    frobenius: Union[str, List[int]] = "special"
    padic_digits: int = 20
    series_order: int = 16
    t_order: int = 12
    moment_horizon: int = 8
    level: int = 1
    suites: List[str] = field(default_factory=lambda: ["all"])
    seed: int = 0
    allow_skip: bool = False
    log_level: str = "WARNING"

    def __post_init__(self):
        self.p = self._process_prime(self.p)
        self.tower = self._process_tower(self.tower)
        self.frobenius = self._process_frobenius(self.frobenius)
        for name in ("padic_digits", "series_order", "t_order", "moment_horizon", "level"):
            setattr(self, name, self._process_positive(name, getattr(self, name)))
        self.suites = self._process_suites(self.suites)
        self.seed = self._process_int("seed", self.seed)
        self.allow_skip = self._process_bool("allow_skip", self.allow_skip)
        self.log_level = str(self.log_level).upper()

    # ------------------------------------------------------------------ validation
    @staticmethod
    def _process_int(name: str, value) -> int:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError(detail=f"{name} must be an integer, got {value!r}") from None

    @staticmethod
    def _process_positive(name: str, value) -> int:
        value = Config._process_int(name, value)
        if value <= 0:
            raise ConfigError(detail=f"{name} must be positive, got {value}")
        return value

    @staticmethod
    def _process_prime(value) -> int:
        p = Config._process_int("p", value)
        if not isprime(p):
            raise ConfigError(detail=f"p = {p} is not prime")
        return p

    @staticmethod
    def _process_bool(name: str, value) -> bool:
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ("1", "true", "yes", "on"):
            return True
        if text in ("0", "false", "no", "off"):
            return False
        raise ConfigError(detail=f"{name} must be a boolean, got {value!r}")

    @staticmethod
    def _process_polynomials(value) -> List[List[int]]:
        if isinstance(value, str):
            try:
                value = json.loads(value)
            except json.JSONDecodeError as e:
                raise ConfigError(detail=f"cannot parse polynomial list {value!r}: {e}") from None
        try:
            return [[int(c) for c in poly] for poly in value]
        except (TypeError, ValueError):
            raise ConfigError(detail=f"polynomials must be lists of integers, got {value!r}") from None

    @staticmethod
    def _process_tower(value) -> Union[str, List[List[int]]]:
        if isinstance(value, str) and not value.strip().startswith("["):
            name = value.strip()
            if name not in TOWER_CATALOG:
                raise ConfigError(detail=f"unknown tower {name!r}, expected one of {', '.join(TOWER_CATALOG)}")
            return name
        return Config._process_polynomials(value)

    @staticmethod
    def _process_frobenius(value) -> Union[str, List[int]]:
        if isinstance(value, str) and not value.strip().startswith("["):
            name = value.strip()
            if name not in ("special", "cyclotomic"):
                raise ConfigError(detail=f"frobenius must be special, cyclotomic or a coefficient list, got {name!r}")
            return name
        try:
            if isinstance(value, str):
                value = json.loads(value)
            return [int(c) for c in value]
        except (TypeError, ValueError):
            raise ConfigError(detail=f"frobenius coefficients must be integers, got {value!r}") from None

    @staticmethod
    def _process_suites(value) -> List[str]:
        if isinstance(value, str):
            value = [s for s in value.replace(",", " ").split() if s]
        suites = list(value) or ["all"]
        for suite in suites:
            if suite != "all" and suite not in SUITES:
                raise ConfigError(detail=f"unknown suite {suite!r}, expected all or one of {', '.join(SUITES)}")
        return suites

    # ------------------------------------------------------------------ construction
    @classmethod
    def create_config_from_file(cls, path: Union[str, pathlib.Path], **overrides) -> "Config":
        """
        Read an INI file with sections [field], [precision], [run] and [output].

        :param path: path of the INI file.
        :param overrides: values that win over the file (``None`` values are ignored).
        :return: the validated Config.
        """
        parser = configparser.ConfigParser()
        try:
            with open(path, encoding="utf-8") as handle:
                parser.read_file(handle)
        except OSError as e:
            raise ConfigError(detail=f"cannot read {path}: {e}") from None
        except configparser.Error as e:
            raise ConfigError(detail=f"cannot parse {path}: {e}") from None
        values = {}
        for section in parser.sections():
            if section not in _SECTIONS:
                raise ConfigError(detail=f"unknown section [{section}] in {path}")
            for key, raw in parser.items(section):
                if key not in _SECTIONS[section]:
                    raise ConfigError(detail=f"unknown key {key!r} in [{section}]")
                values[key] = raw
        _logger.debug("Config file %s provides %s", path, sorted(values))
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def create_config(cls, path: Optional[str] = None, **overrides) -> "Config":
        """Flags override the file given by ``path`` or by the LTLAB_CONFIG environment variable."""
        path = path or os.environ.get(CONFIG_ENV)
        if path:
            return cls.create_config_from_file(path, **overrides)
        return cls(**{k: v for k, v in overrides.items() if v is not None})

    # ------------------------------------------------------------------ derived data
    @property
    def tower_polynomials(self) -> List[List[int]]:
        if isinstance(self.tower, str):
            return catalog_tower(self.tower, self.p)
        return self.tower

    @property
    def selected_suites(self) -> List[str]:
        if "all" in self.suites:
            return list(SUITES)
        return [s for s in SUITES if s in self.suites]

    def build_field(self) -> LocalField:
        try:
            return make_field(self.p, self.tower_polynomials)
        except LtlabError as e:
            raise ConfigError(detail=f"invalid tower: {e}") from e

    def build_group(self, field: Optional[LocalField] = None) -> FormalGroup:
        field = field or self.build_field()
        try:
            if isinstance(self.frobenius, str):
                return FormalGroup.create(field, self.frobenius)
            return FormalGroup.create(field, "custom", self.frobenius)
        except LtlabError as e:
            raise ConfigError(detail=f"invalid Frobenius: {e}") from e

    def replace(self, **changes) -> "Config":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return Config(**values)

    def echo(self) -> dict:
        """Canonical dictionary of the configuration, as placed in every report."""
        return {
            "p": self.p,
            "tower": self.tower if isinstance(self.tower, str) else [list(t) for t in self.tower],
            "frobenius": self.frobenius if isinstance(self.frobenius, str) else list(self.frobenius),
            "precision": {"padic_digits": self.padic_digits, "series_order": self.series_order,
                          "t_order": self.t_order, "moment_horizon": self.moment_horizon},
            "level": self.level,
            "suites": list(self.suites),
            "seed": self.seed,
            "allow_skip": self.allow_skip,
        }


def field_signature(field: LocalField) -> str:
    return f"({field.p},{field.e},{field.f})"


def standard_configurations(seed: int = 0, **changes) -> Sequence[Config]:
    """
    The (p, e, f) configurations (3,1,1) at level 2, (5,1,1) and (3,2,1).

    ``changes`` (precision, suites, allow_skip, ...) are applied to all three.
    """
    base = (Config(p=3, level=2, seed=seed), Config(p=5, seed=seed), Config(p=3, tower="sqrt_p", seed=seed))
    return tuple(config.replace(**changes) if changes else config for config in base)
