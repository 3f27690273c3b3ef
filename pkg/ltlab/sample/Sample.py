# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 13/06/2023
 * Time: 19:02
 *
 * Edited by: eniocc
 * Date: 13/06/2023
 * Time: 19:02
"""


import pathlib
from dataclasses import dataclass

from ltlab.core.Config import Config


@dataclass
class Sample:
    _dir_sample = "sample"

    @property
    def dir_sample(self) -> str:
        return self._dir_sample

    @property
    def project_root(self) -> pathlib.Path:
        current_dir = pathlib.Path(__file__).resolve().parent
        return current_dir.parent

    @property
    def standard(self) -> str:
        return str(self.project_root / self.dir_sample / "standard.ini")

    @property
    def ramified(self) -> str:
        return str(self.project_root / self.dir_sample / "ramified.ini")

    def config(self, name: str = "standard", **overrides) -> Config:
        return Config.create_config_from_file(getattr(self, name), **overrides)
