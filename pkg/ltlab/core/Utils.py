# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 02/05/2023
 * Time: 10:21
 *
 * Edited by: eniocc
 * Date: 16/05/2023
 * Time: 21:40
"""
import json
import logging
import pathlib
import sys
from functools import lru_cache
from typing import Optional

_logger = logging.getLogger(__name__)

PACKAGE_ROOT = pathlib.Path(__file__).resolve().parent.parent

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def load_json(json_file: str = "error_messages/en.json") -> Optional[dict]:
    """
    Carrega os dados de um arquivo JSON e retorna um objeto Python.

    Relative paths are resolved against the package root first, then against the
    current working directory.

    :param json_file: O nome do arquivo JSON (padrão: "error_messages/en.json").
    :return: Um objeto Python contendo os dados do arquivo JSON, ou None se a leitura falhar.
    """
    json_path = pathlib.Path(json_file)
    if not json_path.is_absolute() and (PACKAGE_ROOT / json_path).exists():
        json_path = PACKAGE_ROOT / json_path
    _logger.debug("Loading JSON file %s", json_path)

    try:
        with json_path.open(encoding="utf-8") as jf:
            data = json.load(jf)
    except FileNotFoundError:
        _logger.error("File %s not found.", json_file)
        return None
    except json.JSONDecodeError as e:
        _logger.error("Error decoding JSON file %s: %s", json_file, e)
        return None

    return data


@lru_cache(maxsize=None)
def error_messages(language: str = "en") -> dict:
    return load_json(f"error_messages/{language}.json") or {}


def setup_logging(level: str = "WARNING") -> None:
    """
    Configure the root ``ltlab`` logger with a single stderr handler.

    :param level: logging level name, e.g. ``"INFO"``.
    """
    logger = logging.getLogger("ltlab")
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        numeric = logging.WARNING
    logger.setLevel(numeric)
    if not any(getattr(h, "_ltlab", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._ltlab = True
        logger.addHandler(handler)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)
