# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 02/05/2023
 * Time: 10:34
 *
 * Edited by: eniocc
 * Date: 02/05/2023
 * Time: 10:34
"""
from ltlab.core.Utils import error_messages


class LtlabError(Exception):
    """Base class for every error raised by ltlab.

    Subclasses name a message key of ``error_messages/en.json``; keyword arguments
    are formatted into the template.
    """
    key = "ltlab_error"

    def __init__(self, **kwargs):
        self.details = kwargs
        template = error_messages().get(self.key, "{detail}")
        try:
            message = template.format(**kwargs)
        except (KeyError, IndexError):
            message = f"{self.key}: {kwargs}"
        super().__init__(message)


class ConfigError(LtlabError):
    key = "config_error"


class NotEisenstein(LtlabError):
    key = "not_eisenstein"


class NotIrreducibleDetected(LtlabError):
    key = "not_irreducible"


class PrecisionExhausted(LtlabError):
    key = "precision_exhausted"


class OutOfConvergenceDomain(LtlabError):
    key = "out_of_convergence"


class FieldMismatch(LtlabError):
    key = "field_mismatch"


class NonConvergentComposition(LtlabError):
    key = "non_convergent_composition"


class TailNotDominated(LtlabError):
    key = "tail_not_dominated"


class InexactSeries(LtlabError):
    key = "inexact_series"


class IntegralityViolation(LtlabError):
    key = "integrality_violation"


class LevelUnsupported(LtlabError):
    key = "level_unsupported"


class FrobeniusUnsupported(LtlabError):
    key = "frobenius_unsupported"


class NotInEtaSpan(LtlabError):
    key = "not_in_eta_span"


class CharacterMismatch(LtlabError):
    key = "character_mismatch"


class TruncationTooShort(LtlabError):
    key = "truncation_too_short"


class NonUnitSupport(LtlabError):
    key = "non_unit_support"


class ConductorExceedsLevel(LtlabError):
    key = "conductor_exceeds_level"


class NotLocallyConstantOnUnits(LtlabError):
    key = "not_locally_constant"


class NotDeRham(LtlabError):
    key = "not_de_rham"


class ExceptionalPole(LtlabError):
    key = "exceptional_pole"


class RamifiedCharacter(LtlabError):
    key = "ramified_character"


class WrongVariant(LtlabError):
    key = "wrong_variant"


class HigherOrderPole(LtlabError):
    key = "higher_order_pole"
