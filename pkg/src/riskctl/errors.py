"""Exception types shared across the riskctl package."""

from __future__ import annotations


class RiskctlError(Exception):
    """Base class for all riskctl errors."""


class UnknownLabelError(RiskctlError):
    """A label code is not defined for the requested parameter."""


class IncompleteVectorError(RiskctlError):
    """A scoring vector is missing one or more parameters."""


class UnknownScoreSetError(RiskctlError):
    """A score source name does not match any score set in the model."""


class MissingVectorError(RiskctlError):
    """Formula-based scoring was requested but the model carries no vectors."""


class UnknownPathError(RiskctlError):
    """An attack-path id does not exist in the model."""


class EmptyPathError(RiskctlError):
    """An attack path with no stages cannot be analyzed."""


class InvalidConfigError(RiskctlError):
    """An analysis configuration value is out of its allowed range."""


class UnreachableTargetError(RiskctlError):
    """The target state cannot be reached (some forward probability is zero)."""


class NumericalError(RiskctlError):
    """A numerical routine degenerated (singular system, invalid matrix)."""


class DocumentError(RiskctlError):
    """Base class for threat-model document problems."""


class DocumentSyntaxError(DocumentError):
    """The threat-model document is not well-formed JSON."""


class ValidationError(DocumentError):
    """The document parsed but violates the model schema.

    ``path`` holds the dotted location of the offending field, e.g.
    ``paths[2].stages[0].domain``.
    """

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason
