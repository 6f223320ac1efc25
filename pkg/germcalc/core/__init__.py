"""Framework pieces shared by every germcalc subpackage"""

from .config import Budget, CheckParams, CheckThresholds, Settings, get_settings
from .errors import GermcalcError

__all__ = [
    "Budget",
    "CheckParams",
    "CheckThresholds",
    "GermcalcError",
    "Settings",
    "get_settings",
]
