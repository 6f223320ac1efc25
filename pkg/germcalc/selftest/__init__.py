"""In-package acceptance suite"""

from .suite import GROUPS, CaseResult, run_suite

__all__ = ["GROUPS", "CaseResult", "run_suite"]
