"""Real domains on the Riemann surface of the logarithm and their angular classes"""

from .real_domains import (
    DomainClass,
    DomainSpec,
    NuLogTemplate,
    angle_bounded,
    domain_class,
    domain_class_from_witnesses,
    is_standard,
    nu_exp_class,
    nu_log_class,
    nu_mr,
    nu_pr,
    translate_sandwich,
)

__all__ = [
    "DomainClass",
    "DomainSpec",
    "NuLogTemplate",
    "angle_bounded",
    "domain_class",
    "domain_class_from_witnesses",
    "is_standard",
    "nu_exp_class",
    "nu_log_class",
    "nu_mr",
    "nu_pr",
    "translate_sandwich",
]
