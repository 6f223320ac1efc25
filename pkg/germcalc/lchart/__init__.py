"""Evaluation on the Riemann surface of the logarithm and continuation checks"""

from .checks import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckReport,
    check_angle_positive,
    check_arg_distortion,
    check_dlipschitz,
    check_expansive,
    check_half_bounded,
    check_image_class,
    check_unit_at_infinity,
)
from .evaluate import PathEvalState, eval_along_path, evaluate_points, sample_domain
from .points import LPoint, distance_to_one, real_point

__all__ = [
    "FAIL",
    "INCONCLUSIVE",
    "PASS",
    "CheckReport",
    "LPoint",
    "PathEvalState",
    "check_angle_positive",
    "check_arg_distortion",
    "check_dlipschitz",
    "check_expansive",
    "check_half_bounded",
    "check_image_class",
    "check_unit_at_infinity",
    "distance_to_one",
    "eval_along_path",
    "evaluate_points",
    "real_point",
    "sample_domain",
]
