"""Virtual classes, limits and stability checks in the localized Grothendieck ring."""

from .errors import *  # noqa: F401,F403
from .limits import LimitReport, MotSequence, limit_detect
from .mot import EClass, MotClass, dimension, e_substitute, evaluate, expand, mot_add, mot_div, mot_mul, mot_neg, q
from .parsing import parse_class, parse_poly
from .poly import QPolynomial
from .series import LaurentSeries, format_series, parse_series

__version__ = "0.1.0"
