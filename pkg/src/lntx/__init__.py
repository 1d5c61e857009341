"""Generalized L_n integral transform with closed-form pairs, inversion and ODE solving."""

from .errors import DomainError, InversionError, LntxError, QuadratureError, ValidityError
from .functions import (BesselJ0Arg, BesselJvArg, BlackBox, Const, CosXn, ErfArg, ErfcInvArg,
                        ExpNegAXn, FunctionSpec, GaussXn2, Power, SinXn)
from .inversion import (PowerSeriesInvS, RationalInS, find_poles, invert_rational,
                        invert_series)
from .ode import OdeProblem, reduce_to_transform_ode, residual, solve, solve_transform_ode
from .operator import delta_x, initial_data, thm21_rhs, thm22_moment
from .table import eval_pair, list_pairs
from .transform import Order, forward_numeric, forward_via_laplace, shift_rule

__version__ = "0.1.0"
