"""F-pure thresholds and test ideals of polynomials in disjoint variables."""

from .basep import INFINITY, CarryProfile, DigitStream, carry_profile, expand, lucas_binomial_mod_p
from .errors import DomainError, FptlabError, InputError, NotStabilized, ParseError, TheoremInapplicable
from .ideals import Ideal, frobenius_power, frobenius_root, maximal_ideal, root_of_power
from .lctscan import fpt_of_expr, lct, mtw_scan, trend_report
from .nu import NuRecord, fpt_bracket, nu, nu_ts, ts_membership
from .polyfp import Polynomial, VarContext, parse, ts_split, ts_sum
from .testideals import CaseTag, TestIdealResult, test_ideal, test_ideal_p_power, ts_test_ideal
from .thresholds import (
    INAPPLICABLE,
    Classification,
    FptValue,
    fpt_diagonal_fold,
    fpt_disjoint_product,
    fpt_monomial,
    fpt_power,
    jumping_candidates,
    ts_fthreshold,
)

__version__ = "0.1.0"
