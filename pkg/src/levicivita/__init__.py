"""Levi-Civita field arithmetic, measures and real-valued integration."""

from types import ModuleType as _ModuleType

from .core import (
    EXACT,
    FLOAT,
    ConfigMismatch,
    LCContext,
    LCNumber,
    PrecisionLoss,
    classify,
    lc_inv,
    lc_root,
    standard_part,
    valuation,
)
from .distributions import DeltaSpec, make_delta, pair, pair_derivative
from .expr import diff, eval_real, parse
from .extension import ExtensionFn, NotNearstandard, extend, extension
from .integrate import (
    Aq,
    Bq,
    DeltaProduct,
    Extension,
    FinitePart,
    Full,
    IntegralReport,
    Locator,
    NotEstablished,
    PiecewiseSimple,
    StepLC,
    integral_simple,
    integrate,
    m_integral,
    m_integral_limit,
)
from .kernels import BACKEND
from .measure import MeasurableSet, TailCertificate, m_measure, mL_measure, shadow
from .quadrature import quad
from .simple import IntervalLC, PiecewiseFn, PowerSeriesFn, from_expr, polynomial

__version__ = "0.1.0"

__all__ = [n for n, v in list(globals().items()) if not n.startswith("_") and not isinstance(v, _ModuleType)]
