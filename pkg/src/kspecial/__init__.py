"""k-generalised special functions: gamma, beta, Pochhammer, 2F1, Appell and
Riemann-Liouville k-fractional derivatives, with a numerical identity checker."""

from .appell import (AppellParams, Point2, appell_series, appell_single_sum, f1_k, f1_k_integral,
                     f2_k, f2_k_integral, f3_k, f3_k_integral, f4_k)
from .base import DEFAULT_CONFIG, DomainError, EvalConfig, EvalResult, Scale
from .core import (beta_k, beta_k_quadrature, gamma_k, gamma_k_quadrature, k_binomial,
                   k_binomial_series, pochhammer_k)
from .hyp import (Hyp2F1Params, gauss_sum_k, hyp2f1_k, hyp2f1_k_integral, hyp2f1_k_mixed,
                  hyp2f1_k_series)
from .kfrac import (FracOrder, PowerFunction, PowerSeries, kfrac_monomial, kfrac_quadrature,
                    kfrac_series, krl4_closed, krl4_termwise, krl5_closed, krl5_termwise)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG", "DomainError", "EvalConfig", "EvalResult", "Scale",
    "pochhammer_k", "gamma_k", "gamma_k_quadrature", "beta_k", "beta_k_quadrature",
    "k_binomial", "k_binomial_series",
    "Hyp2F1Params", "hyp2f1_k", "hyp2f1_k_series", "hyp2f1_k_integral", "hyp2f1_k_mixed",
    "gauss_sum_k",
    "AppellParams", "Point2", "appell_series", "appell_single_sum", "f1_k", "f2_k", "f3_k",
    "f4_k", "f1_k_integral", "f2_k_integral", "f3_k_integral",
    "FracOrder", "PowerFunction", "PowerSeries", "kfrac_monomial", "kfrac_series",
    "kfrac_quadrature", "krl4_closed", "krl4_termwise", "krl5_closed", "krl5_termwise",
]
