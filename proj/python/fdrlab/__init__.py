"""Adaptive step-up/step-down multiple tests with finite-sample FDR control.

Thin python layer over the C++ core in ``_fdrlab``.
"""

try:
    from . import _fdrlab as _impl  # installed wheel layout
except ImportError:  # development layout: extension module on sys.path
    import _fdrlab as _impl

alt_cdf = _impl.alt_cdf
alt_quantile = _impl.alt_quantile
critical_values = _impl.critical_values
dynamic_trace = _impl.dynamic_trace
estimate = _impl.estimate
gstorey_estimate = _impl.gstorey_estimate
run_test = _impl.run_test
sample_bi = _impl.sample_bi
simulate_fdr = _impl.simulate_fdr
std_normal_cdf = _impl.std_normal_cdf
std_normal_quantile = _impl.std_normal_quantile
storey_estimate = _impl.storey_estimate
table1 = _impl.table1
variance_balanced_weights = _impl.variance_balanced_weights
verify = _impl.verify
verify_multinomial = _impl.verify_multinomial

__all__ = [
    "alt_cdf",
    "alt_quantile",
    "critical_values",
    "dynamic_trace",
    "estimate",
    "gstorey_estimate",
    "run_test",
    "sample_bi",
    "simulate_fdr",
    "std_normal_cdf",
    "std_normal_quantile",
    "storey_estimate",
    "table1",
    "variance_balanced_weights",
    "verify",
    "verify_multinomial",
]
