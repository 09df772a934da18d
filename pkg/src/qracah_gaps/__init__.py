"""Exact gap probabilities of the q-Racah ensemble and the q-Painleve structure behind them."""
try:
    from qracah_gaps._version import __version__
except ImportError:  # source tree without setuptools_scm metadata
    __version__ = '0.0.0'
