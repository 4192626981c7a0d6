"""Exact reductivity certificates and Monte Carlo volume checks for
homogeneous spaces of SL(2, R).

The exact side works over the rationals: deciding whether smooth
vectors vanish at infinity for a pair (algebra, subalgebra), and
producing decay-rate or lower-bound certificates.  The numeric side
estimates ball volumes on concrete space models and compares the
measured log-slope against the certified exponent.
"""

__version__ = "0.1.0"
