"""Farhi's constant eta = 2 int_0^1 log Gamma(x) sin(2 pi x) dx, three ways.

Closed form (gamma + log 2 pi) / pi, direct tanh-sinh quadrature, and the
Malmsten integral, together with a registry of numerical identity checks.
"""

from ._backend import BACKEND
from .constants import eta_closed_form
from .quadrature import eta_by_direct_quadrature, eta_by_malmsten

__version__ = "0.1.0"

__all__ = ["BACKEND", "eta_closed_form", "eta_by_direct_quadrature", "eta_by_malmsten", "__version__"]
