# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled summation kernels.

Every function here has a drop-in twin in ``_kernels_py``; the two must agree
to rounding.  Running sums use Neumaier compensation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, log1p, sin, ldexp, fmod, M_PI

cnp.import_array()


cdef inline double _sin_two_pi(double frac) nogil:
    # sin(2*pi*frac) for frac in [0, 1], exact zeros at multiples of 1/2
    cdef double r = 2.0 * frac
    cdef double sign = 1.0
    if r >= 1.0:
        r -= 1.0
        sign = -1.0
    if r > 0.5:
        r = 1.0 - r
    return sign * sin(M_PI * r)


def kummer_partial_sums(double x, Py_ssize_t n):
    """Partial sums S_k = sum_{j<=k} log(j) sin(2 pi j x) / j for k = 1..n."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] view = out
    cdef unsigned long long num, mask, j
    cdef int shift
    cdef bint exact
    cdef double s = 0.0, comp = 0.0, term, t, frac

    num_py, den_py = x.as_integer_ratio()
    shift = den_py.bit_length() - 1
    exact = shift <= 64
    if exact:
        num = <unsigned long long> num_py
        mask = ((<unsigned long long> 1) << shift) - 1 if shift < 64 else ~(<unsigned long long> 0)

    with nogil:
        for j in range(1, n + 1):
            if exact:
                frac = ldexp(<double> ((j * num) & mask), -shift)
            else:
                frac = fmod(j * x, 1.0)
            term = log(<double> j) * _sin_two_pi(frac) / j
            t = s + term
            if (s if s >= 0 else -s) >= (term if term >= 0 else -term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
            view[j - 1] = s + comp
    return out


def sum_log_over_square(Py_ssize_t start, Py_ssize_t stop):
    """sum_{k=start}^{stop-1} log(k) / k**2."""
    cdef double s = 0.0, comp = 0.0, term, t, kd
    cdef Py_ssize_t k
    with nogil:
        for k in range(start, stop):
            kd = <double> k
            term = log(kd) / (kd * kd)
            t = s + term
            if (s if s >= 0 else -s) >= term:
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
    return s + comp


def sum_k_log_k(Py_ssize_t n):
    """sum_{k=2}^{n} k log k, i.e. the log of the hyperfactorial."""
    cdef double s = 0.0, comp = 0.0, term, t, kd
    cdef Py_ssize_t k
    with nogil:
        for k in range(2, n + 1):
            kd = <double> k
            term = kd * log(kd)
            t = s + term
            if s >= term:
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
    return s + comp


def harmonic_log_gap(Py_ssize_t n):
    """sum_{k=1}^{n-1} (1/k - log(1 + 1/k)); equals H_{n-1} - log n."""
    cdef double s = 0.0, comp = 0.0, term, t, inv
    cdef Py_ssize_t k
    with nogil:
        for k in range(1, n):
            inv = 1.0 / k
            term = inv - log1p(inv)
            t = s + term
            if s >= term:
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
    return s + comp
