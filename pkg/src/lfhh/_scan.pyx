# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled pair/weight scan for the generalized-convexity check."""

from libc.math cimport INFINITY


def scan_convexity(const double[::1] values, const double[::1] wl,
                   const double[::1] wr, Py_ssize_t n, double tol):
    """Return (first violating flat index or -1, largest excess).

    ``values`` holds f on the n(n-1)+1 point fine grid; triples are visited
    in (i, j, m) order, m = 1..n-1, flat index = (i*n + j)*(n-1) + (m-1).
    """
    cdef Py_ssize_t i, j, m, flat = 0, first = -1
    cdef double fi, fj, excess, worst = -INFINITY
    for i in range(n):
        fi = values[i * n]
        for j in range(n):
            fj = values[j * n]
            for m in range(1, n):
                excess = values[m * i + (n - m) * j] - (wl[m - 1] * fi + wr[m - 1] * fj)
                if excess > worst:
                    worst = excess
                if first < 0 and excess > tol:
                    first = flat
                flat += 1
    return first, worst
