# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the sparse-row kernels in permod._kernels_py.

Semantics are identical entry for entry (values stay arbitrary-precision
Python integers); the speedup comes from compiled loops and C-level dict
traffic.  permod.kernels prefers this module when it is built.
"""

from math import gcd

BACKEND = "compiled"


def pattern_word(list cnums, list cdens, list pnums, list pdens):
    """Canonical merged weak-order word; see the pure twin for the contract."""
    cdef Py_ssize_t i
    cdef Py_ssize_t np_ = len(pnums)
    cdef Py_ssize_t nc = len(cnums)
    scale = 1
    for i in range(np_):
        d = pdens[i]
        scale = scale * d // gcd(scale, d)
    for i in range(nc):
        d = cdens[i]
        scale = scale * d // gcd(scale, d)
    cdef list items = []
    for i in range(np_):
        items.append((pnums[i] * (scale // pdens[i]), 0, i))
    for i in range(nc):
        items.append((cnums[i] * (scale // cdens[i]), 1, i))
    items.sort()
    cdef list parts = []
    cdef bint first = True
    prev = None
    for item in items:
        val = item[0]
        tok = ("p" if item[1] == 0 else "c") + str(item[2])
        if first:
            parts.append(tok)
            first = False
        elif val == prev:
            parts.append("=" + tok)
        else:
            parts.append("<" + tok)
        prev = val
    return "".join(parts)


def axpy_mod(dict dst, dict src, c, p):
    # dst += c * src (mod p), dropping zero entries.
    c = c % p
    if c == 0:
        return
    for k, v in src.items():
        w = (dst.get(k, 0) + c * v) % p
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]


def scale_mod(dict row, c, p):
    # row *= c (mod p); c must be a unit.
    for k in list(row):
        row[k] = row[k] * c % p


def axpy_int(dict dst, dict src, c):
    # dst += c * src over Z.
    if c == 0:
        return
    for k, v in src.items():
        w = dst.get(k, 0) + c * v
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]


def rowpair_int(dict ra, dict rb, x, y, u, v):
    # (ra, rb) <- (x*ra + y*rb, u*ra + v*rb); used for gcd pivot steps.
    cdef set keys = set(ra)
    keys.update(rb)
    for k in keys:
        a = ra.get(k, 0)
        b = rb.get(k, 0)
        na = x * a + y * b
        nb = u * a + v * b
        if na:
            ra[k] = na
        elif k in ra:
            del ra[k]
        if nb:
            rb[k] = nb
        elif k in rb:
            del rb[k]


def row_gcd(dict nums, den):
    # gcd of den and all numerators (den > 0 so the result is positive).
    g = den
    for v in nums.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def axpy_q(dict dst, dden, dict src, sden, cn, cd):
    """dst/dden += (cn/cd) * src/sden; returns the new denominator.

    All denominators must be positive.  The result row is renormalised so
    gcd(den, numerators) = 1.
    """
    if cn == 0:
        return dden
    a = cd * sden
    b = cn * dden
    if a != 1:
        for k in dst:
            dst[k] = dst[k] * a
    for k, v in src.items():
        w = dst.get(k, 0) + b * v
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]
    den = dden * a
    g = row_gcd(dst, den)
    if g > 1:
        for k in dst:
            dst[k] = dst[k] // g
        den = den // g
    return den


def scale_q(dict nums, den, cn, cd):
    """nums/den *= cn/cd (cn nonzero); returns the new denominator."""
    if cd < 0:
        cn, cd = -cn, -cd
    for k in nums:
        nums[k] = nums[k] * cn
    den = den * cd
    g = row_gcd(nums, den)
    if g > 1:
        for k in nums:
            nums[k] = nums[k] // g
        den = den // g
    return den
