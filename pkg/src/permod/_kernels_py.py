"""Sparse-row arithmetic kernels, pure-Python reference implementation.

Rows are dicts mapping column index to a nonzero value.  Rational rows
carry their entries as integer numerators over a single positive
denominator, so every kernel here is integer-only.  `permod._speedups`
is a compiled twin with identical semantics; `permod.kernels` selects
one of the two at import time.
"""

from math import gcd

BACKEND = "pure-python"


def pattern_word(cnums, cdens, pnums, pdens):
    """Canonical merged weak-order word of coordinates against parameters.

    Values arrive as integer numerator/denominator pairs (denominators
    positive).  Tokens are p<i> then c<j> within an equality class; classes
    are joined by "<", members by "=".
    """
    scale = 1
    for d in pdens:
        scale = scale * d // gcd(scale, d)
    for d in cdens:
        scale = scale * d // gcd(scale, d)
    items = [(pnums[i] * (scale // pdens[i]), 0, i) for i in range(len(pnums))]
    items += [(cnums[j] * (scale // cdens[j]), 1, j) for j in range(len(cnums))]
    items.sort()
    parts = []
    prev = None
    first = True
    for val, kind, idx in items:
        tok = ("p" if kind == 0 else "c") + str(idx)
        if first:
            parts.append(tok)
            first = False
        else:
            parts.append(("=" if val == prev else "<") + tok)
        prev = val
    return "".join(parts)


def axpy_mod(dst: dict, src: dict, c: int, p: int) -> None:
    # dst += c * src (mod p), dropping zero entries.
    c %= p
    if c == 0:
        return
    for k, v in src.items():
        w = (dst.get(k, 0) + c * v) % p
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]


def scale_mod(row: dict, c: int, p: int) -> None:
    # row *= c (mod p); c must be a unit.
    for k in list(row):
        row[k] = row[k] * c % p


def axpy_int(dst: dict, src: dict, c: int) -> None:
    # dst += c * src over Z.
    if c == 0:
        return
    for k, v in src.items():
        w = dst.get(k, 0) + c * v
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]


def rowpair_int(ra: dict, rb: dict, x: int, y: int, u: int, v: int) -> None:
    # (ra, rb) <- (x*ra + y*rb, u*ra + v*rb); used for gcd pivot steps.
    keys = set(ra)
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


def row_gcd(nums: dict, den: int) -> int:
    # gcd of den and all numerators (den > 0 so the result is positive).
    g = den
    for v in nums.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def axpy_q(dst: dict, dden: int, src: dict, sden: int, cn: int, cd: int) -> int:
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
            dst[k] *= a
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
            dst[k] //= g
        den //= g
    return den


def scale_q(nums: dict, den: int, cn: int, cd: int) -> int:
    """nums/den *= cn/cd (cn nonzero); returns the new denominator."""
    if cd < 0:
        cn, cd = -cn, -cd
    for k in nums:
        nums[k] *= cn
    den *= cd
    g = row_gcd(nums, den)
    if g > 1:
        for k in nums:
            nums[k] //= g
        den //= g
    return den
