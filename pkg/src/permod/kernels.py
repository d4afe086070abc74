"""Kernel backend selection.

Imports the compiled row kernels when the extension is built, otherwise
the pure-Python reference.  Set PERMOD_PURE_PYTHON=1 to force the
fallback (used by the benchmark and the test matrix).
"""

import os

if os.environ.get("PERMOD_PURE_PYTHON"):
    from permod import _kernels_py as _impl
else:
    try:
        from permod import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from permod import _kernels_py as _impl

BACKEND: str = _impl.BACKEND

pattern_word = _impl.pattern_word
axpy_mod = _impl.axpy_mod
scale_mod = _impl.scale_mod
axpy_int = _impl.axpy_int
rowpair_int = _impl.rowpair_int
row_gcd = _impl.row_gcd
axpy_q = _impl.axpy_q
scale_q = _impl.scale_q
