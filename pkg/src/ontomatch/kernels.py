"""Kernel selection: prefer the compiled extension, fall back to pure Python.

Set ONTOMATCH_PURE=1 to force the interpreted kernels (used by the
benchmark and as an escape hatch).
"""

import os

if os.environ.get("ONTOMATCH_PURE"):
    from ontomatch import _kernels as _impl

    COMPILED = False
else:
    try:
        from ontomatch import _kernels_c as _impl  # type: ignore[no-redef]

        COMPILED = getattr(_impl, "__file__", "").endswith((".so", ".pyd"))
    except ImportError:
        from ontomatch import _kernels as _impl  # type: ignore[no-redef]

        COMPILED = False

tokenize_text = _impl.tokenize_text
normalize_token = _impl.normalize_token
porter_stem = _impl.porter_stem
snowball_stem = _impl.snowball_stem
lancaster_stem = _impl.lancaster_stem
