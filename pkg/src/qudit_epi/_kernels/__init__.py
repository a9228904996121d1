"""Hot-kernel backend selection.

The compiled Cython core is preferred when built; the pure-numpy fallback is
used otherwise. `QUDIT_EPI_BACKEND=python|compiled` forces a backend; forcing
the compiled one raises if the extension is missing instead of silently
falling back.
"""

import os

_requested = os.environ.get("QUDIT_EPI_BACKEND", "").strip().lower()

if _requested in ("python", "py", "fallback"):
    from . import _fallback as _impl

    BACKEND = "python"
elif _requested in ("", "compiled", "cython", "c"):
    try:
        from . import _compiled as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested:
            raise
        from . import _fallback as _impl

        BACKEND = "python"
else:
    raise ValueError(
        f"QUDIT_EPI_BACKEND={_requested!r} not recognized; use 'compiled' or 'python'"
    )

pswap_closed = _impl.pswap_closed
condition_projective_all = _impl.condition_projective_all
prefix_slack = _impl.prefix_slack
entropy_nats = _impl.entropy_nats

__all__ = [
    "BACKEND",
    "pswap_closed",
    "condition_projective_all",
    "prefix_slack",
    "entropy_nats",
]
