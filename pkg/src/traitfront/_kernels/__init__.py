"""Kernel backend selection.

Two interchangeable implementations of the hot loops exist: a compiled
Cython extension and a pure-NumPy fallback.  Selection happens once at
import time: the compiled backend when available, unless the environment
variable TRAITFRONT_BACKEND forces "pure" or "compiled".  `use()` switches
at runtime (benchmarks and the parity tests rely on it).
"""

import os

from . import reference

_BACKENDS = {"pure": reference}
try:  # pragma: no cover - depends on whether the extension was built
    from . import _compiled

    _BACKENDS["compiled"] = _compiled
except ImportError:
    _compiled = None

_requested = os.environ.get("TRAITFRONT_BACKEND", "auto")
if _requested == "auto":
    _active_name = "compiled" if "compiled" in _BACKENDS else "pure"
elif _requested in _BACKENDS:
    _active_name = _requested
else:
    raise ImportError(
        f"TRAITFRONT_BACKEND={_requested!r} is not available "
        f"(choices: auto, {', '.join(sorted(_BACKENDS))})"
    )
_active = _BACKENDS[_active_name]


def available_backends():
    return tuple(sorted(_BACKENDS))


def current_backend():
    return _active_name


def get_backend(name):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available") from None


def use(name):
    """Switch the active backend globally; returns the previous name."""
    global _active, _active_name
    previous = _active_name
    _active = get_backend(name)
    _active_name = name
    return previous


def rd_step(*args, **kwargs):
    return _active.rd_step(*args, **kwargs)


def hj_step(*args, **kwargs):
    return _active.hj_step(*args, **kwargs)


def eikonal_pass(*args, **kwargs):
    return _active.eikonal_pass(*args, **kwargs)
