"""Kernel backend selection.

The compiled Cython module is used when it imports; otherwise the numpy
fallback. :func:`use_backend` switches at runtime (tests and benchmarks run
both).
"""
from fuzzyov import _pykernels

try:
    from fuzzyov import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends():
    return sorted(_BACKENDS)


def backend() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> str:
    """Activate backend ``name``; returns the previously active one."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    previous = backend()
    _active = _BACKENDS[name]
    return previous


def edge_aggregates(*args, **kwargs):
    return _active.edge_aggregates(*args, **kwargs)


def community_triangles(*args, **kwargs):
    return _active.community_triangles(*args, **kwargs)
