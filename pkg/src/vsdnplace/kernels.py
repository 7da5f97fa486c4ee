"""Kernel backend selection.

The compiled ``_native`` extension is used when it imports; otherwise the
pure-Python ``_purepy`` module.  Set ``VSDNPLACE_BACKEND=python`` to force
the fallback (``native`` makes a missing extension an ImportError).
"""
import os
from concurrent.futures import ThreadPoolExecutor

from . import _purepy

_BACKENDS = {"python": _purepy}
try:
    from . import _native
except ImportError:  # extension not built
    _native = None
else:
    _BACKENDS["native"] = _native


def _select():
    wanted = os.environ.get("VSDNPLACE_BACKEND", "").strip().lower()
    if wanted == "python":
        return "python"
    if wanted == "native" and _native is None:
        raise ImportError("VSDNPLACE_BACKEND=native but vsdnplace._native is not built")
    return "native" if _native is not None else "python"


BACKEND = _select()


def available() -> list[str]:
    return sorted(_BACKENDS)


def get(name: str | None = None):
    """Kernel module by name; ``None`` gives the active backend."""
    try:
        return _BACKENDS[name or BACKEND]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}") from None


def resolve_threads(threads: int) -> int:
    if threads < 0:
        raise ValueError("threads must be >= 0")
    return threads or (os.cpu_count() or 1)


def run_rows(fn, nrows: int, threads: int, *args) -> None:
    """Call ``fn(*args, start, stop)`` over contiguous row blocks.

    Blocks write disjoint output rows, so the result does not depend on the
    thread count.  The native kernels release the GIL.
    """
    threads = min(resolve_threads(threads), max(nrows, 1))
    if threads <= 1:
        fn(*args, 0, nrows)
        return
    bounds = [nrows * i // threads for i in range(threads + 1)]
    with ThreadPoolExecutor(threads) as pool:
        futures = [pool.submit(fn, *args, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
        for f in futures:
            f.result()
