"""Run deeply recursive work on a thread with a large stack.

Terms are processed by structural recursion, and reduction can build terms
far deeper than the main thread's C stack tolerates.  Public entry points are
wrapped with :func:`deep`, which moves the call onto a worker thread with a
big stack and a matching recursion limit.  Nested calls run inline.
"""

from __future__ import annotations

import functools
import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 200_000

_local = threading.local()
_lock = threading.Lock()
_active = 0
_saved_limit = None


def _enter():
    global _active, _saved_limit
    with _lock:
        if _active == 0:
            _saved_limit = sys.getrecursionlimit()
            sys.setrecursionlimit(max(_saved_limit, RECURSION_LIMIT))
        _active += 1


def _leave():
    global _active
    with _lock:
        _active -= 1
        if _active == 0:
            sys.setrecursionlimit(_saved_limit)


def deep(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_local, "deep", False):
            return fn(*args, **kwargs)
        outcome = {}

        def target():
            _local.deep = True
            try:
                outcome["value"] = fn(*args, **kwargs)
            except BaseException as err:  # re-raised in the caller's thread
                outcome["error"] = err

        _enter()
        try:
            with _lock:
                old = threading.stack_size(STACK_BYTES)
                try:
                    worker = threading.Thread(target=target, name="cdle-deep")
                    worker.start()
                finally:
                    threading.stack_size(old)
            worker.join()
        finally:
            _leave()
        if "error" in outcome:
            raise outcome["error"]
        return outcome["value"]

    return wrapper
