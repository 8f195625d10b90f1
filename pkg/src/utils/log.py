import sys
import time

_start = time.perf_counter()
_enabled = False


def enable(flag: bool = True):
    global _enabled, _start
    _enabled = flag
    _start = time.perf_counter()


def progress(msg: str):
    if _enabled:
        print(f"[{time.perf_counter() - _start:8.2f}s] {msg}", file=sys.stderr, flush=True)


def elapsed_ms(since: float) -> int:
    return int((time.perf_counter() - since) * 1000)
