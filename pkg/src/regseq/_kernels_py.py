"""Pure-Python window scanning kernels (fallback for the compiled core)."""


def first_occurrences(buf: bytes, n: int) -> list[int]:
    """Sorted positions i whose window buf[i:i+n] does not occur earlier."""
    seen = {}
    for i in range(len(buf) - n + 1):
        seen.setdefault(buf[i:i + n], i)
    return sorted(seen.values())


def _unbordered(w: bytes) -> bool:
    n = len(w)
    if n > 1 and w[0] == w[-1]:
        return False
    for j in range(2, n):
        if w[:j] == w[n - j:]:
            return False
    return True


def unbordered_positions(buf: bytes, positions, n: int) -> list[int]:
    return [p for p in positions if _unbordered(buf[p:p + n])]


IMPLEMENTATION = "python"
