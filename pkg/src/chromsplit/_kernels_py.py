"""Pure-Python reference kernels; used when the compiled extension is absent."""


def convolve(a, b):
    """Dense product of two coefficient lists (index = exponent offset)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def horner(coeffs, t):
    """Evaluate a dense coefficient list at the integer ``t``."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def add_into(acc, xs, offset=0):
    """In place: ``acc[offset + i] += xs[i]``; ``acc`` must be long enough."""
    for i, x in enumerate(xs):
        if x:
            acc[offset + i] += x
