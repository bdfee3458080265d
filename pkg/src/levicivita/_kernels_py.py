"""Pure-Python sparse series kernels.

Both arguments of every kernel are sorted sparse series given as a tuple of
integer exponents (all scaled to one common denominator) and a parallel tuple
of coefficients.  The compiled module ``_kernels`` exposes the same four
functions with identical semantics; ``levicivita.kernels`` picks one at import.
"""


def _merge(ea, ca, eb, cb, sign, zeta):
    out_e = []
    out_c = []
    i = j = 0
    na = len(ea)
    nb = len(eb)
    while i < na and j < nb:
        x = ea[i]
        y = eb[j]
        if x < y:
            e = x
            c = ca[i]
            i += 1
        elif y < x:
            e = y
            c = cb[j] if sign > 0 else -cb[j]
            j += 1
        else:
            e = x
            c = ca[i] + cb[j] if sign > 0 else ca[i] - cb[j]
            i += 1
            j += 1
        if abs(c) > zeta:
            out_e.append(e)
            out_c.append(c)
    while i < na:
        c = ca[i]
        if abs(c) > zeta:
            out_e.append(ea[i])
            out_c.append(c)
        i += 1
    while j < nb:
        c = cb[j] if sign > 0 else -cb[j]
        if abs(c) > zeta:
            out_e.append(eb[j])
            out_c.append(c)
        j += 1
    return tuple(out_e), tuple(out_c)


def _convolve(ea, ca, eb, cb, limit, zeta):
    if not ea or not eb:
        return (), (), False
    lo = ea[0] + eb[0]
    size = limit - lo + 1
    if size <= 0:
        return (), (), True
    acc = [0] * size
    truncated = False
    b0 = eb[0]
    for i in range(len(ea)):
        x = ea[i]
        if x + b0 > limit:
            truncated = True
            break
        cx = ca[i]
        base = x - lo
        for j in range(len(eb)):
            k = base + eb[j]
            if k >= size:
                truncated = True
                break
            acc[k] += cx * cb[j]
    out_e = []
    out_c = []
    for k in range(size):
        c = acc[k]
        if abs(c) > zeta:
            out_e.append(lo + k)
            out_c.append(c)
    return tuple(out_e), tuple(out_c), truncated


def add_float(ea, ca, eb, cb, sign, zeta):
    """Merge ``a + sign*b``, dropping coefficients with ``|c| <= zeta``."""
    return _merge(ea, ca, eb, cb, sign, zeta)


def add_exact(ea, ca, eb, cb, sign, zeta):
    return _merge(ea, ca, eb, cb, sign, zeta)


def mul_float(ea, ca, eb, cb, limit, zeta):
    """Cauchy product keeping exponents ``<= limit``.

    Returns ``(exps, coefs, truncated)`` where ``truncated`` is true when some
    pair of input terms landed beyond ``limit``.  An empty input gives an empty product.
    """
    return _convolve(ea, ca, eb, cb, limit, zeta)


def mul_exact(ea, ca, eb, cb, limit, zeta):
    return _convolve(ea, ca, eb, cb, limit, zeta)
