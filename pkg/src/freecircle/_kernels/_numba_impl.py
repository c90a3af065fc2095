"""numba kernels for the witness search."""

import numpy as np
from numba import njit

from . import _formulas as f

_jit = njit(cache=True, nogil=True)

plumbing_chardata = _jit(f.plumbing_chardata)
plumbing_det = _jit(f.plumbing_det)
cp2_chardata = _jit(f.cp2_chardata)
spin_minus = _jit(f.spin_minus)
spin_plus = _jit(f.spin_plus)
nonspin = _jit(f.nonspin)


@_jit
def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@_jit
def _bezout(lam, mu):
    r0, r1, s0, s1 = lam, mu, 1, 0
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 < 0:
        r0, s0 = -r0, -s0
    if mu == 0:
        return lam // r0, 0
    step = abs(mu) // r0
    s = s0 % step
    if 2 * s > step:
        s -= step
    return s, (r0 - s * lam) // mu


@_jit
def _isqrt(n):
    r = np.int64(np.sqrt(np.float64(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@_jit
def _emit(out, n, a1, a2, a3, lam, mu, bound):
    if abs(mu) <= bound and _gcd(lam, mu) == 1:
        if n < out.shape[0]:
            out[n, 0] = a1
            out[n, 1] = a2
            out[n, 2] = a3
            out[n, 3] = lam
            out[n, 4] = mu
        return n + 1
    return n


@_jit
def plumbing_shell(total, alpha_bound, euler_bound, a1_lo, a1_hi, out):
    """Witnesses with ``|a1|+|a2|+|a3| = total`` and ``a1_lo <= a1 <= a1_hi``.

    Returns the number of hits; rows beyond ``out.shape[0]`` are counted but
    not written, so the caller can retry with a larger buffer.
    """
    n = 0
    E = euler_bound
    for a1 in range(a1_lo, a1_hi + 1):
        rem = total - abs(a1)
        if rem < 0 or abs(a1) > alpha_bound:
            continue
        lo2 = max(-rem, -alpha_bound)
        hi2 = min(rem, alpha_bound)
        for a2 in range(lo2, hi2 + 1):
            r3 = rem - abs(a2)
            if r3 > alpha_bound:
                continue
            for sg in range(2):
                if r3 == 0 and sg == 1:
                    break
                a3 = -r3 if sg == 0 else r3
                qa = -a1 * a3
                qb = -(a1 * a3 + a2 * a3 - a1 * a2)
                qc = -a2 * a3
                for lam in range(-E, E + 1):
                    for d in (-1, 1):
                        k = qa * lam * lam - d
                        bl = qb * lam
                        if qc != 0:
                            disc = bl * bl - 4 * qc * k
                            if disc < 0:
                                continue
                            r = _isqrt(disc)
                            if r * r != disc:
                                continue
                            den = 2 * qc
                            num = -bl - r
                            if num % den == 0:
                                n = _emit(out, n, a1, a2, a3, lam, num // den, E)
                            if r != 0:
                                num = -bl + r
                                if num % den == 0:
                                    n = _emit(out, n, a1, a2, a3, lam, num // den, E)
                        elif bl != 0:
                            if (-k) % bl == 0:
                                n = _emit(out, n, a1, a2, a3, lam, (-k) // bl, E)
                        elif k == 0:
                            for mu in range(-E, E + 1):
                                n = _emit(out, n, a1, a2, a3, lam, mu, E)
    return n


@_jit
def cp2_scan(alpha_bound, euler_bound, lam_lo, lam_hi, out):
    """Witnesses ``(alpha, lam, mu)`` with ``mu != 0`` and ``lam_lo <= lam <= lam_hi``."""
    n = 0
    for lam in range(lam_lo, lam_hi + 1):
        if lam % 2 == 0:
            continue
        num = lam * lam - 1
        for mu in range(-euler_bound, euler_bound + 1):
            if mu == 0 or mu % 2 != 0:
                continue
            m2 = mu * mu
            if num % m2 != 0:
                continue
            a = num // m2
            if a > alpha_bound or _gcd(lam, mu) != 1:
                continue
            if n < out.shape[0]:
                out[n, 0] = a
                out[n, 1] = lam
                out[n, 2] = mu
            n += 1
    return n


@_jit
def plumbing_classes(params):
    """Rows ``(i, j, k, det)`` for plumbing witnesses; ``i = -1`` flags a fault."""
    m = params.shape[0]
    res = np.empty((m, 4), dtype=np.int64)
    for r in range(m):
        a1, a2, a3, lam, mu = params[r, 0], params[r, 1], params[r, 2], params[r, 3], params[r, 4]
        s, t = _bezout(lam, mu)
        A, B, C, D, u, v = plumbing_chardata(a1, a2, a3, lam, mu, s, t)
        det = A * C - B * B
        if det == -1:
            x, y = spin_minus(A, B, C, D, u, v)
        else:
            sg = 1 if A > 0 else -1
            x, y = spin_plus(A, B, C, D, u, v, sg)
        res[r, 0] = x // 8 if x % 8 == 0 else -1
        res[r, 1] = y // 2 if y % 2 == 0 else -1
        res[r, 2] = (D + 1) % 2
        res[r, 3] = det
    return res


@_jit
def cp2_classes(params):
    m = params.shape[0]
    res = np.empty((m, 4), dtype=np.int64)
    for r in range(m):
        a, lam, mu = params[r, 0], params[r, 1], params[r, 2]
        s, t = _bezout(lam, mu)
        A, B, C, D, u, v = cp2_chardata(a, lam, mu, s, t)
        x, y = nonspin(A, B, C, D, u, v)
        res[r, 0] = x // 8 if x % 8 == 0 else -1
        res[r, 1] = y // 2 if y % 2 == 0 else -1
        res[r, 2] = 0
        res[r, 3] = A * C - B * B
    return res
