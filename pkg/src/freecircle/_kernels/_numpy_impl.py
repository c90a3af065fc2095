"""Pure-numpy versions of the search kernels.

Same contracts as the numba kernels, vectorized over the alpha triples of a
shell (plumbing) or over the mu axis (cp2).
"""

import numpy as np

from . import _formulas as f


def _isqrt(n):
    r = np.sqrt(n.astype(np.float64)).astype(np.int64)
    r = np.where(r * r > n, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= n, r + 1, r)
    return r


def _bezout(lam, mu):
    r0, r1 = lam.copy(), mu.copy()
    s0, s1 = np.ones_like(lam), np.zeros_like(lam)
    while np.any(r1 != 0):
        nz = r1 != 0
        q = np.where(nz, r0 // np.where(nz, r1, 1), 0)
        r0, r1 = np.where(nz, r1, r0), np.where(nz, r0 - q * r1, r1)
        s0, s1 = np.where(nz, s1, s0), np.where(nz, s0 - q * s1, s1)
    neg = r0 < 0
    g = np.where(neg, -r0, r0)
    s0 = np.where(neg, -s0, s0)
    step = np.abs(mu) // g
    safe = np.where(step == 0, 1, step)
    s = s0 % safe
    s = np.where(2 * s > safe, s - safe, s)
    s = np.where(mu == 0, lam // g, s)
    t = np.where(mu == 0, 0, (g - s * lam) // np.where(mu == 0, 1, mu))
    return s, t


def _shell_triples(total, alpha_bound, a1_lo, a1_hi):
    a1 = np.arange(max(a1_lo, -alpha_bound, -total), min(a1_hi, alpha_bound, total) + 1, dtype=np.int64)
    if a1.size == 0:
        return np.empty((0, 3), dtype=np.int64)
    a2r = np.arange(-min(total, alpha_bound), min(total, alpha_bound) + 1, dtype=np.int64)
    g1, g2 = np.meshgrid(a1, a2r, indexing="ij")
    r3 = total - np.abs(g1) - np.abs(g2)
    keep = (r3 >= 0) & (r3 <= alpha_bound)
    g1, g2, r3 = g1[keep], g2[keep], r3[keep]
    neg = np.stack([g1, g2, -r3], axis=1)
    pos = np.stack([g1, g2, r3], axis=1)[r3 > 0]
    tri = np.concatenate([neg, pos])
    order = np.lexsort((tri[:, 2], tri[:, 1], tri[:, 0]))
    return tri[order]


def plumbing_shell(total, alpha_bound, euler_bound, a1_lo, a1_hi, out):
    tri = _shell_triples(total, alpha_bound, a1_lo, a1_hi)
    E = euler_bound
    chunks = []
    if tri.size:
        a1, a2, a3 = tri[:, 0], tri[:, 1], tri[:, 2]
        qa, qb, qc = -a1 * a3, -(a1 * a3 + a2 * a3 - a1 * a2), -a2 * a3
        quad = qc != 0
        for lam in range(-E, E + 1):
            for d in (-1, 1):
                k = qa * lam * lam - d
                bl = qb * lam
                disc = bl * bl - 4 * qc * k
                ok = quad & (disc >= 0)
                r = _isqrt(np.where(ok, disc, 0))
                ok &= r * r == disc
                den = np.where(quad, 2 * qc, 1)
                for sign in (-1, 1):
                    num = -bl + sign * r
                    hit = ok & (num % den == 0)
                    if sign == 1:
                        hit &= r != 0
                    idx = np.flatnonzero(hit)
                    chunks.append((idx, np.full(idx.size, lam), num[idx] // den[idx]))
                lin = ~quad & (bl != 0)
                bls = np.where(lin, bl, 1)
                hit = lin & ((-k) % bls == 0)
                idx = np.flatnonzero(hit)
                chunks.append((idx, np.full(idx.size, lam), (-k[idx]) // bls[idx]))
                free = np.flatnonzero(~quad & (bl == 0) & (k == 0))
                if free.size:
                    mus = np.arange(-E, E + 1)
                    chunks.append((np.repeat(free, mus.size), np.full(free.size * mus.size, lam),
                                   np.tile(mus, free.size)))
    if chunks:
        idx = np.concatenate([c[0] for c in chunks]).astype(np.int64)
        lam = np.concatenate([c[1] for c in chunks]).astype(np.int64)
        mu = np.concatenate([c[2] for c in chunks]).astype(np.int64)
        keep = (np.abs(mu) <= E) & (np.gcd(lam, mu) == 1)
        rows = np.concatenate([tri[idx[keep]], lam[keep, None], mu[keep, None]], axis=1)
    else:
        rows = np.empty((0, 5), dtype=np.int64)
    n = rows.shape[0]
    m = min(n, out.shape[0])
    out[:m] = rows[:m]
    return n


def cp2_scan(alpha_bound, euler_bound, lam_lo, lam_hi, out):
    lam = np.arange(lam_lo, lam_hi + 1, dtype=np.int64)
    lam = lam[lam % 2 != 0]
    mu = np.arange(-euler_bound, euler_bound + 1, dtype=np.int64)
    mu = mu[(mu != 0) & (mu % 2 == 0)]
    rows = []
    step = max(1, 4_000_000 // max(mu.size, 1))
    for i in range(0, lam.size, step):
        L, M = np.meshgrid(lam[i:i + step], mu, indexing="ij")
        num, m2 = L * L - 1, M * M
        hit = num % m2 == 0
        a = num // m2
        hit &= (a <= alpha_bound) & (np.gcd(L, M) == 1)
        rows.append(np.stack([a[hit], L[hit], M[hit]], axis=1))
    rows = np.concatenate(rows) if rows else np.empty((0, 3), dtype=np.int64)
    n = rows.shape[0]
    m = min(n, out.shape[0])
    out[:m] = rows[:m]
    return n


def _finish(x, y, k, det):
    i = np.where(x % 8 == 0, x // 8, -1)
    j = np.where(y % 2 == 0, y // 2, -1)
    return np.stack([i, j, k, det], axis=1).astype(np.int64)


def plumbing_classes(params):
    params = np.asarray(params, dtype=np.int64).reshape(-1, 5)
    a1, a2, a3, lam, mu = params.T
    s, t = _bezout(lam, mu)
    A, B, C, D, u, v = f.plumbing_chardata(a1, a2, a3, lam, mu, s, t)
    det = A * C - B * B
    x1, y1 = f.spin_minus(A, B, C, D, u, v)
    x2, y2 = f.spin_plus(A, B, C, D, u, v, np.where(A > 0, 1, -1))
    minus = det == -1
    return _finish(np.where(minus, x1, x2), np.where(minus, y1, y2), (D + 1) % 2, det)


def cp2_classes(params):
    params = np.asarray(params, dtype=np.int64).reshape(-1, 3)
    a, lam, mu = params.T
    s, t = _bezout(lam, mu)
    A, B, C, D, u, v = f.cp2_chardata(a, lam, mu, s, t)
    x, y = f.nonspin(A, B, C, D, u, v)
    return _finish(x, y, np.zeros_like(x), A * C - B * B)
