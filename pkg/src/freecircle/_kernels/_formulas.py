"""Branch-free integer formulas shared by both kernel backends.

Each function uses only ``+ - * // %`` so the same source runs element-wise
on numpy int64 arrays and, once jitted, on numba scalars.  Divisions are all
exact.  Callers guarantee the int64 range a priori.
"""


def plumbing_chardata(a1, a2, a3, lam, mu, s, t):
    d1 = a1 - a3
    d2 = a2 - a3
    A = lam * lam * lam * d1 - 3 * lam * mu * (lam + mu) * a3 + mu * mu * mu * d2
    B = lam * lam * (-t * d1 - s * a3) + 2 * lam * mu * (t - s) * a3 + mu * mu * (t * a3 + s * d2)
    C = lam * (t * t * d1 + 2 * t * s * a3 - s * s * a3) + mu * (-t * t * a3 + 2 * t * s * a3 + s * s * d2)
    D = -t * t * t * d1 - 3 * t * s * (t - s) * a3 + s * s * s * d2
    u = (lam * (1 - lam) * (1 + lam)) // 6 * d1 + (lam * mu * (lam + mu)) // 2 * a3 \
        + (mu * (1 - mu) * (1 + mu)) // 6 * d2
    v = -((t * (1 - t) * (1 + t)) // 6) * d1 + (t * s * (t - s)) // 2 * a3 \
        + (s * (1 - s) * (1 + s)) // 6 * d2
    return A, B, C, D, u, v


def plumbing_det(a1, a2, a3, lam, mu):
    return -lam * lam * a1 * a3 - lam * mu * (a1 * a3 + a2 * a3 - a1 * a2) - mu * mu * a2 * a3


def cp2_chardata(a, lam, mu, s, t):
    A = mu * (4 * lam * lam - 1)
    B = (4 * lam * lam - 1) * s - 2 * lam
    C = -3 * t * s * lam + t + mu * s * s * a
    D = 3 * t * t * s + s * s * s * a
    u = (mu * (1 - mu * mu) * a) // 12
    v = (2 * a * s * (1 - s * s) - 3 * s * a * mu * (2 * mu - s)
         + 3 * (lam - s + 2 * t - 2 * t * t * s - 3 * t * t * mu)) // 12
    return A, B, C, D, u, v


def spin_minus(A, B, C, D, u, v):
    """``(224 s1, 24 s2) mod (224, 24)`` for spin data with det -1."""
    a, b, c, d, x, y = A % 224, B % 224, C % 224, D % 224, u % 224, v % 224
    q = (c * x % 224 * x + 224 * 224 - 2 * b * x % 224 * y + a * y % 224 * y) % 224
    bd = (b - d) % 224
    s1 = (-144 * q + 16 * ((2 - 3 * b * bd) % 224) * x + 48 * (a * bd % 224) * y
          + a - 4 * a * (bd * bd % 224)) % 224
    a, c, d, x = A % 24, C % 24, D % 24, u % 24
    b = B % 24
    s2 = (12 * (d + 1) * x + a * ((2 * c * c - 2 * b * d + d * d) % 24)) % 24
    return s1, s2


def spin_plus(A, B, C, D, u, v, sgn_a):
    """``(224 s1, 24 s2) mod (224, 24)`` for spin data with det +1."""
    a, b, c, d, x, y = A % 224, B % 224, C % 224, D % 224, u % 224, v % 224
    q = (c * x % 224 * x + 224 * 224 - 2 * b * x % 224 * y + a * y % 224 * y) % 224
    bd = (b - d) % 224
    s1 = (-2 * sgn_a + 144 * q + 16 * ((2 + 3 * b * bd) % 224) * x - 48 * (a * bd % 224) * y
          + a + 4 * a * (bd * bd % 224)) % 224
    a, b, c, d, x = A % 24, B % 24, C % 24, D % 24, u % 24
    s2 = (12 * (d + 1) * x - a * ((2 * c * c - 2 * b * d + d * d) % 24) + c * (1 + c * c)) % 24
    return s1, s2


def nonspin(A, B, C, D, u, v):
    """``(224 s1, 24 s2) mod (224, 24)`` for non-spin data."""
    a, b, c, d, x, y = A % 224, B % 224, C % 224, D % 224, u % 224, v % 224
    q = (4 * c * x % 224 * x + 224 * 224 - 4 * b * x % 224 * y + a * y % 224 * y) % 224
    e = (b + 3 * c + 2 * d) % 224
    r = (a * c + 6 * b * c + 4 * b * d + 9 * c * c + 4 * d * d + 12 * c * d) % 224
    s1 = (-144 * q + 48 * (b * e % 224) * x - 24 * (a * e % 224) * y - a * r) % 224
    a, b, c, d = A % 24, B % 24, C % 24, D % 24
    s2 = -(b * b * c + 3 * b * c * c - a * b * d - 3 * a * c * d - a * d * d + c + c * c * c) % 24
    return s1, s2 % 24
