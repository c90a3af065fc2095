"""Systems of invariants of simply-connected 6-manifolds with torsion-free homology.

A system is stored in coordinates: the trilinear cup form as its coefficients
``mu(e_i, e_j, e_k)`` for ``i <= j <= k`` (in ``combinations_with_replacement``
order), the first Pontryagin class as a linear form, ``w2`` as a 0/1 vector
and half the third Betti number.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np


def _index_triples(rank: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(itertools.combinations_with_replacement(range(rank), 3))


@dataclass(frozen=True)
class SystemOfInvariants:
    rank: int
    mu: tuple[int, ...]
    p1: tuple[int, ...]
    w2: tuple[int, ...]
    half_b3: int = 0

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if len(self.mu) != len(_index_triples(self.rank)):
            raise ValueError("mu table must cover every i <= j <= k")
        if len(self.p1) != self.rank or len(self.w2) != self.rank:
            raise ValueError("p1 and w2 must have length rank")
        if any(w not in (0, 1) for w in self.w2):
            raise ValueError("w2 entries must be 0 or 1")
        if self.half_b3 < 0:
            raise ValueError("half_b3 must be non-negative")
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))
        object.__setattr__(self, "p1", tuple(int(x) for x in self.p1))

    @property
    def spin(self) -> bool:
        return not any(self.w2)

    def coefficient(self, i: int, j: int, k: int) -> int:
        i, j, k = sorted((i, j, k))
        return self.mu[_index_triples(self.rank).index((i, j, k))]

    def tensor(self) -> np.ndarray:
        """The full symmetric ``rank x rank x rank`` coefficient array (object dtype)."""
        t = np.zeros((self.rank,) * 3, dtype=object)
        for c, ijk in zip(self.mu, _index_triples(self.rank)):
            for perm in set(itertools.permutations(ijk)):
                t[perm] = c
        return t

    def mu_eval(self, x, y, z) -> int:
        """Evaluate the trilinear form on three coordinate vectors."""
        t = self.tensor()
        return int(sum(t[i, j, k] * x[i] * y[j] * z[k]
                       for i in range(self.rank) for j in range(self.rank) for k in range(self.rank)))

    def p_eval(self, x) -> int:
        return sum(p * xi for p, xi in zip(self.p1, x))


@dataclass(frozen=True)
class EulerClass:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def primitive(self) -> bool:
        return reduce(math.gcd, self.coeffs, 0) == 1


def _require_rank2(*systems: SystemOfInvariants) -> None:
    for s in systems:
        if s.rank != 2:
            raise ValueError("unsupported rank")


def system_from_plumbing(a1: int, a2: int, a3: int) -> SystemOfInvariants:
    """The system of the plumbing boundary indexed by ``(a1, a2, a3)``."""
    return SystemOfInvariants(
        rank=2,
        mu=(a1 - a3, -a3, -a3, a2 - a3),
        p1=(4 * (a1 - a3), 4 * (a2 - a3)),
        w2=(0, 0),
    )


def system_from_cp2_bundle(alpha: int, beta: int) -> SystemOfInvariants:
    """The system of the linear S^2-bundle over CP^2 indexed by ``(alpha, beta)``."""
    if beta not in (-1, 0, 1):
        raise ValueError("beta must be -1, 0 or 1")
    return SystemOfInvariants(
        rank=2,
        mu=(0, 1, beta, alpha + beta),
        p1=(0, 4 * alpha + 3 + beta),
        w2=((1 - beta) % 2, 0),
    )


def inv_examples() -> dict[str, SystemOfInvariants]:
    """Reference systems: S^2 x S^4 and CP^3."""
    return {
        "S2xS4": SystemOfInvariants(rank=1, mu=(0,), p1=(0,), w2=(0,)),
        "CP3": SystemOfInvariants(rank=1, mu=(1,), p1=(4,), w2=(0,)),
    }


def connected_sum(a: SystemOfInvariants, b: SystemOfInvariants) -> SystemOfInvariants:
    """Orthogonal sum of two systems; mixed cup products vanish."""
    rank = a.rank + b.rank
    ta, tb = a.tensor(), b.tensor()
    mu = []
    for i, j, k in _index_triples(rank):
        if k < a.rank:
            mu.append(ta[i, j, k])
        elif i >= a.rank:
            mu.append(tb[i - a.rank, j - a.rank, k - a.rank])
        else:
            mu.append(0)
    return SystemOfInvariants(rank, tuple(mu), a.p1 + b.p1, a.w2 + b.w2, a.half_b3 + b.half_b3)


@lru_cache(maxsize=8)
def _residue_grid(rank: int, modulus: int) -> np.ndarray:
    return np.array(list(itertools.product(range(modulus), repeat=rank)), dtype=np.int64).reshape(-1, rank)


def check_realizability(sys: SystemOfInvariants) -> bool:
    """Whether the cubic form and p1 satisfy the congruence for realizability.

    Checks ``mu(W,W,W) = p(W) mod 48`` for all ``W = w2 mod 2``, enumerated as
    ``W = w2 + 2x`` with ``x`` ranging over residues mod 24.  For ``w2 = 0``
    this is equivalent to ``4 mu(x,x,x) = p(x) mod 24``.
    """
    if sys.rank == 0:
        return True
    x = _residue_grid(sys.rank, 24)
    w = np.asarray(sys.w2, dtype=np.int64) + 2 * x
    t = (sys.tensor() % 48).astype(np.int64)
    w = w % 48
    cube = np.einsum("ijk,ni,nj,nk->n", t, w, w, w) % 48
    lin = w @ (np.asarray(sys.p1, dtype=object) % 48).astype(np.int64) % 48
    return bool(np.all(cube == lin))


def bilinear_at(sys: SystemOfInvariants, e: EulerClass) -> list[list[int]]:
    """The matrix ``[mu(e_i, e_j, e)]``."""
    t = sys.tensor()
    n = sys.rank
    return [[int(sum(t[i, j, k] * e.coeffs[k] for k in range(n))) for j in range(n)] for i in range(n)]


def det_at_euler(sys: SystemOfInvariants, e: EulerClass) -> int:
    _require_rank2(sys)
    (a, b), (c, d) = bilinear_at(sys, e)
    return a * d - b * c


def orbit_space_admissible(sys: SystemOfInvariants, e: EulerClass) -> bool:
    """Whether a circle bundle with Euler class ``e`` has total space a spin cohomology S^2 x S^5."""
    _require_rank2(sys)
    if sys.half_b3 != 0 or not e.primitive:
        return False
    det = det_at_euler(sys, e)
    if det not in (-1, 1):
        return False
    if not sys.spin:
        if det != -1:
            return False
        if any((w - c) % 2 for w, c in zip(sys.w2, e.coeffs)):
            return False
    return True


def cubic_discriminant(sys: SystemOfInvariants) -> int:
    """Discriminant of the binary cubic ``mu(x e1 + y e2)^3``.

    It is unchanged by every basis change of determinant +-1, so differing
    discriminants prove two systems inequivalent.
    """
    _require_rank2(sys)
    a, b, c, d = sys.mu
    b, c = 3 * b, 3 * c
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


@lru_cache(maxsize=16)
def _unimodular(bound: int) -> np.ndarray:
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    g = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
    det = g[:, 0] * g[:, 3] - g[:, 1] * g[:, 2]
    return g[np.abs(det) == 1]


def equivalence_search(a: SystemOfInvariants, b: SystemOfInvariants, bound: int) -> np.ndarray | None:
    """Search for ``phi`` with ``phi^* (mu_b, p_b) = (mu_a, p_a)`` and ``phi(w2_a) = w2_b``.

    ``phi`` maps coordinates of ``a`` to coordinates of ``b`` and has entries in
    ``[-bound, bound]``.  Candidates are tried in lexicographic order of the
    entries ``(p, q, r, s)`` of ``[[p, q], [r, s]]``; the first hit is returned.
    ``None`` means nothing was found within the bound, which proves nothing.
    Equal systems return the identity before any enumeration.
    """
    _require_rank2(a, b)
    if a == b:
        return np.eye(2, dtype=np.int64)
    if a.half_b3 != b.half_b3:
        return None
    if cubic_discriminant(a) != cubic_discriminant(b):
        return None
    g = _unimodular(bound)
    # columns of phi: images of the basis vectors of a
    c0 = g[:, [0, 2]]
    c1 = g[:, [1, 3]]
    tb = np.array(b.tensor(), dtype=object)

    def cube(x, y, z):
        out = np.zeros(len(g), dtype=object)
        for i, j, k in itertools.product(range(2), repeat=3):
            if tb[i, j, k]:
                out = out + tb[i, j, k] * (x[:, i] * y[:, j] * z[:, k]).astype(object)
        return out

    ok = np.ones(len(g), dtype=bool)
    for coeff, (i, j, k) in zip(a.mu, _index_triples(2)):
        cols = (c0, c1)
        ok &= cube(cols[i], cols[j], cols[k]) == coeff
    for pa, col in zip(a.p1, (c0, c1)):
        ok &= (col[:, 0].astype(object) * b.p1[0] + col[:, 1].astype(object) * b.p1[1]) == pa
    wa = np.asarray(a.w2, dtype=np.int64)
    image = (g[:, [0, 1]] @ wa) % 2, (g[:, [2, 3]] @ wa) % 2
    ok &= (image[0] == b.w2[0]) & (image[1] == b.w2[1])
    hits = np.flatnonzero(ok)
    if len(hits) == 0:
        return None
    return g[hits[0]].reshape(2, 2).copy()


def pull_back(b: SystemOfInvariants, phi) -> SystemOfInvariants:
    """The system ``phi^* b`` for a unimodular ``phi`` (columns are images of basis vectors)."""
    _require_rank2(b)
    phi = np.asarray(phi, dtype=object)
    cols = (tuple(phi[:, 0]), tuple(phi[:, 1]))
    mu = tuple(b.mu_eval(cols[i], cols[j], cols[k]) for i, j, k in _index_triples(2))
    p1 = tuple(b.p_eval(c) for c in cols)
    inv = np.array([[phi[1, 1], -phi[0, 1]], [-phi[1, 0], phi[0, 0]]], dtype=object)
    w2 = tuple(int(x) % 2 for x in inv.dot(np.asarray(b.w2, dtype=object)))
    return SystemOfInvariants(2, mu, p1, w2, b.half_b3)
