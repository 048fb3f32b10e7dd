"""Exact Gaussian elimination over F_p on int64 numpy arrays."""
from __future__ import annotations

import numpy as np

from .geometry import inverse


def rref(m, p: int, ncols: int | None = None):
    """Reduced row echelon form of ``m`` mod p.

    Pivots are searched only among the first ``ncols`` columns (all columns by
    default); row operations act on the whole matrix, so an identity block
    appended on the right records the row transform.
    Returns ``(R, pivot_columns)``.
    """
    m = np.array(m, dtype=np.int64) % p
    nrows = m.shape[0]
    ncols = m.shape[1] if ncols is None else ncols
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(m[rank:, col])
        if nz.size == 0:
            continue
        r = rank + int(nz[0])
        if r != rank:
            m[[rank, r]] = m[[r, rank]]
        m[rank] = (m[rank] * inverse(int(m[rank, col]), p)) % p
        factors = m[:, col].copy()
        factors[rank] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            m[rows] = (m[rows] - np.outer(factors[rows], m[rank])) % p
        pivots.append(col)
        rank += 1
    return m, pivots


def rank_mod_p(m, p: int) -> int:
    return len(rref(m, p)[1])


class SpanSolver:
    """Solves ``sum_i c_i * gens[i] = target`` for a fixed generator matrix.

    ``gens`` has one generator per row. The elimination is done once; each
    solve is then a matrix-vector product.
    """

    def __init__(self, gens, p: int):
        gens = np.asarray(gens, dtype=np.int64) % p
        self.p = p
        self.n_gens, self.n_points = gens.shape
        aug = np.concatenate([gens.T, np.eye(self.n_points, dtype=np.int64)], axis=1)
        reduced, pivots = rref(aug, p, ncols=self.n_gens)
        self.pivots = pivots
        self.rank = len(pivots)
        self.transform = reduced[:, self.n_gens:]
        self.transform.setflags(write=False)

    def solve(self, target):
        """Return ``("ok", coeffs)`` or ``("no", functional)``.

        The functional annihilates every generator and pairs nonzero with the target.
        """
        p = self.p
        y = (self.transform @ (np.asarray(target, dtype=np.int64) % p)) % p
        bad = np.flatnonzero(y[self.rank:])
        if bad.size:
            return "no", self.transform[self.rank + int(bad[0])].copy()
        coeffs = np.zeros(self.n_gens, dtype=np.int64)
        coeffs[self.pivots] = y[:self.rank]
        return "ok", coeffs
