"""Dense exact linear algebra over prime fields F_p.

Matrices are stored as int64 numpy arrays holding canonical residues in
``[0, p)``.  Products of two residues must fit in int64, so the modulus is
capped at ``2**31``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    q = 3
    while q * q <= n:
        if n % q == 0:
            return False
        q += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise TypeError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p >= MAX_PRIME:
        raise ValueError(f"modulus {p} exceeds the supported bound 2**31")
    return p


def thread_count() -> int:
    """Worker count for batched evaluation, capped by ``CRYSALITE_THREADS``."""
    raw = os.environ.get("CRYSALITE_THREADS")
    if raw is None:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"CRYSALITE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"CRYSALITE_THREADS must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """A matrix over F_p.  Immutable after construction."""

    prime: int
    data: np.ndarray = field(repr=False)

    def __init__(self, prime: int, data, shape: tuple[int, int] | None = None):
        p = check_prime(prime)
        if data is None:
            arr = np.zeros(shape if shape is not None else (0, 0), dtype=np.int64)
        elif isinstance(data, np.ndarray) and data.dtype.kind in "iu":
            arr = np.array(data % p, dtype=np.int64)
        else:
            # Lists may carry arbitrary Python ints; reduce before narrowing.
            arr = np.array(data, dtype=object)
            if arr.size == 0:
                arr = np.zeros(shape if shape is not None else (0, 0), dtype=np.int64)
            else:
                arr = np.array(arr % p, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be two-dimensional, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "prime", p)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, prime: int, rows: int, cols: int) -> "FpMatrix":
        return cls(prime, None, shape=(rows, cols))

    @classmethod
    def identity(cls, prime: int, size: int) -> "FpMatrix":
        return cls(prime, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.prime, self.data.T)

    T = property(transpose)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.prime != other.prime:
            raise ValueError("cannot multiply matrices over different primes")
        return FpMatrix(self.prime, matmul_mod(self.data, other.data, self.prime))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.prime == other.prime and self.shape == other.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:
        return hash((self.prime, self.shape, self.data.tobytes()))

    def is_zero(self) -> bool:
        return not self.data.any()

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of residue matrices, reduced mod p without int64 overflow."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) ** 2 * inner < 2**63:
        return (a @ b) % p
    out = a.astype(object) @ b.astype(object)
    return np.array(out % p, dtype=np.int64)


def _echelon(work: np.ndarray, p: int, full: bool) -> list[int]:
    """In-place elimination with first-nonzero pivots in column order.

    Returns the pivot columns.  ``full`` clears above pivots too and scales
    pivots to 1 (reduced row echelon form).
    """
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(work[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            work[[r, piv]] = work[[piv, r]]
        inv = pow(int(work[r, c]), -1, p)
        work[r, c:] = (work[r, c:] * inv) % p
        col = work[:, c].copy()
        col[r] = 0
        if not full:
            col[:r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            work[hit, c:] = (work[hit, c:] - np.outer(col[hit], work[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


def rank(m: FpMatrix) -> int:
    """Rank over F_p."""
    if m.rows == 0 or m.cols == 0:
        return 0
    work = np.array(m.data, dtype=np.int64)
    # Eliminating along the shorter side is cheaper and yields the same rank.
    if work.shape[0] > work.shape[1]:
        work = np.ascontiguousarray(work.T)
    return len(_echelon(work, m.prime, full=False))


def kernel_dim(m: FpMatrix) -> int:
    return m.cols - rank(m)


def rref(m: FpMatrix) -> tuple[FpMatrix, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns (Gauss-Jordan)."""
    work = np.array(m.data, dtype=np.int64)
    if work.size == 0:
        return FpMatrix(m.prime, work, shape=work.shape), ()
    pivots = _echelon(work, m.prime, full=True)
    return FpMatrix(m.prime, work), tuple(pivots)


def batch_ranks(matrices: Sequence[FpMatrix], workers: int | None = None) -> list[int]:
    """Ranks of many matrices; the result order follows the input order."""
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(matrices) <= 1:
        return [rank(m) for m in matrices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(rank, matrices))


def parallel_map(fn, items: Iterable, workers: int | None = None) -> list:
    items = list(items)
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


__all__ = [
    "FpMatrix",
    "batch_ranks",
    "check_prime",
    "is_prime",
    "kernel_dim",
    "matmul_mod",
    "parallel_map",
    "rank",
    "rref",
    "thread_count",
]
