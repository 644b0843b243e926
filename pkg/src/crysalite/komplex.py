"""Bounded complexes of free graded modules and their per-weight cohomology.

Indexing is cohomological: ``differentials[i]`` maps the degree ``i`` term to
the degree ``i+1`` term.  A differential is stored as a matrix of
polynomials whose entry ``[t][s]`` sends source generator ``s`` to target
generator ``t``; it must be homogeneous of degree
``weight(s) - weight(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import ComplexError
from .fieldlin import FpMatrix, parallel_map, rank
from .polyring import GradedAlgebra, MultiPoly

PolyMatrix = tuple[tuple[MultiPoly, ...], ...]


@dataclass(frozen=True, eq=False)
class GradedFreeComplex:
    ring: GradedAlgebra
    terms: Mapping[int, tuple[int, ...]]
    differentials: Mapping[int, PolyMatrix]

    def __post_init__(self):
        terms = {int(i): tuple(ws) for i, ws in sorted(self.terms.items()) if len(ws)}
        diffs = {int(i): tuple(tuple(row) for row in m) for i, m in self.differentials.items()}
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "differentials", diffs)
        for i, m in diffs.items():
            src, tgt = self.term(i), self.term(i + 1)
            if len(m) != len(tgt) or any(len(row) != len(src) for row in m):
                raise ComplexError(
                    f"differential in degree {i} has the wrong shape for ranks "
                    f"{len(src)} -> {len(tgt)}"
                )

    def term(self, i: int) -> tuple[int, ...]:
        return self.terms.get(i, ())

    def degrees(self) -> range:
        if not self.terms:
            return range(0)
        return range(min(self.terms), max(self.terms) + 1)

    def differential(self, i: int) -> PolyMatrix:
        if i in self.differentials:
            return self.differentials[i]
        zero = MultiPoly(self.ring.prime, self.ring.nvars)
        return tuple(tuple(zero for _ in self.term(i)) for _ in self.term(i + 1))

    def generator_weights(self) -> list[int]:
        return [w for ws in self.terms.values() for w in ws]

    def term_dim(self, i: int, w: int) -> int:
        """``dim_k`` of the degree ``i`` term in weight ``w``."""
        return sum(self.ring.dim(w - g) for g in self.term(i))

    def weight_matrix(self, i: int, w: int) -> FpMatrix:
        """The differential out of degree ``i`` restricted to weight ``w``."""
        src, tgt = self.term(i), self.term(i + 1)
        ring = self.ring
        col_sizes = [len(ring.basis(w - g)) for g in src]
        row_sizes = [len(ring.basis(w - g)) for g in tgt]
        out = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=np.int64)
        if out.size == 0:
            return FpMatrix(ring.prime, out)
        row_off = np.concatenate([[0], np.cumsum(row_sizes)])
        col_off = np.concatenate([[0], np.cumsum(col_sizes)])
        mat = self.differential(i)
        for t, row in enumerate(mat):
            if not row_sizes[t]:
                continue
            for s, g in enumerate(row):
                if g.is_zero() or not col_sizes[s]:
                    continue
                block = ring.multiplication_block(g, w - src[s])
                out[row_off[t]:row_off[t + 1], col_off[s]:col_off[s + 1]] = block
        return FpMatrix(ring.prime, out)


@dataclass(frozen=True)
class CohomologyTable:
    """``(degree, weight) -> dim_k H^degree`` in that weight.

    Weights in ``[w_lo, w_hi]`` were computed.  ``complete[deg]`` says that no
    nonzero entry exists in that degree outside the stored ones.
    """

    dims: Mapping[tuple[int, int], int]
    w_lo: int
    w_hi: int
    complete: Mapping[int, bool] = field(default_factory=dict)

    def __post_init__(self):
        clean = {(int(i), int(w)): int(v) for (i, w), v in sorted(self.dims.items()) if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("cohomology dimensions must be nonnegative")
        object.__setattr__(self, "dims", clean)
        object.__setattr__(self, "complete", {int(k): bool(v) for k, v in sorted(self.complete.items())})

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.dims.get(key, 0)

    def degrees(self) -> list[int]:
        return sorted({i for i, _ in self.dims})

    def in_degree(self, i: int) -> dict[int, int]:
        return {w: v for (j, w), v in self.dims.items() if j == i}

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.dims.items() if j == i)

    def is_complete(self) -> bool:
        return bool(self.complete) and all(self.complete.values())

    def shifted(self, k: int) -> "CohomologyTable":
        """Re-index degrees by ``deg - k``."""
        return CohomologyTable(
            {(i - k, w): v for (i, w), v in self.dims.items()},
            self.w_lo,
            self.w_hi,
            {i - k: c for i, c in self.complete.items()},
        )

    def same_entries(self, other: "CohomologyTable") -> bool:
        return dict(self.dims) == dict(other.dims)


# --- constructions -----------------------------------------------------------


def koszul(
    gens: Sequence[MultiPoly], over: GradedAlgebra, degree: int | None = None
) -> GradedFreeComplex:
    """Koszul complex on ``gens`` over ``over``, in degrees ``[-r, 0]``.

    The basis of degree ``-j`` is the ``j``-subsets of generator indices in
    lexicographic order, with weight ``j*e`` for generators of degree ``e``,
    and ``d(e_I) = sum_t (-1)^(t-1) g_{i_t} e_{I minus i_t}``.  ``degree``
    fixes ``e`` when some generators vanish (all of them, possibly).
    """
    gens = list(gens)
    r = len(gens)
    for g in gens:
        if g.prime != over.prime or g.nvars != over.nvars:
            raise ValueError("Koszul generators live in a different ring")
    degs = {g.degree for g in gens if not g.is_zero()}
    if any(g.degree is None and not g.is_zero() for g in gens):
        raise ValueError("Koszul generators must be homogeneous")
    if len(degs) > 1:
        raise ValueError(f"Koszul generators must share one degree, got {sorted(degs)}")
    if degree is not None:
        if degs and degs != {degree}:
            raise ValueError(f"generators have degree {sorted(degs)}, not {degree}")
        degs = {degree}
    e = degs.pop() if degs else 0
    zero = MultiPoly(over.prime, over.nvars)
    subsets = {j: list(combinations(range(r), j)) for j in range(r + 1)}
    terms = {-j: tuple([j * e] * len(subsets[j])) for j in range(r + 1)}
    diffs = {}
    for j in range(1, r + 1):
        tgt_index = {s: k for k, s in enumerate(subsets[j - 1])}
        mat = [[zero] * len(subsets[j]) for _ in subsets[j - 1]]
        for col, I in enumerate(subsets[j]):
            for t, i in enumerate(I):
                rest = I[:t] + I[t + 1:]
                mat[tgt_index[rest]][col] = gens[i] if t % 2 == 0 else -gens[i]
        diffs[-j] = tuple(tuple(row) for row in mat)
    return GradedFreeComplex(over, terms, diffs)


def _poly_matmul(ring: GradedAlgebra, a: PolyMatrix, b: PolyMatrix, inner: int) -> list[list[MultiPoly]]:
    zero = MultiPoly(ring.prime, ring.nvars)
    rows = len(a)
    cols = len(b[0]) if b else 0
    out = [[zero] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            acc = zero
            for k in range(inner):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            out[i][j] = ring.reduce(acc)
    return out


def complex_defects(C: GradedFreeComplex) -> list[str]:
    """Every position violating homogeneity or ``d∘d = 0``."""
    problems = []
    for i, mat in C.differentials.items():
        src, tgt = C.term(i), C.term(i + 1)
        for t, row in enumerate(mat):
            for s, g in enumerate(row):
                if g.is_zero():
                    continue
                want = src[s] - tgt[t]
                if g.degree != want:
                    problems.append(
                        f"d^{i}[{t}][{s}] = {g.to_text()} should be homogeneous of degree {want}"
                    )
    for i in C.degrees():
        if not C.term(i) or not C.term(i + 1) or not C.term(i + 2):
            continue
        comp = _poly_matmul(C.ring, C.differential(i + 1), C.differential(i), len(C.term(i + 1)))
        for t, row in enumerate(comp):
            for s, g in enumerate(row):
                if not g.is_zero():
                    problems.append(f"(d^{i + 1} d^{i})[{t}][{s}] = {g.to_text()} is nonzero")
    return problems


def complex_check(C: GradedFreeComplex) -> bool:
    return not complex_defects(C)


def _weight_row(C: GradedFreeComplex, w: int) -> tuple[dict[int, int], dict[int, int]]:
    """Term dimensions and differential ranks at one weight."""
    ring = C.ring
    dims = {i: sum(len(ring.basis(w - g)) for g in C.term(i)) for i in C.degrees()}
    ranks = {}
    for i in C.degrees():
        if dims.get(i) and dims.get(i + 1):
            ranks[i] = rank(C.weight_matrix(i, w))
        else:
            ranks[i] = 0
    return dims, ranks


def cohomology_table(
    C: GradedFreeComplex,
    w_max: int | None = None,
    support: tuple[int, int] | None = None,
    checked: bool = False,
) -> CohomologyTable:
    """Per-weight cohomology dimensions of ``C``.

    ``support`` is a certified weight window containing all cohomology; when
    given, weights outside it are skipped and the table is flagged complete
    provided ``w_max`` reaches the window's top.  Without ``support`` only
    ``w_max`` bounds the computation and the table is complete only for a
    finite-dimensional ring.
    """
    if not checked:
        defects = complex_defects(C)
        if defects:
            raise ComplexError("not a complex: " + "; ".join(defects[:5]))
    degs = list(C.degrees())
    if not degs:
        return CohomologyTable({}, 0, -1, {})
    lo = min(C.generator_weights())
    hi_cert = None
    if support is not None:
        lo = max(lo, support[0])
        hi_cert = support[1]
    else:
        top = C.ring.artinian_top()
        if top is not None:
            hi_cert = max(C.generator_weights()) + top
    if w_max is None:
        if hi_cert is None:
            raise ValueError("w_max is required when no finite support is certified")
        w_max = hi_cert
    hi = w_max if hi_cert is None else min(w_max, hi_cert)
    complete_flag = hi_cert is not None and w_max >= hi_cert
    weights = list(range(lo, hi + 1))
    rows = parallel_map(lambda w: _weight_row(C, w), weights)
    dims = {}
    for w, (tdims, ranks) in zip(weights, rows):
        euler_terms = 0
        euler_h = 0
        for i in degs:
            h = tdims[i] - ranks[i] - ranks.get(i - 1, 0)
            if h < 0:
                raise ComplexError(f"negative cohomology at degree {i}, weight {w}")
            if h:
                dims[(i, w)] = h
            euler_terms += (-1) ** (i % 2) * C.term_dim(i, w)
            euler_h += (-1) ** (i % 2) * h
        if euler_terms != euler_h:
            raise ComplexError(f"Euler characteristic mismatch at weight {w}")
    return CohomologyTable(dims, lo, hi, {i: complete_flag for i in degs})


def euler_balance(C: GradedFreeComplex, table: CohomologyTable) -> bool:
    """Per-weight alternating sums of cohomology and of term dimensions agree."""
    for w in range(table.w_lo, table.w_hi + 1):
        lhs = sum((-1) ** (i % 2) * table[(i, w)] for i in C.degrees())
        rhs = sum((-1) ** (i % 2) * C.term_dim(i, w) for i in C.degrees())
        if lhs != rhs:
            return False
    return True


__all__ = [
    "CohomologyTable",
    "GradedFreeComplex",
    "cohomology_table",
    "complex_check",
    "complex_defects",
    "euler_balance",
    "koszul",
]
