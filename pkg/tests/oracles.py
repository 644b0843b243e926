"""Independent reference computations used to freeze expected values.

Nothing here touches the normal-form machinery of ``GradedAlgebra``: quotient
rings are handled by stacking the relation's multiples next to each map and
subtracting ranks, and bases come from brute enumeration.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from crysalite.fieldlin import FpMatrix, rank


def span_size_rank(rows, p):
    """Rank of a tiny matrix by counting its row span."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return 0
    cols = len(rows[0])
    span = set()
    for coeffs in product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(cols)))
    size, k = len(span), 0
    while p**k < size:
        k += 1
    assert p**k == size
    return k


def enumerate_monomials(nvars, w):
    if w < 0:
        return []
    return [e for e in product(range(w + 1), repeat=nvars) if sum(e) == w]


def series_power(numer, power, upto):
    """Coefficients of ``numer(t)**power`` (numer a coefficient list)."""
    out = [1]
    for _ in range(power):
        nxt = [0] * (len(out) + len(numer) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(numer):
                nxt[i + j] += a * b
        out = nxt
    return (out + [0] * (upto + 1))[: upto + 1]


def _mult_matrix(g, src_w, tgt_mons, p):
    """Columns: g * m for each monomial m of weight src_w, in coordinates of tgt_mons."""
    index = {e: i for i, e in enumerate(tgt_mons)}
    src = enumerate_monomials(g.nvars, src_w)
    out = np.zeros((len(tgt_mons), len(src)), dtype=np.int64)
    for col, m in enumerate(src):
        for t, c in g.terms.items():
            out[index[tuple(a + b for a, b in zip(m, t))], col] += c
    return out % p


def cohomology_via_stacking(C, f, w):
    """``{degree: dim H}`` at weight ``w`` for a complex over ``S/(f)``.

    Each term over ``A`` is ``T_S / f T_S(-d)``.  The induced map has rank
    ``rank[D | F_tgt] - rank F_tgt`` and the term dimension is
    ``dim T_S - rank F_src``.
    """
    p, V = C.ring.prime, C.ring.nvars
    d = f.degree if f is not None else None

    def term_blocks(i):
        return [enumerate_monomials(V, w - g) for g in C.term(i)]

    def relation_matrix(i):
        blocks = term_blocks(i)
        total = sum(len(b) for b in blocks)
        if f is None:
            return np.zeros((total, 0), dtype=np.int64)
        cols = []
        off = 0
        for g, mons in zip(C.term(i), blocks):
            sub = _mult_matrix(f, w - g - d, mons, p)
            full = np.zeros((total, sub.shape[1]), dtype=np.int64)
            full[off:off + len(mons)] = sub
            cols.append(full)
            off += len(mons)
        return np.hstack(cols) if cols else np.zeros((total, 0), dtype=np.int64)

    def r(a):
        if a.size == 0:
            return 0
        return rank(FpMatrix(p, a))

    def map_matrix(i):
        src_blocks, tgt_blocks = term_blocks(i), term_blocks(i + 1)
        rows = sum(len(b) for b in tgt_blocks)
        cols = []
        mat = C.differential(i)
        for s, sw in enumerate(C.term(i)):
            block = np.zeros((rows, len(src_blocks[s])), dtype=np.int64)
            off = 0
            for t, tw in enumerate(C.term(i + 1)):
                g = mat[t][s]
                n_t = len(tgt_blocks[t])
                if not g.is_zero() and n_t and len(src_blocks[s]):
                    block[off:off + n_t] = _mult_matrix(g, w - sw, tgt_blocks[t], p)
                off += n_t
            cols.append(block)
        return np.hstack(cols) if cols else np.zeros((rows, 0), dtype=np.int64)

    dims, ranks = {}, {}
    for i in C.degrees():
        dims[i] = sum(len(b) for b in term_blocks(i)) - r(relation_matrix(i))
        if C.term(i + 1):
            F_t = relation_matrix(i + 1)
            ranks[i] = r(np.hstack([map_matrix(i), F_t])) - r(F_t)
        else:
            ranks[i] = 0
    return {i: dims[i] - ranks[i] - ranks.get(i - 1, 0) for i in C.degrees()}
