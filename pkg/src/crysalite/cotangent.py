"""Wedge powers of the cotangent complex of a graded hypersurface.

For ``A = S/(f)`` the cotangent complex is the two-term complex
``L = (f)/(f^2) -> E = Omega_S (x) A`` sending ``f`` to ``df``.  Its ``n``-th
derived wedge power, shifted by ``[-n]``, is the divided-power Koszul complex

    Gamma^n(L) (x) wedge^0 E -> Gamma^(n-1)(L) (x) wedge^1 E -> ...

placed in degrees ``0 .. min(n, V)``.  Trivialising ``Gamma^i(L)`` by
``gamma_i(f)`` turns every differential into ``omega -> omega ^ df`` on the
exterior algebra of ``E``.  Term ``j`` has rank ``C(V, j)`` and all of its
generators sit in weight ``(n-j)d + j``.

Tables for the Frobenius twist ``A^(1)`` are reported with the weights of
``A``; only dimensions over a perfect field are computed, so nothing is lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping

from .errors import CharacteristicDividesDegree, IndexTooSmall, NoSingularity, NotSmooth
from .komplex import CohomologyTable, GradedFreeComplex, cohomology_table
from .polyring import HypersurfaceRing, JacobianProfile, MultiPoly, jacobian_profile


@lru_cache(maxsize=256)
def profile_of(R: HypersurfaceRing) -> JacobianProfile:
    return jacobian_profile(R)


@dataclass(frozen=True)
class CotangentPresentation:
    """``c: L -> E`` with ``L = A(-d)`` generated by ``f`` and ``E = A(-1)^V``."""

    ring: HypersurfaceRing

    @property
    def conormal_weight(self) -> int:
        return self.ring.d

    @property
    def differential_weights(self) -> tuple[int, ...]:
        return (1,) * self.ring.nvars

    @property
    def connecting_map(self) -> tuple[MultiPoly, ...]:
        """Coordinates of ``c(f) = df`` in the basis ``dx_i``."""
        return self.ring.partials()

    def as_complex(self) -> GradedFreeComplex:
        """``L -> E`` in cohomological degrees ``[-1, 0]``."""
        R = self.ring
        col = tuple((g,) for g in self.connecting_map)
        return GradedFreeComplex(
            R.algebra, {-1: (R.d,), 0: self.differential_weights}, {-1: col}
        )


def _wedge_sign(I: tuple[int, ...], i: int) -> int:
    # e_I ^ dx_i moves dx_i left past every index of I larger than i.
    return -1 if sum(1 for t in I if t > i) % 2 else 1


def wedge_generator_weight(R: HypersurfaceRing, n: int, j: int) -> int:
    return (n - j) * R.d + j


def wedge_complex(R: HypersurfaceRing, n: int) -> GradedFreeComplex:
    """The divided-power Koszul complex representing ``wedge^n L [-n]``."""
    if n < 0:
        raise ValueError("wedge index must be nonnegative")
    V = R.nvars
    top = min(n, V)
    df = R.partials()
    zero = MultiPoly(R.prime, V)
    subsets = {j: list(combinations(range(V), j)) for j in range(top + 1)}
    terms = {j: (wedge_generator_weight(R, n, j),) * len(subsets[j]) for j in range(top + 1)}
    diffs = {}
    for j in range(top):
        tgt = {s: k for k, s in enumerate(subsets[j + 1])}
        mat = [[zero] * len(subsets[j]) for _ in subsets[j + 1]]
        for col, I in enumerate(subsets[j]):
            for i in range(V):
                if i in I or df[i].is_zero():
                    continue
                row = tgt[tuple(sorted(I + (i,)))]
                mat[row][col] = df[i] if _wedge_sign(I, i) > 0 else -df[i]
        diffs[j] = tuple(tuple(r) for r in mat)
    return GradedFreeComplex(R.algebra, terms, diffs)


def wedge_support(R: HypersurfaceRing, n: int) -> tuple[int, int] | None:
    """A certified weight window containing all cohomology of ``wedge_complex``.

    Two sources of finiteness are used.  When ``A`` is finite-dimensional
    (one variable) every term is, and the window runs to the largest
    generator weight plus the top weight of ``A``.  When ``n >= V`` the
    complex is the Koszul complex on the partials over ``A``, twisted so its
    last term sits in weight ``g = (n-V)d + V``; if the partials cut out a
    finite-length ``M = S/J`` they are a regular sequence on ``S``, so the
    cohomology is ``Tor^S(M, A)`` computed from ``0 -> S(-d) -> S -> A``,
    which lives in weights ``g .. g + d + top(M)``.

    ``None`` means no window is certified.  An empty window ``(lo, lo-1)``
    means the cohomology vanishes.
    """
    V, d = R.nvars, R.d
    top_j = min(n, V)
    lo = wedge_generator_weight(R, n, top_j)
    art = R.algebra.artinian_top()
    windows = []
    if art is not None:
        windows.append((lo, n * d + art))
    if n >= V:
        prof = profile_of(R)
        if prof.finite_length:
            top_m = prof.m_table.top_weight()
            if top_m is None:
                return (lo, lo - 1)
            windows.append((lo, lo + d + top_m))
    if not windows:
        return None
    return min(windows, key=lambda w: w[1])


def default_cutoff(R: HypersurfaceRing, n: int) -> int:
    """Weight cutoff used when no finite support can be certified."""
    return n * R.d + R.d + max(0, (R.d - 2) * R.nvars)


def wedge_cohomology(R: HypersurfaceRing, n: int, w_max: int | None = None) -> CohomologyTable:
    """Cohomology of ``wedge^n L [-n]`` per (degree, weight), degrees ``0..V``.

    Use ``table.shifted(n)`` for the degrees of ``wedge^n L`` itself.
    """
    C = wedge_complex(R, n)
    support = wedge_support(R, n)
    if support is None and w_max is None:
        w_max = default_cutoff(R, n)
    if support is not None and support[1] < support[0]:
        return CohomologyTable({}, support[0], support[1], {i: True for i in C.degrees()})
    return cohomology_table(C, w_max=w_max, support=support)


def closed_form_wedge(R: HypersurfaceRing, n: int) -> CohomologyTable:
    """``M(V(d-1) - nd)[-V] (+) M(V(d-1) - nd - d)[-(V-1)]`` as a table.

    Valid for smooth ``f``, ``p`` not dividing ``d`` and ``n > V - 1``.
    """
    V, d = R.nvars, R.d
    N = V - 1
    prof = profile_of(R)
    if prof.p_divides_d:
        raise CharacteristicDividesDegree(f"p = {R.prime}, d = {d}")
    if not prof.smooth or not prof.finite_length:
        raise NotSmooth(f"{R.poly_text()} over F_{R.prime}")
    if n <= N:
        raise IndexTooSmall(f"n = {n}, N = {N}")
    m = prof.m_table
    top_twist = V * (d - 1) - n * d
    dims: dict[tuple[int, int], int] = {}
    for w, v in m.twist(top_twist).dims.items():
        dims[(V, w)] = v
    for w, v in m.twist(top_twist - d).dims.items():
        dims[(V - 1, w)] = dims.get((V - 1, w), 0) + v
    lo = wedge_generator_weight(R, n, V)
    top_m = m.top_weight()
    hi = lo - 1 if top_m is None else lo + d + top_m
    return CohomologyTable(dims, lo, hi, {j: True for j in range(min(n, V) + 1)})


def wedge_term_ranks(R: HypersurfaceRing, n: int) -> dict[int, int]:
    """Ranks of the terms of ``wedge_complex`` keyed by ``wedge^n L`` degree."""
    C = wedge_complex(R, n)
    return {j - n: len(C.term(j)) for j in C.degrees()}


@dataclass(frozen=True)
class SpecialFiberProfile:
    embdim: int
    rank: int
    n: int
    dims: Mapping[int, int]


def special_fiber_dims(embdim: int, r: int, n: int) -> SpecialFiberProfile:
    """Dimensions of ``wedge^n L (x) k`` for ``L (x) k = k^r[1] (+) k^embdim``.

    Degree ``-n + a`` carries ``wedge^a(k^embdim) (x) Gamma^(n-a)(k^r)``.
    """
    if embdim < 0 or n < 0:
        raise ValueError("embedding dimension and index must be nonnegative")
    if r < 1:
        raise ValueError("relation rank must be at least 1")
    dims = {}
    for a in range(min(embdim, n) + 1):
        v = comb(embdim, a) * comb(n - a + r - 1, r - 1)
        if v:
            dims[a - n] = v
    return SpecialFiberProfile(embdim, r, n, dims)


def differentials_vanish_mod_m(R: HypersurfaceRing, n: int) -> bool:
    """Every nonzero differential entry has positive degree."""
    C = wedge_complex(R, n)
    return all(
        g.is_zero() or g.degree >= 1
        for mat in C.differentials.values()
        for row in mat
        for g in row
    )


@dataclass(frozen=True)
class VanishingFlags:
    n: int
    embdim: int
    krull_dim: int
    top_nonzero: bool
    second_degree: int | None
    bottom_vanishes: bool
    complete: bool


def lemma21_flags(R: HypersurfaceRing, n: int, w_max: int | None = None) -> VanishingFlags:
    """Nonvanishing pattern of ``H^*(wedge^n L)`` for ``n`` above the embedding dimension.

    ``top_nonzero``: ``H^(-n+V) != 0``.  ``second_degree``: the least
    ``0 < i <= V`` with ``H^(-n+V-i) != 0``.  ``bottom_vanishes``:
    ``H^(-n) == 0``.
    """
    V = R.nvars
    if R.d < 2:
        raise NoSingularity(f"deg f = {R.d}")
    if n <= V:
        raise ValueError(f"n = {n} must exceed the embedding dimension {V}")
    table = wedge_cohomology(R, n, w_max)
    second = next((i for i in range(1, V + 1) if table.total(V - i)), None)
    return VanishingFlags(
        n=n,
        embdim=V,
        krull_dim=R.krull_dim,
        top_nonzero=table.total(V) > 0,
        second_degree=second,
        bottom_vanishes=table.total(0) == 0,
        complete=table.is_complete(),
    )


__all__ = [
    "CotangentPresentation",
    "SpecialFiberProfile",
    "VanishingFlags",
    "closed_form_wedge",
    "default_cutoff",
    "differentials_vanish_mod_m",
    "lemma21_flags",
    "profile_of",
    "special_fiber_dims",
    "wedge_cohomology",
    "wedge_complex",
    "wedge_generator_weight",
    "wedge_support",
    "wedge_term_ranks",
]
