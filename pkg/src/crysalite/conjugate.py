"""Conjugate-filtration dimension tables for ``Spec A`` and growth certificates.

The ``n``-th conjugate graded piece of the derived de Rham complex is
``wedge^n L [-n]``; its cohomology is computed unconditionally.  Adding the
pieces up to get crystalline cohomology needs the filtration to split, and
that is only *checked* here, never constructed:

* ``FrobeniusLiftToric``: ``f`` is a single monomial, so ``A`` is toric and
  lifts to ``W_2`` together with Frobenius;
* ``LowDegreeCone``: ``f`` is smooth, ``p`` does not divide ``d`` and
  ``N(d-2) < d+2`` with ``N = V - 1``; the pieces above ``dim A`` then have
  pairwise disjoint weights in the range where an extension could live, so
  the filtration splits over ``k`` beyond ``dim A``.

Everything else is labelled ``Unverified`` and its totals are conditional.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .cotangent import lemma21_flags, profile_of, wedge_cohomology, wedge_support
from .errors import ConditionalCertificateWarning, NoSingularity
from .fieldlin import parallel_map
from .komplex import CohomologyTable
from .polyring import HypersurfaceRing

W_COEFFICIENT_NOTE = (
    "Only mod-p dimensions are computed. Statements about crystalline cohomology "
    "over W (p-torsion, reductions mod p) follow from the base change "
    "R Gamma_crys(X/W) (x)_W k = R Gamma_crys(X/k) and are not computed here."
)


class License(str, enum.Enum):
    FROBENIUS_LIFT_TORIC = "FrobeniusLiftToric"
    LOW_DEGREE_CONE = "LowDegreeCone"
    UNVERIFIED = "Unverified"


@dataclass(frozen=True)
class SplittingLicense:
    kind: License
    witness: Mapping[str, object] = field(default_factory=dict)

    @property
    def conditional(self) -> bool:
        return self.kind is License.UNVERIFIED


def low_degree_check(N: int, d: int) -> bool:
    return N * (d - 2) < d + 2


def weight_overlap(N: int, d: int, n: int, j: int) -> bool:
    """Whether ``M'`` and ``M'((n+1-j)d)`` can share a weight.

    ``M'`` spans an interval of length ``(d-2)(N+1)``; a shared weight is what
    a nonzero graded map between the two pieces would need.
    """
    if j >= n:
        raise ValueError(f"need j < n, got j = {j}, n = {n}")
    return (n + 1 - j) * d <= (d - 2) * (N + 1)


def splitting_license(R: HypersurfaceRing) -> SplittingLicense:
    if R.f.is_monomial():
        (exp, _), = R.f.terms.items()
        return SplittingLicense(License.FROBENIUS_LIFT_TORIC, {"monomial": list(exp)})
    prof = profile_of(R)
    N, d = R.nvars - 1, R.d
    witness = {
        "N": N,
        "d": d,
        "smooth": prof.smooth,
        "p_divides_d": prof.p_divides_d,
        "low_degree": low_degree_check(N, d),
    }
    if prof.smooth and not prof.p_divides_d and low_degree_check(N, d):
        return SplittingLicense(License.LOW_DEGREE_CONE, witness)
    return SplittingLicense(License.UNVERIFIED, witness)


def nullhomotopy_guard(R: HypersurfaceRing, n_max: int) -> bool:
    """No weight overlap for any ``V-1 < j < n <= n_max``."""
    N, d = R.nvars - 1, R.d
    return not any(
        weight_overlap(N, d, n, j) for n in range(N + 2, n_max + 1) for j in range(N + 1, n)
    )


@dataclass(frozen=True)
class ConjugateReport:
    prime: int
    names: tuple[str, ...]
    poly: str
    degree: int
    embdim: int
    krull_dim: int
    n_max: int
    w_max: int
    license: SplittingLicense
    pieces: Mapping[int, CohomologyTable]
    totals: Mapping[int, Mapping[int, int]]
    cumulative: Mapping[int, tuple[int, ...]]
    below_threshold: tuple[int, ...] = ()

    @property
    def conditional(self) -> bool:
        return self.license.conditional

    @property
    def complete(self) -> bool:
        return all(t.is_complete() for t in self.pieces.values())

    def incomplete_pieces(self) -> list[int]:
        return [n for n, t in self.pieces.items() if not t.is_complete()]


def auto_w_max(R: HypersurfaceRing, n_max: int) -> int:
    """Smallest cutoff covering every certified piece support up to ``n_max``."""
    tops = []
    for n in range(n_max + 1):
        s = wedge_support(R, n)
        if s is not None and s[1] >= s[0]:
            tops.append(s[1])
    if tops:
        return max(tops)
    return n_max * R.d + R.d + max(0, (R.d - 2) * R.nvars)


def crys_dimensions(R: HypersurfaceRing, n_max: int, w_max: int | None = None) -> ConjugateReport:
    """Dimensions of ``H^i_crys(Spec A / k)`` in weights ``<= w_max`` from pieces ``n <= n_max``."""
    V = R.nvars
    if n_max < V:
        raise ValueError(f"n_max = {n_max} must be at least the number of variables {V}")
    if w_max is None:
        w_max = auto_w_max(R, n_max)
    license = splitting_license(R)
    tables = parallel_map(lambda n: wedge_cohomology(R, n, w_max), range(n_max + 1), workers=1)
    pieces = {n: _clip(t, w_max) for n, t in enumerate(tables)}
    degs = range(0, min(n_max, V) + 1)
    totals: dict[int, dict[int, int]] = {i: {} for i in degs}
    cumulative: dict[int, list[int]] = {i: [] for i in degs}
    running = {i: 0 for i in degs}
    for n in range(n_max + 1):
        for (i, w), v in pieces[n].dims.items():
            totals[i][w] = totals[i].get(w, 0) + v
            running[i] += v
        for i in degs:
            cumulative[i].append(running[i])
    below = ()
    if license.kind is License.LOW_DEGREE_CONE:
        below = tuple(n for n in range(n_max + 1) if n <= R.krull_dim)
    return ConjugateReport(
        prime=R.prime,
        names=R.names,
        poly=R.poly_text(),
        degree=R.d,
        embdim=R.embdim,
        krull_dim=R.krull_dim,
        n_max=n_max,
        w_max=w_max,
        license=license,
        pieces=pieces,
        totals={i: dict(sorted(t.items())) for i, t in totals.items()},
        cumulative={i: tuple(c) for i, c in cumulative.items()},
        below_threshold=below,
    )


def _clip(t: CohomologyTable, w_max: int) -> CohomologyTable:
    if t.w_hi <= w_max:
        return t
    dims = {k: v for k, v in t.dims.items() if k[1] <= w_max}
    return CohomologyTable(dims, t.w_lo, w_max, {i: False for i in t.complete})


@dataclass(frozen=True)
class InfiniteGenerationCertificate:
    prime: int
    poly: str
    license: SplittingLicense
    degrees: tuple[int, int]
    located_i: int
    start_n: int
    n_max: int
    increments: Mapping[int, tuple[int, ...]]
    strictly_increasing: Mapping[int, bool]
    expected_increment: int | None
    increments_match_expected: bool | None
    conditional: bool
    thresholds: Mapping[str, int]
    note: str = W_COEFFICIENT_NOTE


def infinite_generation_certificate(R: HypersurfaceRing, n_max: int) -> InfiniteGenerationCertificate:
    """Growth of crystalline cohomology in degrees ``V`` and ``V - i``.

    Each piece ``n > dim A`` contributes its full (certified finite) dimension
    in those degrees; strictly positive contributions for every ``n`` up to
    ``n_max`` are the certified growth pattern.
    """
    V = R.nvars
    if R.d < 2:
        raise NoSingularity(f"deg f = {R.d}: the origin is a smooth point")
    license = splitting_license(R)
    if license.conditional:
        warnings.warn(
            f"no splitting license for {R.poly_text()} over F_{R.prime}; "
            "growth is reported for the graded pieces only",
            ConditionalCertificateWarning,
            stacklevel=2,
        )
    start = R.krull_dim + 1
    if n_max < max(start, V + 1):
        raise ValueError(f"n_max must be at least {max(start, V + 1)}")
    flags = lemma21_flags(R, V + 1)
    i = flags.second_degree
    if i is None:
        raise ValueError("no second nonvanishing degree found")
    pair = (V, V - i)
    tables = parallel_map(lambda n: wedge_cohomology(R, n), range(start, n_max + 1), workers=1)
    if not all(t.is_complete() for t in tables):
        raise ValueError("piece supports could not be certified finite; no certificate")
    increments = {deg: tuple(t.total(deg) for t in tables) for deg in pair}
    prof = profile_of(R)
    expected = None
    if license.kind is License.LOW_DEGREE_CONE or (prof.smooth and not prof.p_divides_d):
        expected = prof.milnor
    elif R.algebra.artinian_top() is not None and all(g.is_zero() for g in R.partials()):
        expected = R.algebra.artinian_top() + 1
    matches = None if expected is None else all(
        v == expected for inc in increments.values() for v in inc
    )
    return InfiniteGenerationCertificate(
        prime=R.prime,
        poly=R.poly_text(),
        license=license,
        degrees=pair,
        located_i=i,
        start_n=start,
        n_max=n_max,
        increments=increments,
        strictly_increasing={deg: all(v > 0 for v in inc) for deg, inc in increments.items()},
        expected_increment=expected,
        increments_match_expected=matches,
        conditional=license.conditional,
        thresholds={"krull_dim": R.krull_dim, "embdim": R.embdim, "nvars": V},
    )


__all__ = [
    "ConjugateReport",
    "InfiniteGenerationCertificate",
    "License",
    "SplittingLicense",
    "W_COEFFICIENT_NOTE",
    "auto_w_max",
    "crys_dimensions",
    "infinite_generation_certificate",
    "low_degree_check",
    "nullhomotopy_guard",
    "splitting_license",
    "weight_overlap",
]
