"""Graded polynomial arithmetic over F_p, graded quotients and Jacobian rings.

Monomials inside a fixed weight are ordered by graded reverse lexicographic
order with ``x0 > x1 > ...``; every per-weight basis in the package uses
this order, largest monomial first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import PolySyntaxError, UnknownVariable, ZeroPolynomial
from .fieldlin import FpMatrix, check_prime, rank

Exponent = tuple[int, ...]


class MultiPoly:
    """Polynomial over F_p in a fixed number of variables.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("prime", "nvars", "terms", "_hash")

    def __init__(self, prime: int, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.prime = prime
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c %= prime
            if c:
                clean[exp] = (clean.get(exp, 0) + c) % prime
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, prime: int, exp: Sequence[int], coeff: int = 1) -> "MultiPoly":
        return cls(prime, len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, prime: int, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(prime, nvars, {tuple(exp): 1})

    @classmethod
    def constant(cls, prime: int, nvars: int, c: int) -> "MultiPoly":
        return cls(prime, nvars, {(0,) * nvars: c})

    def _compatible(self, other: "MultiPoly") -> None:
        if self.prime != other.prime or self.nvars != other.nvars:
            raise ValueError(
                f"incompatible polynomials: F_{self.prime}[{self.nvars} vars] vs "
                f"F_{other.prime}[{other.nvars} vars]"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == MultiPoly.constant(self.prime, self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.prime, self.nvars, self.terms) == (other.prime, other.nvars, other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.prime, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.prime, self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.prime, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(self.prime, self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return self.scale(other)
        self._compatible(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.prime, self.nvars, out)

    __rmul__ = __mul__

    def derivative(self, i: int) -> "MultiPoly":
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly(self.prime, self.nvars, out)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Total degree when homogeneous and nonzero, else ``None``."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term(self) -> tuple[Exponent, int]:
        """Largest term in graded reverse lexicographic order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            powers = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            if not powers:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(powers))
            else:
                parts.append("*".join([str(c), *powers]))
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly(F_{self.prime}: {self.to_text()})"


def grevlex_key(exp: Exponent) -> tuple:
    """Sort key; a larger key is a larger monomial in grevlex."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


@lru_cache(maxsize=None)
def monomials(nvars: int, weight: int) -> tuple[Exponent, ...]:
    """All exponent vectors of total degree ``weight``, largest first."""
    if weight < 0 or nvars < 0:
        return ()
    if nvars == 0:
        return ((),) if weight == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(nvars), weight):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


def monomial_count(nvars: int, weight: int) -> int:
    if weight < 0:
        return 0
    if nvars == 0:
        return 1 if weight == 0 else 0
    return comb(weight + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, weight: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(nvars, weight))}


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+\-−]))")


def parse_poly(text: str, names: Sequence[str], prime: int) -> MultiPoly:
    """Parse ``text`` such as ``"x0^2 + 3*x1*x2 - x2^2"``.

    Terms are joined by ``+``/``-`` (the Unicode minus is accepted); a term is
    an optional integer coefficient followed by ``*``-separated powers.
    """
    prime = check_prime(prime)
    names = list(names)
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    index = {n: i for i, n in enumerate(names)}
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            pos += len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {stripped[pos]!r}", text, pos)
        kind = m.lastindex
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    if not tokens:
        raise PolySyntaxError("empty polynomial", text, 0)

    terms: dict[Exponent, int] = {}
    i = 0
    n_tok = len(tokens)

    def expect_factor(j: int) -> tuple[int, int, Exponent | None]:
        """Parse coefficient-or-power at ``j``; returns (next, coeff, exponent)."""
        kind, val, at = tokens[j]
        if kind == 1:
            return j + 1, int(val), None
        if kind == 2:
            if val not in index:
                raise UnknownVariable(f"unknown variable {val!r} (known: {', '.join(names)})", text, at)
            e = [0] * len(names)
            power = 1
            j += 1
            if j < n_tok and tokens[j][0] == 3:
                if j + 1 >= n_tok or tokens[j + 1][0] != 1:
                    where = tokens[j + 1][2] if j + 1 < n_tok else len(text)
                    raise PolySyntaxError("exponent must be a nonnegative integer", text, where)
                power = int(tokens[j + 1][1])
                j += 2
            e[index[val]] = power
            return j, 1, tuple(e)
        raise PolySyntaxError(f"expected a coefficient or variable, found {val!r}", text, at)

    while i < n_tok:
        sign = 1
        if tokens[i][0] == 5:
            sign = -1 if tokens[i][1] != "+" else 1
            i += 1
        if i >= n_tok:
            raise PolySyntaxError("dangling sign at end of input", text, len(text))
        coeff = sign
        exp = [0] * len(names)
        i, c, e = expect_factor(i)
        coeff *= c
        if e is not None:
            exp = [a + b for a, b in zip(exp, e)]
        while i < n_tok and tokens[i][0] == 4:
            if i + 1 >= n_tok:
                raise PolySyntaxError("dangling '*' at end of input", text, len(text))
            i, c, e = expect_factor(i + 1)
            coeff *= c
            if e is not None:
                exp = [a + b for a, b in zip(exp, e)]
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
        if i < n_tok and tokens[i][0] != 5:
            raise PolySyntaxError(f"unexpected token {tokens[i][1]!r}", text, tokens[i][2])
    return MultiPoly(prime, len(names), terms)


# --- derivatives and the Euler relation -------------------------------------


def partials(f: MultiPoly) -> tuple[MultiPoly, ...]:
    return tuple(f.derivative(i) for i in range(f.nvars))


def euler_identity_check(f: MultiPoly) -> bool:
    """Whether ``d*f == sum_i x_i * df/dx_i`` over F_p."""
    if f.is_zero():
        return True
    d = f.degree
    if d is None:
        raise ValueError("Euler identity check needs a homogeneous polynomial")
    rhs = MultiPoly(f.prime, f.nvars)
    for i, g in enumerate(partials(f)):
        rhs = rhs + MultiPoly.variable(f.prime, f.nvars, i) * g
    return f.scale(d) == rhs


# --- Hilbert tables ----------------------------------------------------------


@dataclass(frozen=True)
class HilbertTable:
    """Weight-indexed dimensions of a graded module.

    Only nonzero dimensions are stored.  ``finite_support`` means no weight
    outside the recorded ones carries a nonzero dimension.
    """

    dims: Mapping[int, int]
    computed_up_to: int
    finite_support: bool = False

    def __post_init__(self):
        clean = {int(w): int(v) for w, v in sorted(self.dims.items()) if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("dimensions must be nonnegative")
        object.__setattr__(self, "dims", clean)

    def __getitem__(self, w: int) -> int:
        return self.dims.get(w, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def top_weight(self) -> int | None:
        return max(self.dims) if self.dims else None

    def twist(self, a: int) -> "HilbertTable":
        """The module ``M(a)``, i.e. ``M(a)_i = M_{a+i}``."""
        return HilbertTable(
            {w - a: v for w, v in self.dims.items()}, self.computed_up_to - a, self.finite_support
        )


def series_coefficients(numerator: Sequence[int], nvars: int, upto: int) -> list[int]:
    """Coefficients of ``numerator(t) / (1-t)^nvars`` up to ``t^upto``."""
    out = []
    for w in range(upto + 1):
        out.append(sum(c * monomial_count(nvars, w - k) for k, c in enumerate(numerator)))
    return out


# --- graded quotients --------------------------------------------------------


class GradedAlgebra:
    """``S/(f)`` or ``S`` itself, with per-weight monomial bases.

    A single homogeneous relation is its own Groebner basis, so the standard
    monomials (those not divisible by the leading monomial of ``f``) form a
    basis in each weight and normal forms come from repeated division.
    """

    def __init__(self, prime: int, nvars: int, relation: MultiPoly | None = None):
        self.prime = check_prime(prime)
        self.nvars = nvars
        if relation is not None and relation.is_zero():
            relation = None
        if relation is not None:
            if relation.prime != prime or relation.nvars != nvars:
                raise ValueError("relation lives in a different polynomial ring")
            if relation.degree is None:
                raise ValueError("relation must be homogeneous")
        self.relation = relation
        self._nf: dict[Exponent, dict[Exponent, int]] = {}
        self._basis: dict[int, tuple[Exponent, ...]] = {}
        self._index: dict[int, dict[Exponent, int]] = {}
        if relation is not None:
            lead, lc = relation.leading_term()
            self._lead = lead
            inv = pow(lc, -1, prime)
            self._tail = [(e, (-c * inv) % prime) for e, c in relation.terms.items() if e != lead]

    def __repr__(self) -> str:
        rel = "" if self.relation is None else f"/({self.relation.to_text()})"
        return f"GradedAlgebra(F_{self.prime}[x0..x{self.nvars - 1}]{rel})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (self.prime, self.nvars, self.relation) == (other.prime, other.nvars, other.relation)

    def __hash__(self) -> int:
        return hash((self.prime, self.nvars, self.relation))

    def _divisible(self, e: Exponent) -> bool:
        return all(a >= b for a, b in zip(e, self._lead))

    def basis(self, w: int) -> tuple[Exponent, ...]:
        if w not in self._basis:
            mons = monomials(self.nvars, w)
            if self.relation is not None:
                mons = tuple(e for e in mons if not self._divisible(e))
            self._basis[w] = mons
            self._index[w] = {e: i for i, e in enumerate(mons)}
        return self._basis[w]

    def index(self, w: int) -> dict[Exponent, int]:
        self.basis(w)
        return self._index[w]

    def dim(self, w: int) -> int:
        if self.relation is None:
            return monomial_count(self.nvars, w)
        d = self.relation.degree
        return monomial_count(self.nvars, w) - monomial_count(self.nvars, w - d)

    def monomial_nf(self, e: Exponent) -> dict[Exponent, int]:
        """Normal form of a monomial as {standard monomial: coefficient}."""
        if self.relation is None or not self._divisible(e):
            return {e: 1}
        cached = self._nf.get(e)
        if cached is not None:
            return cached
        p = self.prime
        q = tuple(a - b for a, b in zip(e, self._lead))
        out: dict[Exponent, int] = {}
        for t, c in self._tail:
            for s, v in self.monomial_nf(tuple(a + b for a, b in zip(q, t))).items():
                out[s] = (out.get(s, 0) + c * v) % p
        out = {s: v for s, v in out.items() if v}
        self._nf[e] = out
        return out

    def reduce(self, g: MultiPoly) -> MultiPoly:
        out: dict[Exponent, int] = {}
        for e, c in g.terms.items():
            for s, v in self.monomial_nf(e).items():
                out[s] = out.get(s, 0) + c * v
        return MultiPoly(self.prime, self.nvars, out)

    def is_zero(self, g: MultiPoly) -> bool:
        return self.reduce(g).is_zero()

    def multiplication_block(self, g: MultiPoly, source_w: int) -> np.ndarray:
        """Matrix of ``x -> g*x`` from ``A_{source_w}`` to ``A_{source_w + deg g}``."""
        src = self.basis(source_w)
        e_deg = g.degree
        if e_deg is None:
            if g.is_zero():
                raise ValueError("zero entry has no target weight; skip it")
            raise ValueError("multiplication_block needs a homogeneous polynomial")
        tgt_w = source_w + e_deg
        tgt = self.index(tgt_w)
        out = np.zeros((len(tgt), len(src)), dtype=np.int64)
        p = self.prime
        for col, m in enumerate(src):
            for t, c in g.terms.items():
                prod = tuple(a + b for a, b in zip(m, t))
                for s, v in self.monomial_nf(prod).items():
                    row = tgt[s]
                    out[row, col] = (out[row, col] + c * v) % p
        return out

    def artinian_top(self) -> int | None:
        """Top nonzero weight if the algebra is finite-dimensional."""
        if self.nvars == 0:
            return 0
        if self.nvars == 1 and self.relation is not None:
            return self.relation.degree - 1
        return None

    def top_weight(self, cutoff: int) -> int | None:
        """Last nonzero weight when the algebra is Artinian, else ``None``."""
        for w in range(cutoff + 1):
            if self.dim(w) == 0:
                return w - 1
        return None

    def hilbert_table(self, upto: int) -> HilbertTable:
        top = self.top_weight(upto)
        finite = top is not None
        last = upto if top is None else top
        return HilbertTable({w: self.dim(w) for w in range(last + 1)}, upto, finite)


def ideal_span_rank(gens: Sequence[MultiPoly], w: int) -> int:
    """Dimension of ``I_w`` for ``I`` generated by homogeneous ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return 0
    p, nvars = gens[0].prime, gens[0].nvars
    for g in gens:
        if g.prime != p or g.nvars != nvars:
            raise ValueError("generators live in different polynomial rings")
        if g.degree is None:
            raise ValueError("generators must be homogeneous")
    idx = _monomial_index(nvars, w)
    rows = []
    for g in gens:
        for m in monomials(nvars, w - g.degree):
            row = np.zeros(len(idx), dtype=np.int64)
            for t, c in g.terms.items():
                row[idx[tuple(a + b for a, b in zip(m, t))]] += c
            rows.append(row % p)
    if not rows:
        return 0
    return rank(FpMatrix(p, np.array(rows)))


def quotient_hilbert(gens: Sequence[MultiPoly], w: int, nvars: int | None = None) -> int:
    """``dim_k (S/I)_w`` for the ideal ``I`` spanned by ``gens``."""
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required when there are no generators")
        nvars = gens[0].nvars
    elif any(g.nvars != nvars for g in gens):
        raise ValueError("generators live in a different number of variables")
    return monomial_count(nvars, w) - ideal_span_rank(gens, w)


def quotient_table(gens: Sequence[MultiPoly], nvars: int, cutoff: int) -> HilbertTable:
    """Hilbert table of ``S/I`` up to ``cutoff``.

    Once ``(S/I)_w`` vanishes, ``I`` contains every monomial of weight ``w``
    and hence of every higher weight, so the table is complete.
    """
    dims = {}
    for w in range(cutoff + 1):
        v = quotient_hilbert(gens, w, nvars)
        if v == 0:
            return HilbertTable(dims, cutoff, True)
        dims[w] = v
    return HilbertTable(dims, cutoff, False)


# --- hypersurface data -------------------------------------------------------


@dataclass(frozen=True)
class HypersurfaceRing:
    """Graded data of ``A = F_p[x_0..x_{V-1}]/(f)`` at the origin."""

    prime: int
    names: tuple[str, ...]
    f: MultiPoly
    algebra: GradedAlgebra = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "names", tuple(self.names))
        if self.f.prime != self.prime or self.f.nvars != len(self.names):
            raise ValueError("polynomial does not match the prime or variable list")
        if self.f.is_zero():
            raise ZeroPolynomial("the defining polynomial is zero", "", 0)
        if self.f.degree is None:
            raise ValueError(f"f = {self.f.to_text(self.names)} is not homogeneous")
        if self.f.degree < 1:
            raise ValueError("f must have degree at least 1")
        object.__setattr__(self, "algebra", GradedAlgebra(self.prime, len(self.names), self.f))

    @classmethod
    def from_text(cls, poly: str, names: Sequence[str], prime: int) -> "HypersurfaceRing":
        f = parse_poly(poly, names, prime)
        if f.is_zero():
            raise ZeroPolynomial(f"{poly!r} is zero modulo {prime}", poly, 0)
        return cls(prime, tuple(names), f)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def d(self) -> int:
        return self.f.degree

    @property
    def krull_dim(self) -> int:
        return self.nvars - 1

    @property
    def embdim(self) -> int:
        return self.nvars if self.d >= 2 else self.nvars - 1

    @property
    def polynomial_ring(self) -> GradedAlgebra:
        return GradedAlgebra(self.prime, self.nvars)

    def partials(self) -> tuple[MultiPoly, ...]:
        return partials(self.f)

    def poly_text(self) -> str:
        return self.f.to_text(self.names)


@dataclass(frozen=True)
class JacobianProfile:
    m_table: HilbertTable
    finite_length: bool
    milnor: int | None
    smooth: bool
    p_divides_d: bool
    euler_member: bool


def _f_in_jacobian(R: HypersurfaceRing) -> bool:
    J = [g for g in R.partials() if not g.is_zero()]
    if not J:
        return False
    return ideal_span_rank(J, R.d) == ideal_span_rank([*J, R.f], R.d)


def jacobian_profile(R: HypersurfaceRing, w_cutoff: int | None = None) -> JacobianProfile:
    """Jacobian ring ``M = S/J(f)`` plus smoothness and Euler data.

    Finite length of ``M`` is certified once a weight vanishes.  If the
    partials cut out a finite-length quotient they form a regular sequence of
    degree ``d-1`` forms, whose quotient vanishes in weight ``(d-2)V + 1``; a
    nonzero value there therefore proves infinite length.  Smoothness is the
    finite length of ``S/(J(f) + (f))``, which vanishes by weight
    ``(d-1)V + 1`` when it has finite length.
    """
    V, d = R.nvars, R.d
    need = max(0, (d - 2) * V + 1)
    cutoff = need if w_cutoff is None else w_cutoff
    if cutoff < need:
        raise ValueError(f"w_cutoff must be at least (d-2)V+1 = {need}")
    J = list(R.partials())
    m_table = quotient_table(J, V, cutoff)
    finite = m_table.finite_support
    smooth_table = quotient_table([*J, R.f], V, max(cutoff, (d - 1) * V + 1))
    p_div = d % R.prime == 0
    return JacobianProfile(
        m_table=m_table,
        finite_length=finite,
        milnor=m_table.total() if finite else None,
        smooth=smooth_table.finite_support,
        p_divides_d=p_div,
        euler_member=(not p_div) or _f_in_jacobian(R),
    )


__all__ = [
    "GradedAlgebra",
    "HilbertTable",
    "HypersurfaceRing",
    "JacobianProfile",
    "MultiPoly",
    "euler_identity_check",
    "grevlex_key",
    "ideal_span_rank",
    "jacobian_profile",
    "monomial_count",
    "monomials",
    "parse_poly",
    "partials",
    "quotient_hilbert",
    "quotient_table",
    "series_coefficients",
]
