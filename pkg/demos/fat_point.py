"""
Fat points and where the bottom degree stops vanishing
======================================================

For x^p in one variable the derivative is zero, the wedge differentials
vanish, and every piece keeps a full copy of A in its lowest degree.  This
is the zero-dimensional case excluded from the vanishing of H^{-n}.
"""

from crysalite import HypersurfaceRing, crys_dimensions, lemma21_flags, splitting_license

fat = HypersurfaceRing.from_text("x^5", ["x"], 5)
print(splitting_license(fat).kind.value)

rep = crys_dimensions(fat, 8)
print("H^0", rep.cumulative[0])
print("H^1", rep.cumulative[1])

###############################################################################
# Compare the flags with a positive-dimensional germ.

odp = HypersurfaceRing.from_text("x0^2+x1^2+x2^2", ["x0", "x1", "x2"], 5)
for R, n in ((fat, 3), (odp, 5)):
    fl = lemma21_flags(R, n)
    print(R.poly_text(), "dim", fl.krull_dim, "top", fl.top_nonzero, "i", fl.second_degree,
          "bottom vanishes", fl.bottom_vanishes)

###############################################################################
# Without a lift or the low-degree inequality the totals are only labelled.

quartic = HypersurfaceRing.from_text("x0^4+x1^4+x2^4+x3^4", ["x0", "x1", "x2", "x3"], 5)
print(splitting_license(quartic).kind.value, dict(splitting_license(quartic).witness))
