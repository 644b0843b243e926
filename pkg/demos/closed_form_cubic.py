"""
Cone over the Fermat cubic: direct elimination against the closed form
======================================================================

For a smooth cone with p not dividing d, every piece above the Krull
dimension is two shifted copies of the Jacobian ring M = S/J(f).  Here we
compute both sides and compare them weight by weight.
"""

from crysalite import HypersurfaceRing, closed_form_wedge, jacobian_profile, koszul, wedge_cohomology
from crysalite.komplex import cohomology_table

R = HypersurfaceRing.from_text("x0^3+x1^3+x2^3", ["x0", "x1", "x2"], 7)

prof = jacobian_profile(R)
print("M:", prof.m_table.dims, "milnor", prof.milnor, "smooth", prof.smooth)

###############################################################################
# The Koszul complex on the partials, over A, splits as M and M(-3)[1].

K = koszul(R.partials(), R.algebra)
kt = cohomology_table(K, support=(0, prof.m_table.top_weight() + R.d))
print("H^0", kt.in_degree(0))
print("H^-1", kt.in_degree(-1))

###############################################################################
# Pieces n = 3..7 by elimination and by the formula.

for n in range(3, 8):
    direct = wedge_cohomology(R, n)
    closed = closed_form_wedge(R, n)
    print(n, direct.in_degree(3), direct.in_degree(2), direct.dims == closed.dims)
