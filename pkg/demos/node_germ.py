"""
The node x*y: growth of crystalline cohomology
==============================================

The germ of ``xy = 0`` at the origin is toric, so its conjugate filtration
splits and the graded pieces add up to crystalline cohomology on the nose.
Each piece past the first contributes one class to H^1 and one to H^2.
"""

from crysalite import HypersurfaceRing, crys_dimensions, infinite_generation_certificate, wedge_cohomology

R = HypersurfaceRing.from_text("x0*x1", ["x0", "x1"], 5)
print(R.nvars, "variables, degree", R.d, "Krull dimension", R.krull_dim)

###############################################################################
# One graded piece.  In the indexing of wedge^n L[-n] the cohomology sits in
# degrees 2 and 1, at weights 2n-2 and 2n.

t = wedge_cohomology(R, 4)
print(t.dims)

###############################################################################
# Add the pieces up to n = 10.  Counts only see weights <= w_max; the
# n = 0 piece is A itself, which is why H^0 is large and flat.

rep = crys_dimensions(R, 10)
print("license:", rep.license.kind.value, "w_max", rep.w_max)
for i, run in rep.cumulative.items():
    print(f"H^{i}", run)

###############################################################################
# H^2 gains exactly one weight per piece.

print(rep.totals[2])

###############################################################################
# The certificate repackages the same increments.

cert = infinite_generation_certificate(R, 10)
print(cert.degrees, dict(cert.increments))
