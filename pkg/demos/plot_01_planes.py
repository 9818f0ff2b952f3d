"""
Fields and planes
=================

Build GF(q), the Desarguesian affine plane AG(2,q), and an affine plane cut
out of PG(2,q) by deleting a line. Check the axioms on both.
"""

# %%
# Field arithmetic
# ----------------
# Elements of GF(p^e) are integers 0..q-1 whose base-p digits are the
# polynomial coefficients, constant term first.
from kakeyaplanes.gf import field_of_order

F = field_of_order(9)
print(F.coefficients(5), F.mul(5, 7), F.inv(5), F.pow(5, -1))
print("fixed by x -> x^3:", F.fixed_by_frobenius(1))

# %%
# The affine plane
# ----------------
# Point ``x*q + y``; line ``m*q + c`` is y = m x + c, and the last q lines
# are the verticals x = c.
from kakeyaplanes.plane import desarguesian_affine, verify_affine_axioms

A = desarguesian_affine(F)
print(A.n_points, A.n_lines, A.lines.shape)
print(verify_affine_axioms(A).as_dict())

# %%
# From the projective plane
# -------------------------
# Deleting any line of PG(2,q) leaves an affine plane whose parallel classes
# are the pencils through the deleted points.
from kakeyaplanes.plane import affine_from_projective, desarguesian_projective, incidence_certificate

P = desarguesian_projective(F)
B = affine_from_projective(P, 17)
print(verify_affine_axioms(B).ok)
print(incidence_certificate(A) == incidence_certificate(B))

# %%
# Planes round-trip through a small text format, so externally generated
# planes can be fed to every other tool.
import io

from kakeyaplanes.plane import dump_plane, load_plane

text = dump_plane(desarguesian_affine(field_of_order(3)))
print(text.splitlines()[:4])
print(load_plane(io.StringIO(text)).q)
