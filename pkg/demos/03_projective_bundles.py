"""Projective bundles and the exceptional-divisor consistency check.

The complex of a rank-n projective bundle over a base X is modeled by

    K  =  A_X  +  A_X[1]  +  ...  +  A_X[n-1].

Over a point this is exactly the cohomology of projective (n-1)-space.  The
quotient of K by the base inclusion models the reduced cohomology of the
exceptional divisor of a blow-up, and the package checks that the quotient's
five cohomology tables agree with the shifted copies, for every functor.
"""

from bicomplex import (
    betti_vector,
    dolbeault,
    dot,
    exceptional_consistency_check,
    projective_bundle,
    projective_space,
    quotient,
    torus,
)

k, inclusion = projective_bundle(dot(0, 0), 3)
print("bundle over a point, rank 3:", dict(dolbeault(k).entries))
print("projective plane:          ", dict(dolbeault(projective_space(2).complex).entries))
print()

base = torus(1)
k, inclusion = projective_bundle(base.complex, 2)
print("rank-2 bundle over the 1-torus, Betti:", betti_vector(k))
print()

q, projection = quotient(inclusion)
print("quotient by the base inclusion has dims:", dict(q.dims))
print("matches the shifted base copy:", dict(dolbeault(q).entries)
      == {(p + 1, qq + 1): v for (p, qq), v in dolbeault(base.complex).entries.items()})
print()

for center in ("point", "torus1"):
    model = dot(0, 0) if center == "point" else torus(1).complex
    for r in (2, 3, 4):
        ok = exceptional_consistency_check(model, r)
        print(f"exceptional-divisor consistency, center {center}, codimension {r}: {ok}")
