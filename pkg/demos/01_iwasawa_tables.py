"""All cohomology tables of the Iwasawa manifold model.

The Iwasawa manifold is the quotient of the complex Heisenberg group by its
Gaussian-integer lattice: the standard small non-Kahler example.  Its
left-invariant forms give a 64-dimensional double complex with structure
equation d phi3 = -phi1 ^ phi2, and every cohomology below comes out of
exact rational arithmetic on that complex.
"""

from bicomplex import (
    aeppli,
    betti_vector,
    bott_chern,
    conjugate_dolbeault,
    dolbeault,
    frolicher,
    iwasawa,
    validate,
)
from bicomplex.cli import render_diamond

model = iwasawa()
a = model.complex

print("double complex:", a.total_dim, "dimensions over Q(i), window", a.window)
print("axioms violated:", validate(a) or "none")
print()

print("Betti numbers b_0..b_6:", betti_vector(a))
print()

for name, table in [
    ("column (Dolbeault) cohomology", dolbeault(a)),
    ("row cohomology", conjugate_dolbeault(a)),
    ("Bott-Chern cohomology", bott_chern(a)),
    ("Aeppli cohomology", aeppli(a)),
]:
    d = render_diamond(table)
    print(f"{name}  ({d.orientation}):")
    print("\n".join(d.rows))
    print()

ss = frolicher(a)
print(f"spectral sequence of the column filtration degenerates at page "
      f"{ss.degeneration_page}:")
for r, page in ss.pages:
    total = sum(page.values())
    print(f"  page {r}: total dimension {total}")
