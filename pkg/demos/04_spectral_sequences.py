"""Watching spectral sequences degenerate, page by page.

Page 1 of the column spectral sequence is column (Dolbeault-style)
cohomology; the limit page is the associated graded of total (de Rham)
cohomology.  Squares are invisible to every page; a length-2 zigzag dies on
page 2; tori degenerate immediately; the Iwasawa model needs two pages.
"""

from bicomplex import frolicher, iwasawa, torus, zigzag
from bicomplex.models import lie_algebra_model, parse_model_file

examples = {
    "horizontal length-2 zigzag": zigzag((0, 0), 2, "d1"),
    "torus(2)": torus(2).complex,
    "iwasawa": iwasawa().complex,
}

KODAIRA_THURSTON = """
complex_dimension = 2
kind = lie_algebra
generators = a, b
d b = a ^ conj(a)
"""
examples["kodaira-thurston surface"] = lie_algebra_model(
    parse_model_file(KODAIRA_THURSTON, name="kt")
).complex

for name, a in examples.items():
    ss = frolicher(a, "column")
    print(f"{name}: degenerates at page {ss.degeneration_page}")
    for r, page in ss.pages:
        by_degree = {}
        for (p, q), v in page.items():
            by_degree[p + q] = by_degree.get(p + q, 0) + v
        print(f"  page {r} totals per degree: {dict(sorted(by_degree.items()))}")
    rs = frolicher(a, "row")
    print(f"  row direction degenerates at page {rs.degeneration_page}")
    print()
