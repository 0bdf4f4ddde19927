from math import comb

import pytest

from bicomplex import (
    InvalidDimension,
    Morphism,
    ModelSyntaxError,
    NoTopClass,
    NonQuadraticTerm,
    NotADifferential,
    UnknownGenerator,
    aeppli,
    betti_vector,
    bott_chern,
    conjugate_dolbeault,
    de_rham,
    dolbeault,
    format_model_spec,
    frolicher,
    is_E1_isomorphism,
    lie_algebra_model,
    parse_model_file,
    point,
    projective_space,
    serre_pairing_morphism,
    tensor,
    torus,
    validate,
)
from bicomplex.models import IWASAWA_SPEC, AlgebraModel, EquationTerm, ModelSpec
from bicomplex.scalars import ZERO, gauss
from bicomplex.complexes import DoubleComplex

from oracles import iwasawa_oracle_tables

IWASAWA_FILE = """
# the standard nilmanifold example
name = iwasawa
complex_dimension = 3
kind = lie_algebra
generators = phi1, phi2, phi3
d phi3 = -1 * phi1 ^ phi2
"""


# -- parsing -------------------------------------------------------------------


def test_parse_iwasawa_file():
    spec = parse_model_file(IWASAWA_FILE)
    assert spec == IWASAWA_SPEC
    assert spec.generators == ("phi1", "phi2", "phi3")
    assert len(spec.equations) == 1


def test_parse_complex_coefficients_and_conj():
    text = """
complex_dimension = 2
kind = lie_algebra
generators = a, b
d b = (1/2+1/3i) * a ^ conj(a)
"""
    spec = parse_model_file(text)
    ((term,),) = (spec.equations["b"],)
    assert term.coeff.re.numerator == 1 and term.coeff.re.denominator == 2
    assert term.coeff.im.numerator == 1 and term.coeff.im.denominator == 3
    assert term.first == (0, 0) and term.second == (1, 0)


def test_parse_unknown_generator():
    text = IWASAWA_FILE.replace("phi1 ^ phi2", "phi9 ^ phi2")
    with pytest.raises(UnknownGenerator):
        parse_model_file(text)


def test_parse_non_quadratic():
    text = IWASAWA_FILE.replace("phi1 ^ phi2", "phi1")
    with pytest.raises(NonQuadraticTerm):
        parse_model_file(text)
    text = IWASAWA_FILE.replace("phi1 ^ phi2", "phi1 ^ phi2 ^ phi3")
    with pytest.raises(NonQuadraticTerm):
        parse_model_file(text)


def test_parse_syntax_errors_carry_positions():
    with pytest.raises(ModelSyntaxError) as exc:
        parse_model_file("complex_dimension = x\nkind = lie_algebra\ngenerators = a\n")
    assert exc.value.line == 1
    with pytest.raises(ModelSyntaxError):
        parse_model_file("nonsense line without equals\n")
    with pytest.raises(ModelSyntaxError):
        parse_model_file("complex_dimension = 1\nkind = nope\ngenerators = a\n")
    with pytest.raises(ModelSyntaxError):
        parse_model_file("complex_dimension = 2\nkind = lie_algebra\ngenerators = a\n")


def test_format_parse_roundtrip():
    specs = [
        IWASAWA_SPEC,
        ModelSpec("t2", 2, "lie_algebra", ("x", "y"), {}),
        ModelSpec(
            "mixed",
            2,
            "lie_algebra",
            ("x", "y"),
            {
                "y": (
                    EquationTerm(gauss(1, 2), (0, 0), (1, 0)),
                    EquationTerm(gauss(-1), (0, 0), (1, 1)),
                )
            },
        ),
        ModelSpec("proj", 2, "truncated_polynomial", ("t",), {}),
    ]
    for spec in specs:
        assert parse_model_file(format_model_spec(spec)) == spec


def test_format_parse_roundtrip_generated_specs():
    import random as _random
    from fractions import Fraction

    rng = _random.Random(123)
    for trial in range(30):
        n = rng.randint(1, 3)
        gens = tuple(f"g{i}" for i in range(n))
        equations = {}
        for gi, gen in enumerate(gens):
            terms = {}
            for _ in range(rng.randint(0, 2)):
                letters = sorted(
                    rng.sample([(b, i) for b in (0, 1) for i in range(n)], 2)
                )
                coeff = gauss(
                    Fraction(rng.randint(-3, 3), rng.randint(1, 4)),
                    Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
                )
                if coeff:
                    terms[tuple(letters)] = terms.get(tuple(letters), ZERO) + coeff
            built = tuple(
                EquationTerm(c, a, b) for (a, b), c in sorted(terms.items()) if c
            )
            if built:
                equations[gen] = built
        spec = ModelSpec(f"random{trial}", n, "lie_algebra", gens, equations)
        assert parse_model_file(format_model_spec(spec)) == spec


def test_zero_equation_parses():
    text = "complex_dimension = 1\nkind = lie_algebra\ngenerators = a\nd a = 0\n"
    spec = parse_model_file(text)
    assert spec.equations == {}


def test_truncated_polynomial_file_constraints():
    good = "complex_dimension = 2\nkind = truncated_polynomial\ngenerators = t\n"
    spec = parse_model_file(good)
    assert spec.kind == "truncated_polynomial"
    with pytest.raises(ModelSyntaxError):
        parse_model_file("complex_dimension = 2\nkind = truncated_polynomial\ngenerators = t, s\n")


# -- lie_algebra_model ----------------------------------------------------------


def test_zero_equations_give_torus(torus1):
    spec = parse_model_file("complex_dimension = 1\nkind = lie_algebra\ngenerators = a\n")
    model = lie_algebra_model(spec)
    t = dolbeault(model.complex)
    assert dict(t.entries) == {(p, q): 1 for p in (0, 1) for q in (0, 1)}
    assert dict(t.entries) == dict(dolbeault(torus1.complex).entries)


def test_iwasawa_model_shape(iwasawa_model):
    a = iwasawa_model.complex
    assert a.total_dim == 64
    for p in range(4):
        for q in range(4):
            assert a.dim(p, q) == comb(3, p) * comb(3, q)
    assert dolbeault(a).by_degree()[1] == (2, 3)
    assert validate(a) == []


def test_not_a_differential():
    text = """
complex_dimension = 2
kind = lie_algebra
generators = phi1, phi2
d phi2 = phi1 ^ conj(phi1)
d phi1 = phi2 ^ conj(phi2)
"""
    with pytest.raises(NotADifferential):
        lie_algebra_model(parse_model_file(text))


def test_zero_two_component_rejected():
    text = """
complex_dimension = 2
kind = lie_algebra
generators = phi1, phi2
d phi2 = conj(phi1) ^ conj(phi2)
"""
    with pytest.raises(NotADifferential):
        lie_algebra_model(parse_model_file(text))


def test_kodaira_thurston_surface_model():
    """db = a ^ conj(a): a valid non-Kahler surface model; its first Betti
    number is odd."""
    text = """
complex_dimension = 2
kind = lie_algebra
generators = a, b
d b = a ^ conj(a)
"""
    model = lie_algebra_model(parse_model_file(text))
    assert validate(model.complex) == []
    assert betti_vector(model.complex) == (1, 3, 4, 3, 1)
    assert frolicher(model.complex).degeneration_page == 1


def test_builders_have_sigma_and_symmetric_tables(presets):
    for name, model in presets.items():
        a = model.complex
        assert a.sigma is not None
        assert validate(a) == []
        dol, row = dolbeault(a), conjugate_dolbeault(a)
        for (p, q), v in dol.entries.items():
            assert row.at((q, p)) == v


def test_derivation_property_on_basis_pairs(iwasawa_model):
    """d1(x ^ y) = d1 x ^ y + (-1)^{deg x} x ^ d1 y on sampled basis pairs."""
    model = iwasawa_model
    a = model.complex

    def as_coords(pq, vec_dict):
        return {(pq, i): c for i, c in vec_dict.items() if c}

    def wedge_vector(pq1, coords1, pq2, i2):
        out = {}
        for (pq, i), c in coords1.items():
            target = (pq[0] + pq2[0], pq[1] + pq2[1])
            for j, c2 in model.product(pq, i, pq2, i2).items():
                key = (target, j)
                s = out.get(key, ZERO) + c * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    samples = [((1, 0), 2, (1, 1), 4), ((1, 0), 0, (0, 1), 0), ((2, 0), 1, (1, 1), 8),
               ((1, 1), 3, (1, 1), 7), ((0, 1), 2, (2, 1), 5)]
    for pq1, i1, pq2, i2 in samples:
        target = (pq1[0] + pq2[0], pq1[1] + pq2[1])
        prod = model.product(pq1, i1, pq2, i2)
        # left side: d1 applied to the wedge
        lhs = {}
        block = a.d1_at(*target)
        for j, c in prod.items():
            for (r, cc), v in block.entries.items():
                if cc == j:
                    key = ((target[0] + 1, target[1]), r)
                    s = lhs.get(key, ZERO) + v * c
                    if s:
                        lhs[key] = s
                    else:
                        lhs.pop(key, None)
        # right side: Leibniz
        bx = a.d1_at(*pq1)
        dx = {r: v for (r, cc), v in bx.entries.items() if cc == i1}
        rhs = wedge_vector((pq1[0] + 1, pq1[1]), as_coords((pq1[0] + 1, pq1[1]), dx), pq2, i2)
        sign = -1 if (pq1[0] + pq1[1]) % 2 else 1
        by = a.d1_at(*pq2)
        dy = {r: v for (r, cc), v in by.entries.items() if cc == i2}
        for j, c in dy.items():
            for k, c2 in model.product(pq1, i1, (pq2[0] + 1, pq2[1]), j).items():
                key = ((target[0] + 1, target[1]), k)
                s = rhs.get(key, ZERO) + (c * c2 * sign)
                if s:
                    rhs[key] = s
                else:
                    rhs.pop(key, None)
        assert lhs == rhs


def test_product_graded_commutative_and_top(iwasawa_model):
    model = iwasawa_model
    n = 3
    assert model.top_index == (n, n)
    assert model.complex.dim(n, n) == 1
    for pq1, i1, pq2, i2 in [((1, 0), 0, (0, 1), 2), ((1, 1), 4, (2, 0), 1), ((1, 0), 1, (1, 0), 2)]:
        ab = model.product(pq1, i1, pq2, i2)
        ba = model.product(pq2, i2, pq1, i1)
        sign = -1 if ((pq1[0] + pq1[1]) * (pq2[0] + pq2[1])) % 2 else 1
        assert ab == {k: v * sign for k, v in ba.items()}


# -- torus / projective space / point ----------------------------------------------


def test_torus_tables(torus1, torus2):
    t = dolbeault(torus1.complex)
    assert dict(t.entries) == {(p, q): 1 for p in (0, 1) for q in (0, 1)}
    for func in (conjugate_dolbeault, bott_chern, aeppli):
        assert dict(func(torus1.complex).entries) == dict(t.entries)
    assert betti_vector(torus2.complex) == (1, 4, 6, 4, 1)
    assert frolicher(torus2.complex).degeneration_page == 1
    binomials = {(p, q): comb(2, p) * comb(2, q) for p in range(3) for q in range(3)}
    for func in (dolbeault, conjugate_dolbeault, bott_chern, aeppli):
        assert dict(func(torus2.complex).entries) == binomials


def test_torus_rejects_nonpositive():
    with pytest.raises(InvalidDimension):
        torus(0)


def test_tensor_of_tori_matches_bigger_torus(torus1, torus2, torus3):
    tt = tensor(torus1.complex, torus2.complex)
    for func in (dolbeault, bott_chern, aeppli):
        assert dict(func(tt).entries) == dict(func(torus3.complex).entries)


def test_projective_space():
    p2 = projective_space(2)
    assert p2.complex.dims == {(0, 0): 1, (1, 1): 1, (2, 2): 1}
    assert betti_vector(p2.complex) == (1, 0, 1, 0, 1)
    assert p2.top_index == (2, 2)
    assert point().complex.dims == {(0, 0): 1}
    with pytest.raises(InvalidDimension):
        projective_space(-1)


def test_projective_space_quotient_example():
    from bicomplex import Matrix, quotient

    p2 = projective_space(2)
    incl = Morphism(point().complex, p2.complex, {(0, 0): Matrix.identity(1)})
    q, _ = quotient(incl)
    assert q.dims == {(1, 1): 1, (2, 2): 1}


# -- serre pairing ------------------------------------------------------------------


def test_serre_pairing_is_e1_iso_on_presets(presets):
    for name in ("torus1", "iwasawa", "p1", "p2"):
        phi = serre_pairing_morphism(presets[name])
        assert is_E1_isomorphism(phi), name


def test_serre_pairing_p2_middle_block():
    phi = serre_pairing_morphism(projective_space(2))
    block = phi.block_at(1, 1)
    assert block.rows == block.cols == 1
    assert block.entries[(0, 0)]


def test_serre_pairing_needs_top_class():
    bare = AlgebraModel(
        DoubleComplex({(1, 1): 2}, {}, {}), (1, 1), "truncated_polynomial", truncation=1
    )
    with pytest.raises(NoTopClass):
        serre_pairing_morphism(bare)


# -- the brute-force oracle ----------------------------------------------------------


def test_iwasawa_tables_match_independent_oracle(iwasawa_model):
    dol_o, bc_o, aep_o, betti_o = iwasawa_oracle_tables()
    a = iwasawa_model.complex
    assert dict(dolbeault(a).entries) == dol_o
    assert dict(bott_chern(a).entries) == bc_o
    assert dict(aeppli(a).entries) == aep_o
    assert dict(de_rham(a).entries) == betti_o
