import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from projqc.bundle import HX, BundleSpec, CohClass, cup, normal_form_classical
from projqc.errors import HypothesisError, SpecMismatch
from projqc.exactpoly import IntPoly
from projqc.quantum import (ALL_DEGREE_ONE, CONJECTURAL, HXQ, SPLIT_THEOREM, TANGENT, TANGENT_DERIVED,
                            TEMPLATE, QClass, QuantumRelations, basis_reduction_holds,
                            derive_tangent_relations, homogeneity_holds, q0_limit_holds, q_normal_form,
                            q_product, reduce_quantum_randomly, relations_conjectural, relations_split,
                            relations_tangent, relations_template_general, section_pairing, verify_516)

h, xi, q = IntPoly.gens(HXQ)


def S(n, *m):
    return BundleSpec.split(n, m)


def qc(p, rel):
    return q_normal_form(p, rel)


def test_split_examples():
    rel = relations_split(S(1, 1, 1))
    assert rel.rhs1() == q**2 and rel.rhs2() == q**2
    rel = relations_split(S(2, 1, 1, 2))
    assert rel.rhs1() == (xi - 2 * h) * q**2 and rel.rhs2() == q**3
    assert rel.provenance == SPLIT_THEOREM
    rel = relations_split(S(3, 1, 2))
    assert rel.rhs1() == (xi - 2 * h) * q**3 and rel.rhs2() == q**2


def test_split_refusal_names_bound():
    with pytest.raises(HypothesisError) as err:
        relations_split(S(2, 1, 2, 2))
    assert "2c1 < n+1+2r" in err.value.bound
    with pytest.raises(HypothesisError):
        relations_split(BundleSpec.tangent_bundle(3))


@pytest.mark.parametrize("n", range(2, 9))
def test_tangent_two_ways(n):
    t = relations_tangent(n)
    d = derive_tangent_relations(n)
    assert t == d and t.provenance == TANGENT and d.provenance == TANGENT_DERIVED
    assert t.rhs1() == xi * q**n
    assert t.rhs2() == (1 + (-1) ** n) * q**n


def test_tangent_rejects_small_n():
    with pytest.raises(HypothesisError):
        relations_tangent(1)
    with pytest.raises(HypothesisError):
        derive_tangent_relations(1)


def test_template_examples():
    t = relations_template_general(BundleSpec.tangent_bundle(2))
    assert set(t.a) == {(0, 0), (0, 1), (1, 0)} and set(t.b) == {(0, 0)}
    assert t.a[(0, 1)] == 1 and t.holes() == ["a[1,0]", "b[0,0]"]
    assert relations_template_general(S(2, 1, 1)).holes() == []
    assert relations_template_general(S(2, 1, 1)).a == {(0, 0): 1}
    rel = relations_template_general(S(5, 1, 1, 3))
    assert rel.b == {} and rel.is_numeric
    bare = relations_template_general(S(2, 1, 1, 2), fill=False)
    assert bare.provenance == TEMPLATE and len(bare.holes()) == 6


def test_template_small_c1_has_no_b_sum(grid):
    for spec in grid:
        if spec.c1 <= spec.n:
            assert relations_template_general(spec).b == {}


def test_template_refuses_non_fano():
    with pytest.raises(HypothesisError):
        relations_template_general(S(1, 1, 4))


def test_template_agrees_with_split_and_tangent(grid):
    for spec in grid:
        try:
            bare = relations_template_general(spec, fill=False)
        except HypothesisError:
            continue
        filled = relations_template_general(spec)
        assert set(filled.a) == set(bare.a) and set(filled.b) == set(bare.b)
        if filled.is_numeric and spec.c1 < 2 * spec.r:
            assert filled.a[(0, spec.c1 - spec.r)] == 1
    for n in range(2, 7):
        tpl = relations_template_general(BundleSpec.tangent_bundle(n))
        full = relations_tangent(n)
        for key, v in tpl.a.items():
            assert v is None or v == full.a[key]
        for key, v in tpl.b.items():
            assert v is None or v == full.b[key]


def test_all_degree_one_outside_split_range():
    rel = relations_template_general(S(1, 1, 1, 1, 1))
    assert rel.provenance == ALL_DEGREE_ONE
    assert rel.rhs1() == q**2 and rel.rhs2() == q**4


def test_conjectural_outside_range():
    rel = relations_conjectural(S(2, 1, 2, 2))
    assert rel.provenance == CONJECTURAL and rel.is_numeric
    assert relations_conjectural(S(2, 1, 1, 2)).provenance == SPLIT_THEOREM
    with pytest.raises(HypothesisError):
        relations_conjectural(S(1, 1, 4))


def test_normal_form_examples():
    t2 = relations_tangent(2)
    assert qc(h**3, t2).as_poly() == xi * q**2
    assert qc(xi**2, t2).as_poly() == 3 * h * xi - 3 * h**2 + 2 * q**2
    x = h * xi**3 + 2 * h**2
    assert qc(q * x, t2).as_poly() == q * qc(x, t2).as_poly()
    one = QClass(t2, {(0, 0, 0): 1})
    h1 = QClass(t2, {(1, 0, 0): 1})
    h2 = QClass(t2, {(2, 0, 0): 1})
    assert q_product(h1, h2).as_poly() == xi * q**2
    assert q_product(one, h2) == h2
    r11 = relations_split(S(1, 1, 1))
    e = qc(xi - h, r11)
    assert (e * e).as_poly() == q**2


def test_normal_form_rejects_holes():
    with pytest.raises(ValueError):
        q_normal_form(h, relations_template_general(S(2, 1, 1, 2), fill=False))


def test_product_mismatch():
    a = qc(h, relations_tangent(2))
    b = qc(h, relations_tangent(3))
    with pytest.raises(SpecMismatch):
        q_product(a, b)


def test_qclass_box_and_degree():
    rel = relations_tangent(2)
    with pytest.raises(ValueError):
        QClass(rel, {(3, 0, 0): 1})
    assert qc(h**5 * xi**3, rel).is_homogeneous()


def _numeric_rels(grid):
    rels = []
    for spec in grid:
        try:
            rel = relations_template_general(spec)
        except HypothesisError:
            continue
        if rel.is_numeric:
            rels.append(rel)
    return rels + [relations_tangent(n) for n in range(2, 6)]


def test_q0_limit_and_homogeneity(grid):
    for rel in _numeric_rels(grid):
        assert q0_limit_holds(rel) and homogeneity_holds(rel), rel.spec.label()


def test_basis_reduction(small_grid):
    for rel in _numeric_rels(small_grid):
        assert basis_reduction_holds(rel), rel.spec.label()


def test_q0_truncation_of_product_is_cup():
    rng = random.Random(5)
    for rel in (relations_split(S(2, 1, 1, 2)), relations_tangent(3), relations_split(S(3, 1, 2))):
        n, r = rel.spec.n, rel.spec.r
        for _ in range(30):
            a = QClass(rel, {(rng.randint(0, n), rng.randint(0, r - 1), rng.randint(0, 1)): rng.randint(-3, 3)})
            b = QClass(rel, {(rng.randint(0, n), rng.randint(0, r - 1), 0): rng.randint(-3, 3)})
            assert (a * b).q0() == cup(a.q0(), b.q0())


def _sympy_nf(p: IntPoly, rel: QuantumRelations) -> dict:
    H, X, Q = sympy.symbols("h xi q")

    def conv(poly):
        return sum((c * H**a * X**b * Q**k for (a, b, k), c in poly.items()), sympy.Integer(0))

    f1, f2 = rel.relation_polys()
    # grevlex with q last makes h^(n+1) and xi^r the leading terms
    _, rem = sympy.reduced(conv(p), [conv(f1), conv(f2)], X, H, Q, order="grevlex")
    if rem == 0:
        return {}
    return {m: int(c) for m, c in sympy.Poly(rem, H, X, Q).terms()}


hxq_polys = st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2)),
                            st.integers(-20, 20), max_size=4).map(lambda d: IntPoly(HXQ, d))
rels = st.sampled_from([relations_split(S(2, 1, 1, 2)), relations_split(S(3, 1, 2)),
                        relations_tangent(2), relations_tangent(3), relations_split(S(1, 1, 1))])


@given(hxq_polys, rels, st.integers(0, 2**32))
@settings(max_examples=100)
def test_normal_form_order_independent(p, rel, seed):
    nf = q_normal_form(p, rel)
    assert reduce_quantum_randomly(p, rel, random.Random(seed)) == nf
    assert q_normal_form(nf.as_poly(), rel) == nf


@given(hxq_polys, rels)
@settings(max_examples=40)
def test_normal_form_matches_sympy_division(p, rel):
    # leading terms h^(n+1) and xi^r are coprime, so the remainder is unique
    assert q_normal_form(p, rel).coeffs == _sympy_nf(p, rel)


@pytest.mark.parametrize("spec,i,value", [(S(2, 1, 1, 2), 0, 1), (S(2, 1, 1, 2), 1, 2),
                                          (S(3, 1, 1, 1), 0, 1)])
def test_verify_516_examples(spec, i, value):
    assert verify_516(spec, i) and section_pairing(spec, i) == value


def test_verify_516_refuses():
    with pytest.raises(HypothesisError):
        verify_516(S(2, 1, 1, 2), 2)


def test_rendering():
    assert relations_split(S(2, 1, 1, 2)).format() == ["h^3 = (ξ - 2·h)·q^2", "(ξ - h)^2·(ξ - 2·h) = q^3"]
    assert relations_tangent(3).format() == ["h^4 = ξ·q^3", "ξ^3 - 4·h·ξ^2 + 6·h^2·ξ - 4·h^3 = 0"]
    assert relations_template_general(BundleSpec.tangent_bundle(2)).format() == [
        "h^3 = (ξ + a[1,0]·h)·q^2", "ξ^2 - 3·h·ξ + 3·h^2 = (b[0,0] + 1)·q^2"]


def test_json_form():
    data = relations_split(S(2, 1, 1, 2)).to_json()
    assert data["relations"][0] == {"lhs": [{"i": 3, "j": 0, "k": 0, "coeff": "1"}],
                                    "rhs": [{"i": 0, "j": 1, "k": 2, "coeff": "1"},
                                            {"i": 1, "j": 0, "k": 2, "coeff": "-2"}]}
    assert data["relations"][1]["rhs"] == [{"i": 0, "j": 0, "k": 3, "coeff": "1"}]
    holes = relations_template_general(BundleSpec.tangent_bundle(2)).to_json()
    assert {"i": 1, "j": 0, "k": 2, "coeff": None, "hole": "a[1,0]"} in holes["relations"][0]["rhs"]
