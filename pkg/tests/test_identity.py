import itertools

import pytest

from quadalg.closure import span_closure
from quadalg.field import Field, FieldElement
from quadalg.identity import (CaseTag, IdentitySpec, Scope, check_on_algebra,
                              check_on_semigroup, classify)
from quadalg.representation import fixture_generators

GF2 = Field.prime(2)
GF3 = Field.prime(3)
GF5 = Field.prime(5)
GF7 = Field.prime(7)
GF4 = Field.gf4()


def spec(f, a, b, scope):
    return IdentitySpec(f.element(a), f.element(b), scope)


S = Scope.SEMIGROUP
A = Scope.ALGEBRA


@pytest.mark.parametrize("field,a,b,scope,tag", [
    (GF7, 0, 5, S, CaseTag.INCONSISTENT),       # 5^2 = 4 != 5
    (GF5, 2, -1, S, CaseTag.UNIPOTENT),
    (GF2, 1, 1, S, CaseTag.GF4_COLLAPSE),
    (GF4, 1, 1, S, CaseTag.GF4_COLLAPSE),
    (GF2, 1, 0, A, CaseTag.IDEMPOTENT_ALGEBRA),
    (GF5, 1, 0, A, CaseTag.INCONSISTENT),       # scaling forces GF(2)
    (GF4, 1, 0, A, CaseTag.INCONSISTENT),       # w^2 != w
    (GF3, 0, 0, A, CaseTag.NIL_SQUARE),
    (GF2, 0, 0, A, CaseTag.NIL_SQUARE_CHAR2),
    (GF4, 0, 0, A, CaseTag.NIL_SQUARE_CHAR2),
    (GF3, 0, 0, S, CaseTag.NIL_SQUARE),
    (GF3, 0, 1, S, CaseTag.INVOLUTION),
    (GF2, 0, 1, S, CaseTag.INVOLUTION),
    (GF5, 1, 0, S, CaseTag.IDEMPOTENT_SEMIGROUP),
    (GF3, 2, 2, S, CaseTag.UNIPOTENT),          # -1 = 2 in GF(3)
    (GF5, 4, 4, S, CaseTag.INCONSISTENT),       # a = -1 branch needs char 3
    (GF7, 3, -1, S, CaseTag.INCONSISTENT),      # a^2 - a - 2 = 4 != 0
    (GF5, 2, 3, S, CaseTag.INCONSISTENT),       # b != -1
    (GF5, 0, 1, A, CaseTag.INCONSISTENT),       # zero element kills b != 0
    (GF3, 2, -1, A, CaseTag.INCONSISTENT),
])
def test_classify_cases(field, a, b, scope, tag):
    result = classify(spec(field, a, b, scope))
    assert result.tag is tag
    assert result.trace  # every verdict carries its constraint path


def test_classifier_trace_flags_the_gf2_tightening():
    result = classify(spec(GF2, 1, 0, A))
    assert any("characteristic 2 alone" in t for t in result.trace)


def admissible_pairs(field):
    out = set()
    for a in range(field.order):
        for b in range(field.order):
            sp = IdentitySpec(FieldElement(field, a), FieldElement(field, b), S)
            if classify(sp).consistent:
                out.add((a, b))
    return out


def test_semigroup_sweep_gf3_and_gf5():
    assert admissible_pairs(GF3) == {(0, 0), (0, 1), (1, 0), (2, GF3.from_int(-1))}
    assert admissible_pairs(GF5) == {(0, 0), (0, 1), (1, 0), (2, GF5.from_int(-1))}


def test_semigroup_sweep_char2_includes_gf4_collapse():
    assert admissible_pairs(GF2) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert admissible_pairs(GF4) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_check_on_semigroup_fixtures_hold():
    rep = check_on_semigroup(fixture_generators("f"), spec(GF5, 2, -1, S))
    assert rep.holds and rep.elements_checked == 125
    rep = check_on_semigroup(fixture_generators("b"), spec(GF5, 0, 1, S))
    assert rep.holds and rep.elements_checked == 4
    rep = check_on_semigroup(fixture_generators("e"), spec(GF5, 1, 0, S))
    assert rep.holds and rep.elements_checked == 6


def test_check_on_semigroup_violation_witness():
    gens = fixture_generators("b")
    rep = check_on_semigroup(gens, spec(GF5, 1, 0, S))
    assert not rep.holds
    assert rep.witness == gens.gens[0]  # x itself: x^2 = 1 != x
    assert rep.verify_witness(spec(GF5, 1, 0, S))


def test_check_on_algebra_fixtures_hold():
    basis = span_closure(fixture_generators("a"))
    rep = check_on_algebra(basis, spec(GF3, 0, 0, A))
    assert rep.holds and rep.elements_checked == 27 and rep.method == "exhaustive"
    basis = span_closure(fixture_generators("d"))
    rep = check_on_algebra(basis, spec(GF2, 1, 0, A))
    assert rep.holds and rep.elements_checked == 128


def test_scope_separation_on_idempotent_semigroup_fixture():
    # X^2 = X holds on S but not on the span: scaling any idempotent fails
    gens = fixture_generators("e")
    assert check_on_semigroup(gens, spec(GF5, 1, 0, S)).holds
    basis = span_closure(gens)
    rep = check_on_algebra(basis, spec(GF5, 1, 0, A))
    assert not rep.holds
    assert list(rep.witness_coords) == [0, 0, 0, 0, 0, 2]
    assert rep.elements_checked == 3  # third vector in lexicographic order
    assert rep.verify_witness(spec(GF5, 1, 0, A))


def test_scope_separation_on_unipotent_fixture():
    gens = fixture_generators("f")
    assert check_on_semigroup(gens, spec(GF5, 2, -1, S)).holds
    basis = span_closure(gens)
    rep = check_on_algebra(basis, spec(GF5, 2, -1, A))
    assert not rep.holds
    # the zero element is already a witness when b != 0
    assert rep.elements_checked == 1
    assert rep.witness.is_zero()
    assert rep.verify_witness(spec(GF5, 2, -1, A))


@pytest.mark.parametrize("name,a,b", [
    ("a", 0, 0), ("b", 0, 1), ("c", 1, 0), ("d", 1, 0),
    ("e", 1, 0), ("f", 2, -1), ("g", 2, -1),
])
def test_exhaustive_and_polarized_agree(name, a, b):
    gens = fixture_generators(name)
    f = gens.field
    basis = span_closure(gens)
    sp = spec(f, a, b, A)
    assert f.order ** basis.dim <= 10 ** 5
    exhaustive = check_on_algebra(basis, sp, cap=10 ** 7)
    polarized = check_on_algebra(basis, sp, cap=0)
    assert exhaustive.method == "exhaustive"
    assert polarized.method == "polarized"
    assert exhaustive.holds == polarized.holds
    if not polarized.holds:
        assert polarized.verify_witness(sp)


def test_polarized_rejects_scaling_violation():
    # idempotent matrices over GF(5): every basis element idempotent and
    # commuting, but 2*x is not idempotent
    basis = span_closure(fixture_generators("e"))
    rep = check_on_algebra(basis, spec(GF5, 1, 0, A), cap=0)
    assert not rep.holds and rep.method == "polarized"
    assert rep.verify_witness(spec(GF5, 1, 0, A))


def test_inconsistent_pairs_collapse_in_the_oracle():
    # whenever the classifier rejects (a, b), the truncated relation ideal
    # degenerates every generator: it falls into the scalar line spanned
    # by the unit word (or vanishes outright when there is no unit word).
    # Pairs on a + b = 1 admit the one-dimensional model x = y = 1, so
    # "collapse to a scalar" is the strongest true statement.
    import numpy as np

    from quadalg.quotient import _oracle_reduce

    for field in (GF3, GF5):
        for a, b, scope in itertools.product(range(field.order),
                                             range(field.order), (S, A)):
            sp = spec(field, a, b, scope)
            if classify(sp).consistent:
                continue
            reducer, words = _oracle_reduce(sp, 2, 6, None)
            index = {w: i for i, w in enumerate(words)}
            if () in index:
                unit = np.zeros(len(words), dtype=np.int64)
                unit[index[()]] = 1
                reducer.insert(unit)
            for g in range(2):
                e = np.zeros(len(words), dtype=np.int64)
                e[index[(g,)]] = 1
                assert reducer.insert(e) is None, (field, a, b, scope, g)


def test_scope_mismatch_raises():
    gens = fixture_generators("b")
    with pytest.raises(ValueError):
        check_on_semigroup(gens, spec(GF5, 0, 1, A))
    with pytest.raises(ValueError):
        check_on_algebra(span_closure(gens), spec(GF5, 0, 1, S))
    with pytest.raises(ValueError):
        check_on_semigroup(gens, spec(GF3, 0, 1, S))
    with pytest.raises(ValueError):
        IdentitySpec(GF3.element(1), GF5.element(1), S)
