import json

from ckdual import ckalg
from ckdual.fock import (
    FockBasis,
    build_creation,
    ck_action_on_word,
    commutator,
    identity,
    orbit_spans,
    pair_action_on_word,
    rotation_operator,
    vacuum_projection,
    verify_creation_relations,
    verify_relation,
    zero,
)

from helpers import FIB, ones, relation_family


def basis(a, m=5):
    return FockBasis(a, m)


def test_basis_order_and_index():
    b = basis(FIB, 3)
    assert b.words[0] == ()
    assert b.words[1:3] == [(0,), (1,)]
    lengths = [len(w) for w in b.words]
    assert lengths == sorted(lengths)
    assert all(b.index[w] == i for i, w in enumerate(b.words))


def test_creation_vacuum_rule():
    b = basis(ones(2))
    for side in ("left", "right"):
        op = build_creation(b, side, 1)
        assert op.column(0) == {b.index[(0,)]: 1}


def test_creation_examples():
    b = basis(FIB)
    l2 = build_creation(b, "left", 2)
    assert l2.column(b.index[(1,)]) == {}  # A[2][2] = 0
    b2 = basis(ones(2))
    r2 = build_creation(b2, "right", 2)
    assert r2.column(b2.index[(0,)]) == {b2.index[(0, 1)]: 1}


def test_adjoint_examples():
    b = basis(ones(2))
    l1 = build_creation(b, "left", 1)
    assert l1.adjoint().column(b.index[(0,)]) == {0: 1}  # L1* xi_1 = vacuum
    assert l1.adjoint().column(b.index[(1, 0)]) == {}  # first letter is 2
    r2 = build_creation(b, "right", 2)
    assert r2.adjoint().column(b.index[(0, 1)]) == {b.index[(0,)]: 1}


def test_adjoint_is_delta_not_matrix_coefficient():
    # the adjoint is the transpose, so (L_2)* xi_{21} = xi_1 even though
    # prepending 2 to 1 is admissible both ways in the Fibonacci graph
    b = basis(FIB)
    l1 = build_creation(b, "left", 1)
    # adjoint pairing: column w maps to w[1:] exactly when w starts with 1
    for j, w in enumerate(b.words):
        col = l1.adjoint().column(j)
        if w and w[0] == 0:
            assert col == {b.index[w[1:]]: 1}
        else:
            assert col == {}


def test_valid_up_to_bookkeeping():
    b = basis(ones(2), 4)
    l1 = build_creation(b, "left", 1)
    assert l1.valid_up_to == 3  # creation loses the top layer
    assert l1.adjoint().valid_up_to == 4  # annihilation is truncation-safe
    prod = l1.adjoint() @ l1
    assert prod.valid_up_to == 3
    assert (prod @ l1).valid_up_to == 2
    assert vacuum_projection(b).valid_up_to == 4
    assert (l1 + l1.adjoint()).valid_up_to == 3
    assert l1.adjoint().adjoint().valid_up_to == 3


def test_operator_entries_are_partial_permutations():
    for a in (ones(2), FIB, ones(3)):
        b = basis(a, 4)
        for side in ("left", "right"):
            for k in range(1, a.n + 1):
                op = build_creation(b, side, k)
                for col in op.cols.values():
                    assert len(col) == 1
                    assert set(col.values()) == {1}
                adj = op.adjoint()
                for col in adj.cols.values():
                    assert len(col) == 1
                    assert set(col.values()) == {1}


def test_vacuum_projection():
    b = basis(ones(2))
    p = vacuum_projection(b)
    assert p.column(0) == {0: 1}
    assert p.column(1) == {}
    assert (p @ p).cols == p.cols


def test_relations_i_to_iii_hold_on_family():
    for a in relation_family():
        b = FockBasis(a, 4)
        for which in ("i", "ii", "iii"):
            for rep in verify_creation_relations(b, which):
                assert rep.holds, (a, rep.relation, rep.defects)


def test_relation_iv_defect_structure():
    for a in relation_family():
        b = FockBasis(a, 4)
        p = vacuum_projection(b)
        for k in range(a.n):
            lk = build_creation(b, "left", k + 1)
            for l in range(a.n):
                rl = build_creation(b, "right", l + 1)
                lhs = commutator(lk.adjoint(), rl)
                rhs = p if k == l else zero(b)
                rep = verify_relation("iv", lhs, rhs)
                if a.entry(k, l):
                    assert rep.holds
                else:
                    # brute-force oracle: the defect is (A[k][l]-1)|xi_l><xi_k|
                    expected = {b.index[(k,)]: {b.index[(l,)]: a.entry(k, l) - 1}}
                    diff = lhs - rhs
                    got = {
                        j: col
                        for j, col in diff.cols.items()
                        if len(b.words[j]) <= rep.valid_up_to
                    }
                    assert got == expected
                    assert not rep.holds
                    assert len(rep.defects) == 1
                    d = rep.defects[0]
                    assert d.length == 1


def test_relation_report_json():
    b = basis(FIB)
    rep = next(
        r for r in verify_creation_relations(b, "iv") if r.relation == "iv(k=2,l=2)"
    )
    out = rep.to_json()
    assert out == {
        "relation": "iv(k=2,l=2)",
        "holds": False,
        "defects": [{"column": "2", "delta": {"2": -1}}],
    }
    assert json.loads(json.dumps(out)) == out


def test_truncation_stability_of_relations():
    for a in (ones(2), FIB):
        small = verify_creation_relations(FockBasis(a, 4))
        large = verify_creation_relations(FockBasis(a, 6))
        for rs, rl in zip(small, large):
            assert rs.relation == rl.relation
            assert rs.holds == rl.holds
            # defects agree on the smaller shared valid domain
            shared = {d.column: d.delta for d in rl.defects if d.length <= rs.valid_up_to}
            assert {d.column: d.delta for d in rs.defects} == shared


def test_orbit_spans_family():
    for a in relation_family():
        assert orbit_spans(FockBasis(a, 4))


def test_single_letter_reachability():
    b = basis(ones(2), 2)
    l1 = build_creation(b, "left", 1)
    assert l1.column(0) == {b.index[(0,)]: 1}


def test_rotation_operator():
    for a in relation_family():
        b = FockBasis(a, 5)
        x, rep = rotation_operator(b)
        assert rep.vacuum_eigenvalue == a.n
        assert rep.holds
        for s in rep.sectors:
            assert s.index == 0
        # sector 1: X xi_j = A[j][j] xi_j
        ker1 = sum(1 for j in range(a.n) if not a.entry(j, j))
        assert rep.sectors[0].dim_ker == ker1


def test_rotation_rotates_words():
    b = basis(FIB, 4)
    x, _rep = rotation_operator(b)
    w = (0, 1)  # 12; rotation gives 21, allowed since A[2][1] = 1
    assert x.column(b.index[w]) == {b.index[(1, 0)]: 1}
    w = (1, 0)  # 21 -> 12 needs A[1][2] = 1
    assert x.column(b.index[w]) == {b.index[(0, 1)]: 1}


def test_index_report_json_roundtrip():
    b = basis(FIB)
    _x, rep = rotation_operator(b)
    out = rep.to_json()
    assert json.loads(json.dumps(out)) == out
    assert out["vacuum_eigenvalue"] == 2
    assert all(s["index"] == 0 for s in out["sectors"])


def test_word_model_matches_truncated_matrices():
    # the untruncated word model and the truncated matrices agree wherever
    # the matrix columns are valid
    a = FIB
    b = basis(a, 5)
    tag = ckalg.o_a(a)
    elems = [
        ckalg.ck_monomial(tag, (0, 1), (0,)),
        ckalg.ck_monomial(tag, (), (1, 0)),
        ckalg.ck_monomial(tag, (1,), (1,)),
    ]
    for x in elems:
        # build L_mu L_nu* from atoms: L_mu = L_{mu_1} ... L_{mu_m}
        op = zero(b)
        for (mu, nu), c in x.terms.items():
            term = identity(b)
            for k0 in mu:
                term = term @ build_creation(b, "left", k0 + 1)
            adj = identity(b)
            for k0 in nu:
                adj = adj @ build_creation(b, "left", k0 + 1)
            term = term @ adj.adjoint()
            op = op + term.scale(int(c))
        for j, w in enumerate(b.words):
            if len(w) > op.valid_up_to:
                continue
            expected = {
                b.index[img]: int(coeff)
                for img, coeff in ck_action_on_word(x, w).items()
                if len(img) <= b.m_max
            }
            assert op.column(j) == expected


def test_pair_action_on_word():
    a = FIB
    assert pair_action_on_word(a, (0,), (), (1,)) == (0, 1)
    assert pair_action_on_word(a, (1,), (), (1,)) is None  # A[2][2] = 0
    assert pair_action_on_word(a, (), (0,), (0, 1)) == (1,)
    assert pair_action_on_word(a, (), (0,), (1, 0)) is None
