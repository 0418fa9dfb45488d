"""Hybrid model of (Fock-operator algebra) tensor O_A and its lemma checks.

Elements are finite sums of pairs (concrete truncated Fock operator, symbolic
Cuntz-Krieger element).  The operator factor is an exact integer matrix; the
symbolic factor stays in normal form because O_A admits no faithful
finite-dimensional representation, so identities involving it are exact
statements rather than approximations.

The distinguished element is

    W = sum_i R_i (x) s_i*

and the verified identities are: the quotient image of W (under R_i -> 1 (x)
t_i, L_i -> s_i (x) 1, compacts -> 0) equals the circle-generator transport
alpha_z; W*W expands as sum_{i,j} A[j][i] R_j R_j* (x) s_i s_i* plus the
vacuum term; [W*, W] is the vacuum projection; W commutes with every
L_k (x) 1 while [W*, L_k (x) 1] is P (x) s_k up to an explicit rank-one
defect when row k of A has zeros; and V_k = W*(L_k (x) 1) satisfies the
shift/isometry relations that present the Toeplitz algebra tensor O_A.

Comparisons run column by column over the shared valid domain, and every
discrepancy is reported as a structured defect tagged with the column word
and its length - a defect is a first-class output, not a failure of the
engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import ckalg
from .ckalg import CKElement, TensorElement, ck_is_zero, ck_unit
from .fock import FockBasis, FockOperator, _star_expr, build_creation, identity, vacuum_projection
from .sft import word_str


class BasisMismatchError(ValueError):
    pass


def _fingerprint(op: FockOperator):
    return tuple(sorted((j, tuple(sorted(col.items()))) for j, col in op.cols.items()))


class HybridElement:
    """Sum of (FockOperator, CKElement) pairs over a shared basis.

    ``terms`` is merged by operator-matrix fingerprint; ``prov`` keeps the
    unmerged generator-expression provenance used by the quotient map.
    """

    __slots__ = ("basis", "tag", "terms", "prov")

    def __init__(self, basis: FockBasis, terms, prov):
        self.basis = basis
        self.tag = ckalg.o_a(basis.matrix)
        self.terms = _merge_terms(terms)
        self.prov = tuple(prov)

    @property
    def valid_up_to(self) -> int:
        return min((op.valid_up_to for op, _ in self.terms), default=self.basis.m_max)

    def __add__(self, other):
        self._compatible(other)
        return HybridElement(self.basis, self.terms + other.terms, self.prov + other.prov)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "HybridElement":
        return HybridElement(
            self.basis,
            [(op, ck.scale(c)) for op, ck in self.terms],
            [(e, ck.scale(c)) for e, ck in self.prov],
        )

    def __mul__(self, other):
        return hybrid_mul(self, other)

    def adjoint(self) -> "HybridElement":
        return HybridElement(
            self.basis,
            [(op.adjoint(), ck.adjoint()) for op, ck in self.terms],
            [(_star_expr(e), ck.adjoint()) for e, ck in self.prov],
        )

    def _compatible(self, other: "HybridElement"):
        if self.basis is not other.basis:
            raise BasisMismatchError("hybrid elements live on different bases")


def _merge_terms(terms):
    merged = {}
    order = []
    for op, ck in terms:
        if not op.cols or ck.is_structurally_zero():
            continue
        fp = _fingerprint(op)
        if fp in merged:
            prev_op, prev_ck = merged[fp]
            merged[fp] = (prev_op, prev_ck + ck)
        else:
            merged[fp] = (op, ck)
            order.append(fp)
    return tuple(
        merged[fp] for fp in order if not merged[fp][1].is_structurally_zero()
    )


def hybrid(basis: FockBasis, pairs) -> HybridElement:
    return HybridElement(basis, list(pairs), [(op.expr, ck) for op, ck in pairs])


def hybrid_unit(basis: FockBasis) -> HybridElement:
    return hybrid(basis, [(identity(basis), ck_unit(ckalg.o_a(basis.matrix)))])


def hybrid_mul(x: HybridElement, y: HybridElement) -> HybridElement:
    x._compatible(y)
    terms = []
    prov = []
    for op1, ck1 in x.terms:
        for op2, ck2 in y.terms:
            terms.append((op1 @ op2, ck1 * ck2))
    for e1, ck1 in x.prov:
        for e2, ck2 in y.prov:
            prov.append((("prod", (e1, e2)), ck1 * ck2))
    return HybridElement(x.basis, terms, prov)


def hybrid_adjoint(x: HybridElement) -> HybridElement:
    return x.adjoint()


def build_W(basis: FockBasis) -> HybridElement:
    """W = sum_i R_i (x) s_i*."""
    tag = ckalg.o_a(basis.matrix)
    pairs = []
    for i in range(basis.matrix.n):
        s_i_star = CKElement(tag, {((), (i,)): Fraction(1)})
        pairs.append((build_creation(basis, "right", i + 1), s_i_star))
    return hybrid(basis, pairs)


def left_creation_tensor_unit(basis: FockBasis, k: int) -> HybridElement:
    """L_k (x) 1."""
    return hybrid(basis, [(build_creation(basis, "left", k), ck_unit(ckalg.o_a(basis.matrix)))])


def vacuum_tensor(basis: FockBasis, ck: CKElement) -> HybridElement:
    """P (x) ck for the vacuum projection P."""
    return hybrid(basis, [(vacuum_projection(basis), ck)])


def hybrid_zero(basis: FockBasis) -> HybridElement:
    return HybridElement(basis, [], [])


# ---------------------------------------------------------------------------
# defect scan


@dataclass(frozen=True)
class DefectColumn:
    column: str
    length: int
    entries: tuple  # ((row word string, rendered symbolic factor), ...)

    def to_json(self) -> dict:
        return {
            "column": self.column,
            "length": self.length,
            "entries": {w: s for w, s in self.entries},
        }


def hybrid_defects(x: HybridElement, y: HybridElement):
    """Columns of the shared valid domain where x and y differ; exact entries."""
    diff = x - y
    basis = diff.basis
    valid = min(x.valid_up_to, y.valid_up_to)
    defects = []
    for j, w in enumerate(basis.words):
        if len(w) > valid:
            break
        rows = {}
        for op, ck in diff.terms:
            for i, v in op.column(j).items():
                rows[i] = rows.get(i, ckalg.ck_zero(diff.tag)) + ck.scale(v)
        entries = []
        for i in sorted(rows):
            if not ck_is_zero(rows[i]):
                entries.append((word_str(basis.words[i]), str(rows[i])))
        if entries:
            defects.append(DefectColumn(word_str(w), len(w), tuple(entries)))
    return valid, tuple(defects)


# ---------------------------------------------------------------------------
# the quotient map (defined on generator-expression provenance only)


def _expr_quotient(expr, factors):
    head = expr[0]
    if head == "L":
        return ckalg.tensor_elem(factors, ((((expr[1],), ()), ((), ()))))
    if head == "L*":
        return ckalg.tensor_elem(factors, ((((), (expr[1],)), ((), ()))))
    if head == "R":
        return ckalg.tensor_elem(factors, ((((), ()), ((expr[1],), ()))))
    if head == "R*":
        return ckalg.tensor_elem(factors, ((((), ()), ((), (expr[1],)))))
    if head in ("P", "0"):
        return ckalg.tensor_zero(factors)
    if head == "I":
        return ckalg.tensor_unit(factors)
    if head == "sum":
        out = ckalg.tensor_zero(factors)
        for e in expr[1]:
            out = out + _expr_quotient(e, factors)
        return out
    if head == "prod":
        out = ckalg.tensor_unit(factors)
        for e in expr[1]:
            out = ckalg.tensor_multiply(out, _expr_quotient(e, factors))
        return out
    if head == "scale":
        return _expr_quotient(expr[2], factors).scale(expr[1])
    raise ValueError(f"expression {expr!r} was not built from generators")


def quotient_image(x: HybridElement) -> TensorElement:
    """Image in O_A (x) O_{A^T} (x) O_A under R_i -> 1 (x) t_i, L_i -> s_i (x) 1,
    vacuum projection -> 0, with the symbolic factor carried to the third leg.

    Only defined for elements whose operator factors were assembled through
    the generator API (raw matrices carry no provenance).
    """
    a = x.basis.matrix
    pair_factors = (ckalg.o_a(a), ckalg.o_at(a))
    triple = ckalg.triple_factors(a)
    out = {}
    for e, ck in x.prov:
        q = _expr_quotient(e, pair_factors)
        for keys, c in q.terms.items():
            for (mu, nu), c2 in ck.terms.items():
                key = keys + ((mu, nu),)
                out[key] = out.get(key, Fraction(0)) + c * c2
    return TensorElement(triple, out)


# ---------------------------------------------------------------------------
# lemma reports


@dataclass(frozen=True)
class LemmaItem:
    item_id: str
    holds: bool
    defects: tuple = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.item_id,
            "holds": self.holds,
            "defects": [d.to_json() for d in self.defects],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    m_max: int
    matrix: dict
    items: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(item.holds for item in self.items)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "items": [item.to_json() for item in self.items],
            "m_max": self.m_max,
            "matrix": self.matrix,
        }


def _hybrid_item(item_id: str, lhs: HybridElement, rhs: HybridElement, note: str = "") -> LemmaItem:
    _valid, defects = hybrid_defects(lhs, rhs)
    return LemmaItem(item_id, not defects, defects, note)


def _symbolic_item(item_id: str, lhs: TensorElement, rhs: TensorElement, note: str = "") -> LemmaItem:
    if ckalg.tensor_equal(lhs, rhs):
        return LemmaItem(item_id, True, (), note)
    diff = lhs - rhs
    return LemmaItem(item_id, False, (), (note + "; " if note else "") + f"difference: {diff}")


def _w_w_expansion(basis: FockBasis) -> HybridElement:
    """sum_{i,j} A[j][i] R_j R_j* (x) s_i s_i* + P (x) 1."""
    a = basis.matrix
    tag = ckalg.o_a(a)
    pairs = []
    for j in range(a.n):
        r = build_creation(basis, "right", j + 1)
        ck = CKElement(tag, {((i,), (i,)): Fraction(1) for i in range(a.n) if a.entry(j, i)})
        pairs.append((r @ r.adjoint(), ck))
    pairs.append((vacuum_projection(basis), ck_unit(tag)))
    return hybrid(basis, pairs)


def verify_lemma_W(basis: FockBasis) -> LemmaReport:
    """The six identities for W = sum_i R_i (x) s_i*.

    Items ii)-v) hold exactly for every valid matrix; item vi) compares
    [W*, L_k (x) 1] against P (x) s_k and, whenever A[k][i] = 0, reports the
    exact rank-one defect -|xi_k><xi_i| (x) s_i on the length-1 column i.
    """
    a = basis.matrix
    w = build_W(basis)
    w_star = w.adjoint()
    p1 = vacuum_tensor(basis, ck_unit(ckalg.o_a(a)))
    items = [
        _symbolic_item("i", quotient_image(w), ckalg.alpha_z(a)),
        _hybrid_item("ii", hybrid_mul(w_star, w), _w_w_expansion(basis)),
        _hybrid_item("iii", hybrid_mul(w_star, w) - hybrid_mul(w, w_star), p1),
        _hybrid_item("iv", hybrid_mul(p1, w), hybrid_zero(basis)),
    ]
    for k in range(1, a.n + 1):
        lk = left_creation_tensor_unit(basis, k)
        items.append(
            _hybrid_item(
                f"v(k={k})",
                hybrid_mul(w, lk) - hybrid_mul(lk, w),
                hybrid_zero(basis),
            )
        )
    for k in range(1, a.n + 1):
        lk = left_creation_tensor_unit(basis, k)
        s_k = ckalg.ck_generator(ckalg.o_a(a), k)
        items.append(
            _hybrid_item(
                f"vi(k={k})",
                hybrid_mul(w_star, lk) - hybrid_mul(lk, w_star),
                vacuum_tensor(basis, s_k),
            )
        )
    return LemmaReport("W", basis.m_max, a.to_json(), tuple(items))


def _generator_triple(a, k: int) -> TensorElement:
    """s_k (x) 1 (x) 1."""
    return ckalg.tensor_elem(ckalg.triple_factors(a), ((((k - 1,), ()), ((), ()), ((), ()))))


def verify_lemma_V(basis: FockBasis) -> LemmaReport:
    """The identities for V_k = W* (L_k (x) 1).

    Item i compares the quotient image of V_k with alpha_z(A)* (s_k (x) 1 (x) 1):
    the quotient of W* is the adjoint of the circle transport, so V_k lands on
    the conjugate-generator transport.
    """
    a = basis.matrix
    w = build_W(basis)
    w_star = w.adjoint()
    vs = [hybrid_mul(w_star, left_creation_tensor_unit(basis, k)) for k in range(1, a.n + 1)]
    alpha_conj = ckalg.tensor_adjoint(ckalg.alpha_z(a))
    items = []
    for k in range(1, a.n + 1):
        items.append(
            _symbolic_item(
                f"i(k={k})",
                quotient_image(vs[k - 1]),
                ckalg.tensor_multiply(alpha_conj, _generator_triple(a, k)),
                note="compared against the adjoint circle transport",
            )
        )
    sum_vv = hybrid_zero(basis)
    for v in vs:
        sum_vv = sum_vv + hybrid_mul(v, v.adjoint())
    items.append(_hybrid_item("ii", sum_vv, hybrid_mul(w_star, w)))
    for k in range(1, a.n + 1):
        v_k = vs[k - 1]
        rhs = hybrid_zero(basis)
        for j in range(1, a.n + 1):
            if a.entry(k - 1, j - 1):
                v_j = vs[j - 1]
                rhs = rhs + hybrid_mul(v_j, v_j.adjoint())
        items.append(_hybrid_item(f"iii(k={k})", hybrid_mul(v_k.adjoint(), v_k), rhs))
    for k in range(1, a.n + 1):
        v_k = vs[k - 1]
        items.append(
            _hybrid_item(
                f"iv(k={k})", hybrid_mul(w, v_k) - hybrid_mul(v_k, w), hybrid_zero(basis)
            )
        )
    for k in range(1, a.n + 1):
        v_k = vs[k - 1]
        items.append(
            _hybrid_item(
                f"v(k={k})",
                hybrid_mul(w_star, v_k) - hybrid_mul(v_k, w_star),
                hybrid_zero(basis),
            )
        )
    return LemmaReport("V", basis.m_max, a.to_json(), tuple(items))


def verify_toeplitz_untwist(basis: FockBasis) -> LemmaReport:
    """Relations presenting the Toeplitz algebra tensor O_A on {W, V_k}.

    W*W acts as the unit on every V_k and is an idempotent; the commutator
    W*W - WW* is exactly the vacuum term P (x) 1; and the V_k satisfy the
    defining range relations relative to that unit.
    """
    a = basis.matrix
    w = build_W(basis)
    w_star = w.adjoint()
    unit = hybrid_mul(w_star, w)
    vs = [hybrid_mul(w_star, left_creation_tensor_unit(basis, k)) for k in range(1, a.n + 1)]
    items = []
    for k in range(1, a.n + 1):
        items.append(_hybrid_item(f"unit(k={k})", hybrid_mul(unit, vs[k - 1]), vs[k - 1]))
    for k in range(1, a.n + 1):
        rhs = hybrid_zero(basis)
        for j in range(1, a.n + 1):
            if a.entry(k - 1, j - 1):
                rhs = rhs + hybrid_mul(vs[j - 1], vs[j - 1].adjoint())
        items.append(_hybrid_item(f"range(k={k})", hybrid_mul(vs[k - 1].adjoint(), vs[k - 1]), rhs))
    items.append(
        _hybrid_item(
            "shift",
            unit - hybrid_mul(w, w_star),
            vacuum_tensor(basis, ck_unit(ckalg.o_a(a))),
        )
    )
    items.append(_hybrid_item("idempotent", hybrid_mul(unit, unit), unit))
    return LemmaReport("toeplitz", basis.m_max, a.to_json(), tuple(items))


def verify_lemmas(basis: FockBasis, which: str = "W"):
    if which == "W":
        return verify_lemma_W(basis)
    if which == "V":
        return verify_lemma_V(basis)
    if which == "toeplitz":
        return verify_toeplitz_untwist(basis)
    raise ValueError(f"unknown lemma selector {which!r}")
