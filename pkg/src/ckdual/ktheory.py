"""K-theory and K-homology of the Cuntz-Krieger algebras O_A and O_{A^T}.

For an n x n defining matrix A the four groups of O_A are presented by the
integer matrices 1 - A^T and 1 - A:

    K_0(O_A)  = Z^n / (1 - A^T) Z^n      K_1(O_A)  = ker(1 - A^T)
    K^0(O_A)  = ker(1 - A)               K^1(O_A)  = Z^n / (1 - A) Z^n

and the groups of O_{A^T} are obtained by swapping A and A^T.  The duality
report compares presentations: K_0(O_A) and K^1(O_{A^T}) are presented by the
same matrix 1 - A^T (likewise K_1(O_A) and K^0(O_{A^T}) share the kernel of
1 - A^T), while coker(1 - A) and coker(1 - A^T) are only abstractly
isomorphic - equal invariant factors, no preferred map - so the report never
identifies them entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sft import ZeroOneMatrix
from .zlinalg import FGAbelianGroup, IntMatrix, cokernel, kernel_basis


def one_minus(a: ZeroOneMatrix) -> IntMatrix:
    n = a.n
    return IntMatrix.from_rows(
        [[(1 if i == j else 0) - a.entry(i, j) for j in range(n)] for i in range(n)]
    )


def one_minus_transpose(a: ZeroOneMatrix) -> IntMatrix:
    n = a.n
    return IntMatrix.from_rows(
        [[(1 if i == j else 0) - a.entry(j, i) for j in range(n)] for i in range(n)]
    )


def _free(rank: int) -> FGAbelianGroup:
    return FGAbelianGroup(rank, ())


@dataclass(frozen=True)
class AlgebraKTheory:
    k0: FGAbelianGroup
    k1: FGAbelianGroup
    khom0: FGAbelianGroup
    khom1: FGAbelianGroup

    def to_json(self) -> dict:
        return {
            "K0": self.k0.to_json(),
            "K1": self.k1.to_json(),
            "K^0": self.khom0.to_json(),
            "K^1": self.khom1.to_json(),
        }


@dataclass(frozen=True)
class KTheoryReport:
    matrix: ZeroOneMatrix
    o_a: AlgebraKTheory
    o_at: AlgebraKTheory

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "O_A": self.o_a.to_json(),
            "O_AT": self.o_at.to_json(),
        }


@dataclass(frozen=True)
class DualityReport:
    presentation_match_K0_Khom1: bool
    presentation_match_K1_Khom0: bool
    abstract_iso_cokernels: bool
    invariant_factors_A: tuple
    invariant_factors_AT: tuple

    def to_json(self) -> dict:
        return {
            "presentation_match_K0_Khom1": self.presentation_match_K0_Khom1,
            "presentation_match_K1_Khom0": self.presentation_match_K1_Khom0,
            "abstract_iso_cokernels": self.abstract_iso_cokernels,
            "invariant_factors_A": list(self.invariant_factors_A),
            "invariant_factors_AT": list(self.invariant_factors_AT),
        }


def _algebra_groups(a: ZeroOneMatrix) -> AlgebraKTheory:
    n = a.n
    pres_t = one_minus_transpose(a)
    pres = one_minus(a)
    return AlgebraKTheory(
        k0=cokernel(pres_t, n),
        k1=_free(len(kernel_basis(pres_t))),
        khom0=_free(len(kernel_basis(pres))),
        khom1=cokernel(pres, n),
    )


def k_groups(a: ZeroOneMatrix) -> KTheoryReport:
    """All eight K/K-homology groups of O_A and O_{A^T}."""
    return KTheoryReport(matrix=a, o_a=_algebra_groups(a), o_at=_algebra_groups(a.transpose()))


def bowen_franks(a: ZeroOneMatrix) -> FGAbelianGroup:
    """The Bowen-Franks group coker(1 - A)."""
    return cokernel(one_minus(a), a.n)


def duality_report(a: ZeroOneMatrix) -> DualityReport:
    """Presentation-level duality checks plus the abstract cokernel comparison."""
    # K_0(O_A) and K^1(O_{A^T}) are both quotients by 1 - A^T; K_1(O_A) and
    # K^0(O_{A^T}) are both kernels of it.  Compare the presenting matrices
    # entrywise rather than the abstract groups.
    k0_pres = one_minus_transpose(a)
    khom1_at_pres = one_minus(a.transpose())
    k1_pres = one_minus_transpose(a)
    khom0_at_pres = one_minus(a.transpose())
    coker_a = cokernel(one_minus(a), a.n)
    coker_at = cokernel(one_minus_transpose(a), a.n)
    return DualityReport(
        presentation_match_K0_Khom1=(k0_pres.entries == khom1_at_pres.entries),
        presentation_match_K1_Khom0=(k1_pres.entries == khom0_at_pres.entries),
        abstract_iso_cokernels=(
            coker_a.free_rank == coker_at.free_rank and coker_a.torsion == coker_at.torsion
        ),
        invariant_factors_A=coker_a.torsion,
        invariant_factors_AT=coker_at.torsion,
    )


def report_json(a: ZeroOneMatrix, include_duality: bool = False) -> dict:
    out = k_groups(a).to_json()
    if include_duality:
        out["duality"] = duality_report(a).to_json()
    return out
