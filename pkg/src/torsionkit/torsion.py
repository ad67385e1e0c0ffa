"""Torsion invariants of based complexes.

field_torsion implements the alternating product of change-of-basis
determinants for an acyclic complex over Q(zeta_n): in each degree the
square matrix expresses (q_i, lifted q_{i+1}) in the given basis, where q_i
is a basis of the image of the incoming differential, and the determinant
enters with exponent (-1)^(i-1).  The value is independent of how the q_i
are chosen; elimination is fraction-free (cross-multiplication) with a
single field inversion at the end.

reidemeister_torsion composes base change, field torsion and reduction to
the unit coset; torsion_of_map measures a quasi-isomorphism through its
mapping cone; fingerprints collect the classes over a family of
representations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclofield import (
    CycloNum,
    Representation,
    TorsionClass,
    cyclo_inv,
    cyclo_mul,
    cyclo_one,
    cyclo_zero,
    torsion_class,
    unit_subgroup,
)
from .chaincomplex import (
    BasedComplex,
    ChainMap,
    FieldComplex,
    ShapeMismatchError,
    base_change,
    mapping_cone,
)


class NotAcyclicError(ValueError):
    """The complex has homology at ``degree``; ``defect`` is the rank gap."""

    def __init__(self, degree: int, defect: int):
        self.degree = degree
        self.defect = defect
        super().__init__(f"not acyclic at degree {degree} (rank defect {defect})")


def _column_scan(cols: int, strategy: str) -> list[int]:
    if strategy == "first":
        return list(range(cols))
    if strategy == "last":
        return list(range(cols - 1, -1, -1))
    raise ValueError(f"unknown pivot strategy {strategy!r}")


def _pivot_columns(mat, rows: int, cols: int, scan: list[int]):
    """Column indices (in scan order) forming a basis of the column space.

    Fraction-free row elimination: rows are rescaled by pivots, which does
    not change which columns are independent.
    """
    if rows == 0 or cols == 0:
        return []
    work = [list(row) for row in mat]
    used_rows: list[int] = []
    pivots: list[int] = []
    free = list(range(rows))
    for j in scan:
        pr = None
        for r in free:
            if work[r][j]:
                pr = r
                break
        if pr is None:
            continue
        pivots.append(j)
        used_rows.append(pr)
        free = [r for r in free if r != pr]
        p = work[pr][j]
        for r in free:
            f = work[r][j]
            if f:
                wr, wp = work[r], work[pr]
                work[r] = [p * wr[c] - f * wp[c] for c in range(cols)]
        if not free:
            break
    return pivots


def _ff_det(rows_mat, n: int) -> tuple[CycloNum, CycloNum]:
    """Determinant as a (numerator, denominator) pair, division-free."""
    size = len(rows_mat)
    one = cyclo_one(n)
    if size == 0:
        return one, one
    work = [list(r) for r in rows_mat]
    sign = 1
    scale = one
    for k in range(size):
        pr = None
        for r in range(k, size):
            if work[r][k]:
                pr = r
                break
        if pr is None:
            return cyclo_zero(n), one
        if pr != k:
            work[k], work[pr] = work[pr], work[k]
            sign = -sign
        p = work[k][k]
        for r in range(k + 1, size):
            f = work[r][k]
            if f:
                wr, wk = work[r], work[k]
                work[r] = [p * wr[c] - f * wk[c] for c in range(k + 1, size)]
                work[r] = [cyclo_zero(n)] * (k + 1) + work[r]
                scale = cyclo_mul(scale, p)
    num = one
    for k in range(size):
        num = cyclo_mul(num, work[k][k])
    if sign < 0:
        num = -num
    return num, scale


def field_torsion(fc: FieldComplex, pivot_strategy: str = "first") -> CycloNum:
    """Torsion of an acyclic field complex with respect to its basis.

    Raises NotAcyclicError (with the offending degree and rank defect) when
    the rank condition dim C_i = rank d_i + rank d_{i-1} fails somewhere.
    """
    n = fc.modulus
    lo, hi = fc.min_degree, fc.max_degree
    pivots: dict[int, list[int]] = {}
    for i in range(lo - 1, hi + 1):
        rows, cols = fc.rank(i + 1), fc.rank(i)
        pivots[i] = _pivot_columns(
            fc.diff(i), rows, cols, _column_scan(cols, pivot_strategy)
        )
    for i in range(lo, hi + 1):
        defect = fc.rank(i) - len(pivots[i]) - len(pivots[i - 1])
        if defect != 0:
            raise NotAcyclicError(i, defect)
    num_acc, den_acc = cyclo_one(n), cyclo_one(n)
    zero, one = cyclo_zero(n), cyclo_one(n)
    for i in range(lo, hi + 1):
        dim = fc.rank(i)
        if dim == 0:
            continue
        prev = fc.diff(i - 1)
        columns = [[prev[r][j] for r in range(dim)] for j in pivots[i - 1]]
        for j in pivots[i]:
            columns.append([one if r == j else zero for r in range(dim)])
        mat = [[columns[c][r] for c in range(dim)] for r in range(dim)]
        num, den = _ff_det(mat, n)
        if not num:
            raise AssertionError("combined basis is singular on an acyclic complex")
        if i % 2:  # exponent (-1)^(i-1) is +1 in odd degrees
            num_acc = cyclo_mul(num_acc, num)
            den_acc = cyclo_mul(den_acc, den)
        else:
            num_acc = cyclo_mul(num_acc, den)
            den_acc = cyclo_mul(den_acc, num)
    return cyclo_mul(num_acc, cyclo_inv(den_acc))


def reidemeister_torsion(c: BasedComplex, rep: Representation) -> TorsionClass:
    """Torsion class of C tensored along rho, in Q(zeta_n)^x / +-rho(G)."""
    value = field_torsion(base_change(c, rep))
    return torsion_class(value, unit_subgroup(rep))


def torsion_of_map(f: ChainMap, rep: Representation) -> TorsionClass:
    """Torsion of a quasi-isomorphism: the torsion of its mapping cone."""
    return reidemeister_torsion(mapping_cone(f), rep)


@dataclass(frozen=True, slots=True)
class TorsionFingerprint:
    """Torsion classes of one complex across several representations; a
    None entry records that the complex is not acyclic under that one."""

    entries: tuple[tuple[Representation, TorsionClass | None], ...]

    def classes(self) -> tuple[TorsionClass | None, ...]:
        return tuple(cls for _, cls in self.entries)


def fingerprint(c: BasedComplex, reps) -> TorsionFingerprint:
    reps = list(reps)
    if len(set(reps)) != len(reps):
        raise ValueError("representations must be pairwise distinct")
    entries = []
    for rep in reps:
        try:
            entries.append((rep, reidemeister_torsion(c, rep)))
        except NotAcyclicError:
            entries.append((rep, None))
    return TorsionFingerprint(tuple(entries))


def fingerprints_equivalent(
    a: TorsionFingerprint, b: TorsionFingerprint, matching=None
) -> bool:
    """Compare fingerprints under a permutation matching a-entries to
    b-entries (identity by default): acyclicity patterns and classes must
    both agree."""
    if len(a.entries) != len(b.entries):
        raise ShapeMismatchError("fingerprints have different lengths")
    if matching is None:
        matching = tuple(range(len(a.entries)))
    if sorted(matching) != list(range(len(b.entries))):
        raise ShapeMismatchError("matching is not a permutation")
    for (_, cls_a), k in zip(a.entries, matching):
        _, cls_b = b.entries[k]
        if (cls_a is None) != (cls_b is None):
            return False
        if cls_a is None:
            continue
        if cls_a.units != cls_b.units:
            raise ShapeMismatchError("matched entries use different unit groups")
        if cls_a != cls_b:
            return False
    return True
