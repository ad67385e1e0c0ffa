"""Lens space cell complexes, their torsion, and classification predicates.

The cellular chain complex of L(p,q) has one cell in each dimension 0..3
with differentials (1 - g^r), (1 + g + ... + g^(p-1)), (1 - g), where
g*r = 1 mod p.  It is stored on cohomological degrees 0..3 with the 3-cell
in degree 0; this orientation makes the alternating-determinant torsion of
the base-changed complex come out as (1 - zeta^r)(1 - zeta) on the nose,
which is the calibration all sweeps assert.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .grouprings import (
    GroupSpec,
    ONE_ELEM,
    elem_from_dict,
    generator_elem,
    generator_word,
    ring_sub,
)
from .cyclofield import (
    ModulusMismatchError,
    TorsionClass,
    representation,
)
from .chaincomplex import BasedComplex, based_complex
from .torsion import NotAcyclicError, reidemeister_torsion


class NotCoprimeError(ValueError):
    """The lens parameters (or a twist) are not coprime to p."""


class NonPrimeUnsupportedError(ValueError):
    """The free-product comparison is only defined for prime p."""


@dataclass(frozen=True, slots=True)
class LensParams:
    """Coprime (p, q) with q reduced to 1..p-1."""

    p: int
    q: int


def lens_params(p: int, q: int) -> LensParams:
    if p < 2:
        raise NotCoprimeError(f"p must be >= 2, got {p}")
    q %= p
    if gcd(p, q) != 1:
        raise NotCoprimeError(f"gcd({p}, {q}) != 1")
    return LensParams(p, q)


def modp_inverse(q: int, p: int) -> int:
    """The unique r in 1..p-1 with q*r = 1 mod p."""
    q %= p
    if gcd(q, p) != 1:
        raise NotCoprimeError(f"{q} is not invertible mod {p}")
    return pow(q, -1, p)


def _lens_cells(
    spec: GroupSpec, factor: int, twist: int, p: int, r: int, labels=None
) -> BasedComplex:
    """The one-cell-per-dimension complex with generator g^twist.

    Degrees 0..3 hold the cells of dimension 3..0; differentials are
    (1 - g^(twist*r)), the norm element in g^twist, and (1 - g^twist).
    """

    def gen(e: int):
        return generator_elem(spec, factor, (e * twist) % p)

    top = ring_sub(spec, ONE_ELEM, gen(r))
    norm = elem_from_dict(
        {generator_word(spec, factor, (k * twist) % p): 1 for k in range(p)}
    )
    bottom = ring_sub(spec, ONE_ELEM, gen(1))
    return based_complex(
        spec,
        0,
        (1, 1, 1, 1),
        [((top,),), ((norm,),), ((bottom,),)],
        labels or [("e3",), ("e2",), ("e1",), ("e0",)],
    )


def lens_complex(params: LensParams) -> BasedComplex:
    """Based cellular complex of L(p,q) over Z[Z/p]."""
    r = modp_inverse(params.q, params.p)
    return _lens_cells(GroupSpec.cyclic(params.p), 0, 1, params.p, r)


@lru_cache(maxsize=None)
def lens_torsion(params: LensParams, d: int) -> TorsionClass:
    """Torsion class of L(p,q) under t -> zeta_p^d.

    Equals the class of (1 - zeta^(d*r))(1 - zeta^d); raises NotAcyclicError
    for d = 0 mod p, where the base change keeps all the homology.
    """
    p = params.p
    rep = representation(GroupSpec.cyclic(p), p, [d % p])
    return reidemeister_torsion(lens_complex(params), rep)


def homotopy_equivalent(a: LensParams, b: LensParams) -> tuple[bool, int | None]:
    """Whether q*q' = +-m^2 mod p for some m, with the first witness m."""
    if a.p != b.p:
        raise ModulusMismatchError("lens spaces with different p")
    p = a.p
    target = (a.q * b.q) % p
    for m in range(p):
        sq = (m * m) % p
        if sq == target or (-sq) % p == target:
            return True, m
    return False, None


def simple_homotopy_equivalent(
    a: LensParams, b: LensParams
) -> tuple[bool, tuple[int, bool] | None]:
    """Whether q' = +-q^(+-1) mod p; the witness is (sign, inverted-flag)."""
    if a.p != b.p:
        raise ModulusMismatchError("lens spaces with different p")
    p = a.p
    qinv = modp_inverse(a.q, p)
    for sign in (1, -1):
        for inverted, base in ((False, a.q), (True, qinv)):
            if (sign * base) % p == b.q % p:
                return True, (sign, inverted)
    return False, None


def torsion_distinguish(a: LensParams, b: LensParams) -> tuple[bool, int | None]:
    """True iff no twist d makes the torsion of ``a`` match that of ``b``.

    Compares the class of a under every t -> zeta^d against the class of b
    under the identity twist; a matching d is returned when one exists.
    """
    if a.p != b.p:
        raise ModulusMismatchError("lens spaces with different p")
    p = a.p
    reference = lens_torsion(b, 1)
    for d in range(1, p):
        if gcd(d, p) != 1:
            continue
        if lens_torsion(a, d) == reference:
            return False, d
    return True, None


@dataclass(frozen=True, slots=True)
class LensVerdict:
    """The three classification answers for one pair of lens spaces."""

    a: LensParams
    b: LensParams
    homotopy_equivalent: bool
    homotopy_witness: int | None
    simple_homotopy_equivalent: bool
    simple_witness: tuple[int, bool] | None
    torsion_distinguished: bool
    torsion_match_twist: int | None

    @property
    def consistent(self) -> bool:
        """Torsion must negate simple equivalence, which implies homotopy."""
        if self.torsion_distinguished != (not self.simple_homotopy_equivalent):
            return False
        if self.simple_homotopy_equivalent and not self.homotopy_equivalent:
            return False
        return True


def lens_verdict(a: LensParams, b: LensParams) -> LensVerdict:
    he, m = homotopy_equivalent(a, b)
    se, sw = simple_homotopy_equivalent(a, b)
    td, d = torsion_distinguish(a, b)
    return LensVerdict(a, b, he, m, se, sw, td, d)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True, slots=True)
class FreeProductReport:
    """Torsion comparison of two lens complexes pushed into Z[Z/p * Z/p].

    ``rows`` lists, for each embedding twist l of the first complex, its
    torsion class under rho (None marks a non-acyclic base change) and
    whether it matches the second complex's class.
    """

    p: int
    q: int
    q2: int
    second_class: TorsionClass
    rows: tuple[tuple[int, TorsionClass | None, bool], ...]
    match_twist: int | None


def free_product_scenario(p: int, q: int, q2: int) -> FreeProductReport:
    """Compare L(p,q) embedded on the first free factor (for every twist l)
    against L(p,q2) on the second factor, under rho sending both generators
    to zeta_p."""
    if not _is_prime(p):
        raise NonPrimeUnsupportedError(f"p = {p} is not prime")
    pa = lens_params(p, q)
    pb = lens_params(p, q2)
    spec = GroupSpec.free_product([p, p])
    rep = representation(spec, p, [1, 1])
    r = modp_inverse(pa.q, p)
    r2 = modp_inverse(pb.q, p)
    second = reidemeister_torsion(_lens_cells(spec, 1, 1, p, r2), rep)
    rows = []
    match_twist = None
    for l in range(1, p):
        try:
            cls = reidemeister_torsion(_lens_cells(spec, 0, l, p, r), rep)
        except NotAcyclicError:
            rows.append((l, None, False))
            continue
        same = cls == second
        if same and match_twist is None:
            match_twist = l
        rows.append((l, cls, same))
    return FreeProductReport(p, pa.q, pb.q, second, tuple(rows), match_twist)
