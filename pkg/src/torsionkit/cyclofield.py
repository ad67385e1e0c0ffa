"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A CycloNum is a rational polynomial in zeta_n reduced modulo the n-th
cyclotomic polynomial Phi_n, stored as integer coefficients over a common
positive denominator.  Inversion goes through the Galois conjugates, so no
polynomial gcd is ever needed: 1/a = (prod of conjugates of a) / norm(a).

Also here: representations of group rings into Q(zeta_n), the finite unit
subgroups +-rho(G), and torsion classes (units modulo that subgroup).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .grouprings import GroupRingElem, GroupSpec, validate_word


class ModulusMismatchError(ValueError):
    """Arithmetic mixed two different cyclotomic moduli."""


# --- integer polynomial helpers (coefficients ascending) ---


def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division by a monic integer polynomial."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 0)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending, computed by dividing x^n - 1 by
    Phi_d over all proper divisors d of n."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_monic(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce_mod_phi(n: int, coeffs: list[int]) -> tuple[int, ...]:
    """Fold a dense integer polynomial down modulo the monic Phi_n."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    tmp = list(coeffs) + [0] * max(phi - len(coeffs), 0)
    for k in range(len(tmp) - 1, phi - 1, -1):
        c = tmp[k]
        if c:
            for j in range(phi):
                tmp[k - phi + j] -= c * mod[j]
    return tuple(tmp[:phi])


@lru_cache(maxsize=None)
def _zeta_power_row(n: int, k: int) -> tuple[int, ...]:
    """zeta_n^k reduced mod Phi_n."""
    k %= n
    phi = euler_phi(n)
    if k < phi:
        row = [0] * phi
        row[k] = 1
        return tuple(row)
    return _reduce_mod_phi(n, [0] * k + [1])


@dataclass(frozen=True, slots=True)
class CycloNum:
    """Element of Q(zeta_n): nums/den with gcd(content(nums), den) = 1."""

    n: int
    nums: tuple[int, ...]
    den: int

    def __post_init__(self) -> None:
        if len(self.nums) != euler_phi(self.n):
            raise ValueError("coefficient vector has wrong length")
        if self.den < 1:
            raise ValueError("denominator must be positive")

    def __bool__(self) -> bool:
        return any(self.nums)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.nums)

    def __add__(self, other: "CycloNum") -> "CycloNum":
        return cyclo_add(self, other)

    def __sub__(self, other: "CycloNum") -> "CycloNum":
        return cyclo_add(self, cyclo_neg(other))

    def __mul__(self, other: "CycloNum") -> "CycloNum":
        return cyclo_mul(self, other)

    def __neg__(self) -> "CycloNum":
        return cyclo_neg(self)


def _make(n: int, nums, den: int) -> CycloNum:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    if den != 1:
        g = den
        for c in nums:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
    if not any(nums):
        den = 1
    return CycloNum(n, tuple(nums), den)


def cyclo_zero(n: int) -> CycloNum:
    return CycloNum(n, (0,) * euler_phi(n), 1)


def cyclo_int(n: int, m: int) -> CycloNum:
    nums = [0] * euler_phi(n)
    nums[0] = int(m)
    return _make(n, _reduce_mod_phi(n, nums), 1)


def cyclo_one(n: int) -> CycloNum:
    return cyclo_int(n, 1)


def cyclo_fraction(n: int, q: Fraction) -> CycloNum:
    q = Fraction(q)
    nums = [0] * euler_phi(n)
    nums[0] = q.numerator
    return _make(n, nums, q.denominator)


def zeta(n: int, k: int = 1) -> CycloNum:
    return CycloNum(n, _zeta_power_row(n, k), 1)


def _check_same_modulus(a: CycloNum, b: CycloNum) -> None:
    if a.n != b.n:
        raise ModulusMismatchError(f"moduli differ: {a.n} vs {b.n}")


def cyclo_add(a: CycloNum, b: CycloNum) -> CycloNum:
    _check_same_modulus(a, b)
    if a.den == b.den:
        return _make(a.n, [x + y for x, y in zip(a.nums, b.nums)], a.den)
    nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
    return _make(a.n, nums, a.den * b.den)


def cyclo_neg(a: CycloNum) -> CycloNum:
    return CycloNum(a.n, tuple(-c for c in a.nums), a.den)


def cyclo_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    _check_same_modulus(a, b)
    prod = _poly_mul_int(list(a.nums), list(b.nums)) if a and b else []
    if not prod:
        return cyclo_zero(a.n)
    return _make(a.n, _reduce_mod_phi(a.n, prod), a.den * b.den)


def galois_conjugate(a: CycloNum, k: int) -> CycloNum:
    """Apply zeta -> zeta^k; requires gcd(k, n) = 1."""
    if gcd(k, a.n) != 1:
        raise ValueError(f"{k} is not coprime to {a.n}")
    phi = euler_phi(a.n)
    acc = [0] * phi
    for j, c in enumerate(a.nums):
        if c:
            row = _zeta_power_row(a.n, (j * k) % a.n)
            for i in range(phi):
                acc[i] += c * row[i]
    return _make(a.n, acc, a.den)


def cyclo_inv(a: CycloNum) -> CycloNum:
    """Inverse via conjugates: a * prod(sigma(a)) is the integer norm."""
    if not a:
        raise ZeroDivisionError("cyclotomic inverse of zero")
    n = a.n
    ipart = CycloNum(n, a.nums, 1)
    conj_prod = cyclo_one(n)
    for k in range(2, n + 1):
        if gcd(k, n) == 1:
            conj_prod = cyclo_mul(conj_prod, galois_conjugate(ipart, k))
    norm = cyclo_mul(ipart, conj_prod)
    assert not any(norm.nums[1:]) and norm.den == 1, "norm must be a plain integer"
    return _make(n, [a.den * c for c in conj_prod.nums], norm.nums[0])


def cyclo_div(a: CycloNum, b: CycloNum) -> CycloNum:
    return cyclo_mul(a, cyclo_inv(b))


def cyclo_pow(a: CycloNum, k: int) -> CycloNum:
    if k < 0:
        return cyclo_pow(cyclo_inv(a), -k)
    out = cyclo_one(a.n)
    for _ in range(k):
        out = cyclo_mul(out, a)
    return out


def coeff_key(a: CycloNum) -> tuple[Fraction, ...]:
    """Total order key: coefficient vector, rationals by value."""
    return a.coeffs


def cyclo_str(a: CycloNum) -> str:
    """Render as a polynomial in z, e.g. ``2 - 3/7*z^2 (mod Phi_7)``."""
    parts = []
    for j, c in enumerate(a.nums):
        if not c:
            continue
        mag = Fraction(abs(c), a.den)
        if j == 0:
            body = str(mag)
        else:
            var = "z" if j == 1 else f"z^{j}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    poly = "".join(parts) if parts else "0"
    return f"{poly} (mod Phi_{a.n})"


# --- representations rho: Z[G] -> Q(zeta_n) ---


@dataclass(frozen=True, slots=True)
class Representation:
    """Ring homomorphism determined by factor generator g_i -> zeta_n^e_i."""

    spec: GroupSpec
    modulus: int
    generator_exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.modulus
        exps = tuple(e % n for e in self.generator_exponents)
        object.__setattr__(self, "generator_exponents", exps)
        if len(exps) != self.spec.num_factors:
            raise ValueError("one exponent per free factor required")
        for m, e in zip(self.spec.factor_orders, exps):
            if (m * e) % n != 0:
                raise ValueError(
                    f"generator of order {m} cannot map to zeta_{n}^{e}"
                )


def representation(spec: GroupSpec, modulus: int, exponents) -> Representation:
    return Representation(spec, modulus, tuple(int(e) for e in exponents))


def evaluate_rep(rep: Representation, x: GroupRingElem) -> CycloNum:
    n = rep.modulus
    phi = euler_phi(n)
    acc = [0] * phi
    for w, c in x.terms:
        validate_word(rep.spec, w)
        e = sum(exp * rep.generator_exponents[f] for f, exp in w.letters) % n
        row = _zeta_power_row(n, e)
        for i in range(phi):
            acc[i] += c * row[i]
    return _make(n, acc, 1)


@dataclass(frozen=True, slots=True)
class UnitSubgroup:
    """Finite multiplicative group generated by -1 and the rho-images of
    the group generators: the denominator +-rho(G) of torsion classes."""

    modulus: int
    elements: frozenset[CycloNum]


@lru_cache(maxsize=None)
def unit_subgroup(rep: Representation) -> UnitSubgroup:
    n = rep.modulus
    gens = [cyclo_neg(cyclo_one(n))]
    gens += [zeta(n, e) for e in rep.generator_exponents]
    elems = {cyclo_one(n)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = cyclo_mul(u, g)
                if v not in elems:
                    elems.add(v)
                    nxt.append(v)
        frontier = nxt
    return UnitSubgroup(n, frozenset(elems))


def canonical_rep(u: CycloNum, units: UnitSubgroup) -> CycloNum:
    """Deterministic coset representative: the lexicographic minimum of the
    orbit {w*u} under the coefficient-vector order."""
    if not u:
        raise ZeroDivisionError("zero has no torsion class")
    return min((cyclo_mul(w, u) for w in units.elements), key=coeff_key)


def torsion_class_eq(u: CycloNum, v: CycloNum, units: UnitSubgroup) -> bool:
    """Whether u and v agree modulo the unit subgroup, i.e. u/v in units."""
    if not u or not v:
        raise ZeroDivisionError("torsion values must be nonzero")
    return cyclo_mul(u, cyclo_inv(v)) in units.elements


@dataclass(frozen=True, slots=True)
class TorsionClass:
    """A unit of Q(zeta_n) modulo +-rho(G), stored by canonical representative."""

    representative: CycloNum
    units: UnitSubgroup

    def __mul__(self, other: "TorsionClass") -> "TorsionClass":
        if self.units != other.units:
            raise ModulusMismatchError("torsion classes over different unit groups")
        return torsion_class(
            cyclo_mul(self.representative, other.representative), self.units
        )

    def inverse(self) -> "TorsionClass":
        return torsion_class(cyclo_inv(self.representative), self.units)

    def is_trivial(self) -> bool:
        return self.representative in self.units.elements


def torsion_class(value: CycloNum, units: UnitSubgroup) -> TorsionClass:
    return TorsionClass(canonical_rep(value, units), units)
