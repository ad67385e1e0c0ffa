"""Shared random generators for the test suite.

All generators are deterministic given an explicit random.Random instance;
sizes stay small so the exact arithmetic keeps every suite desk-scale.
"""
from __future__ import annotations

import random

from torsionkit.grouprings import (
    GroupSpec,
    GroupWord,
    ONE_ELEM,
    TRIVIAL_GROUP,
    elem_from_dict,
    from_int,
    generator_elem,
    generator_word,
    ring_sub,
)
from torsionkit.chaincomplex import BasedComplex, based_complex, direct_sum, two_term_complex
from torsionkit.simpleops import DeckTransform, HandleSlide, apply_op

Z7 = GroupSpec.cyclic(7)


def random_word(spec: GroupSpec, rng: random.Random, allow_identity=False) -> GroupWord:
    if spec.kind == "cyclic":
        order = spec.factor_orders[0]
        lo = 0 if allow_identity or order == 1 else 1
        return generator_word(spec, 0, rng.randint(lo, max(order - 1, 0)))
    letters = []
    prev = -1
    for _ in range(rng.randint(1, 2)):
        f = rng.choice([i for i in range(spec.num_factors) if i != prev])
        letters.append((f, rng.randint(1, spec.order_of(f) - 1)))
        prev = f
    return GroupWord(tuple(letters))


def random_elem(spec: GroupSpec, rng: random.Random, terms=2, span=3):
    acc = {}
    for _ in range(rng.randint(1, terms)):
        w = random_word(spec, rng, allow_identity=True)
        acc[w] = acc.get(w, 0) + rng.randint(-span, span)
    return elem_from_dict(acc)


def unit_after_base_change_elem(spec: GroupSpec, rng: random.Random):
    """An element of Z[Z/p] whose image under every t -> zeta^d (d coprime
    to p) is nonzero: safe as a two-term differential in acyclicity tests."""
    p = spec.factor_orders[0]
    k = rng.randint(1, p - 1)
    kind = rng.randrange(4)
    t_k = generator_elem(spec, 0, k)
    if kind == 0:
        return ring_sub(spec, ONE_ELEM, t_k)  # 1 - t^k
    if kind == 1:
        return ring_sub(spec, from_int(2), t_k)  # 2 - t^k
    if kind == 2:
        return elem_from_dict({generator_word(spec, 0, k): rng.choice([-1, 1])})
    return elem_from_dict({GroupWord(): 1, generator_word(spec, 0, k): 1})  # 1 + t^k


def scramble(c: BasedComplex, rng: random.Random, steps=6, decks=True) -> BasedComplex:
    """Random slides (and optionally decks): torsion classes are preserved."""
    for _ in range(steps):
        degs = [d for d in c.degrees if c.rank(d) >= 2]
        if degs and (not decks or rng.random() < 0.6):
            d = rng.choice(degs)
            a, b = rng.sample(range(c.rank(d)), 2)
            coeff = elem_from_dict({random_word(c.spec, rng, True): rng.choice([-2, -1, 1, 2])})
            c = apply_op(c, HandleSlide(d, a, b, coeff))
        elif decks:
            degs = [d for d in c.degrees if c.rank(d)]
            d = rng.choice(degs)
            c = apply_op(c, DeckTransform(d, rng.randrange(c.rank(d)), random_word(c.spec, rng)))
    return c


def random_acyclic_complex(
    spec: GroupSpec,
    rng: random.Random,
    summands=3,
    degree_span=3,
    decks=True,
    scramble_steps=None,
) -> BasedComplex:
    """Direct sum of two-term complexes with unit-after-base-change entries,
    scrambled by simple operations.  Acyclic under every nontrivial twist."""
    parts = []
    for _ in range(rng.randint(1, summands)):
        d = rng.randint(-degree_span, degree_span)
        parts.append(two_term_complex(spec, d, unit_after_base_change_elem(spec, rng)))
    c = parts[0]
    for part in parts[1:]:
        c = direct_sum(c, part)
    if scramble_steps is None:
        scramble_steps = 2 * c.total_rank()
    return scramble(c, rng, steps=scramble_steps, decks=decks)


def random_trivial_class_complex(spec: GroupSpec, rng: random.Random, summands=3):
    """Scrambled sum of [Z[G] --(+-g)--> Z[G]] pieces: torsion class 1."""
    parts = []
    for _ in range(rng.randint(1, summands)):
        d = rng.randint(-2, 2)
        entry = elem_from_dict({random_word(spec, rng, True): rng.choice([-1, 1])})
        parts.append(two_term_complex(spec, d, entry))
    c = parts[0]
    for part in parts[1:]:
        c = direct_sum(c, part)
    return scramble(c, rng, steps=2 * c.total_rank())


def random_unimodular_matrix(rng: random.Random, size: int, steps=6):
    """Integer matrix with determinant +-1 (product of elementary ops)."""
    m = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(steps):
        i, j = rng.sample(range(size), 2) if size >= 2 else (0, 0)
        if i == j:
            continue
        k = rng.choice([-2, -1, 1, 2])
        for c in range(size):
            m[i][c] += k * m[j][c]
    if rng.random() < 0.5 and size:
        for c in range(size):
            m[0][c] = -m[0][c]
    return m


def random_acyclic_int_complex(rng: random.Random, max_size=3) -> BasedComplex:
    """Acyclic based complex over Z: sum of two-term unimodular blocks with
    integer slides mixed in."""
    parts = []
    for _ in range(rng.randint(1, 2)):
        size = rng.randint(1, max_size)
        u = random_unimodular_matrix(rng, size)
        d = rng.randint(-2, 2)
        mat = tuple(tuple(from_int(x) for x in row) for row in u)
        parts.append(based_complex(TRIVIAL_GROUP, d, (size, size), [mat]))
    c = parts[0]
    for part in parts[1:]:
        c = direct_sum(c, part)
    return scramble(c, rng, steps=c.total_rank(), decks=False)


def random_int_complex(rng: random.Random, max_rank=2, span=2) -> BasedComplex:
    """A (not necessarily acyclic) based complex over Z: random ranks with
    zero differentials, then integer slides to populate entries."""
    lo = rng.randint(-2, 0)
    ranks = [rng.randint(0, max_rank) for _ in range(rng.randint(2, 4))]
    if not any(ranks):
        ranks[0] = 1
    diffs = []
    for k in range(len(ranks) - 1):
        diffs.append(tuple((from_int(0),) * ranks[k] for _ in range(ranks[k + 1])))
    c = based_complex(TRIVIAL_GROUP, lo, ranks, diffs)
    return scramble(c, rng, steps=span * 2, decks=False)


def filtered_extension(a: BasedComplex, b: BasedComplex, rng: random.Random) -> BasedComplex:
    """Two-step filtered complex with graded pieces a (the subcomplex) and b.

    The connecting block is h = d_a.u - u.d_b for a random degree-0 map u,
    which automatically satisfies d_a.h + h.d_b = 0.
    """
    from torsionkit.chaincomplex import mat_compose
    from torsionkit.grouprings import ring_add as _add, ring_sub as _sub

    spec = a.spec
    lo = min(a.min_degree, b.min_degree)
    hi = max(a.max_degree, b.max_degree)
    u = {
        i: tuple(
            tuple(random_elem(spec, rng) for _ in range(b.rank(i)))
            for _ in range(a.rank(i))
        )
        for i in range(lo, hi + 1)
    }
    ranks = [a.rank(i) + b.rank(i) for i in range(lo, hi + 1)]
    labels = [a.degree_labels(i) + b.degree_labels(i) for i in range(lo, hi + 1)]
    diffs = []
    for i in range(lo, hi):
        term1 = mat_compose(spec, a.diff(i), u[i], source_cols=b.rank(i))
        term2 = mat_compose(spec, u[i + 1], b.diff(i), source_cols=b.rank(i))
        h = tuple(
            tuple(_sub(spec, x, y) for x, y in zip(r1, r2))
            for r1, r2 in zip(term1, term2)
        )
        rows = []
        for r in range(a.rank(i + 1)):
            rows.append(a.diff(i)[r] + (h[r] if h else ()))
        for r in range(b.rank(i + 1)):
            rows.append((from_int(0),) * a.rank(i) + b.diff(i)[r])
        diffs.append(tuple(rows))
    return based_complex(spec, lo, ranks, diffs, labels)


def iso_via_ops(c: BasedComplex, rng: random.Random, steps=5):
    """A chain isomorphism from c onto a slide/deck scramble of it.

    Returns (chain_map, end_complex); the map has trivial torsion class by
    construction (it is a composite of simple operations).
    """
    from torsionkit.chaincomplex import chain_map, mat_compose, mat_identity
    from torsionkit.grouprings import monomial, word_inverse

    spec = c.spec
    current = c
    mats = {i: mat_identity(c.rank(i)) for i in c.degrees}
    for _ in range(steps):
        degs = [d for d in current.degrees if current.rank(d) >= 1]
        if not degs:
            break
        slide_degs = [d for d in degs if current.rank(d) >= 2]
        if slide_degs and rng.random() < 0.6:
            d = rng.choice(slide_degs)
            al, be = rng.sample(range(current.rank(d)), 2)
            x = elem_from_dict({random_word(spec, rng, True): rng.choice([-2, -1, 1, 2])})
            op = HandleSlide(d, al, be, x)
            p = [list(row) for row in mat_identity(current.rank(d))]
            p[be][al] = ring_sub(spec, p[be][al], x)
            pm = tuple(tuple(row) for row in p)
        else:
            d = rng.choice(degs)
            idx = rng.randrange(current.rank(d))
            w = random_word(spec, rng)
            op = DeckTransform(d, idx, w)
            p = [list(row) for row in mat_identity(current.rank(d))]
            p[idx][idx] = monomial(word_inverse(spec, w))
            pm = tuple(tuple(row) for row in p)
        current = apply_op(current, op)
        mats[d] = mat_compose(spec, pm, mats.get(d, mat_identity(c.rank(d))),
                              source_cols=c.rank(d))
    return chain_map(c, current, mats), current


def random_group_complex(spec: GroupSpec, rng: random.Random, max_rank=2) -> BasedComplex:
    """A (not necessarily acyclic) complex over Z[G]: two-term pieces with
    arbitrary entries at mixed degrees, direct-summed and scrambled."""
    parts = [two_term_complex(spec, rng.randint(-2, 2), random_elem(spec, rng))]
    for _ in range(rng.randint(0, max_rank)):
        parts.append(two_term_complex(spec, rng.randint(-2, 2), random_elem(spec, rng)))
    c = parts[0]
    for part in parts[1:]:
        c = direct_sum(c, part)
    return scramble(c, rng, steps=4)
