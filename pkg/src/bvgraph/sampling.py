"""Seeded random generators for polynomials, fields, forms and multilinear maps.

Every sampler takes an explicit random.Random so that a RunConfig seed fully
determines all sampling.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from .graded import EVEN, ODD, SuperSpace
from .superpoly import MultilinearMap, SuperPolynomial, VectorField
from .forms import FormContext


def rational(rng: random.Random, zero_ok=True) -> Fraction:
    num = rng.randint(-4, 4)
    if not zero_ok and num == 0:
        num = 1
    return Fraction(num, rng.choice([1, 1, 1, 2, 3]))


def monomial_keys(space: SuperSpace, degree: int):
    keys = []
    for key in combinations_with_replacement(range(len(space)), degree):
        if any(space.parities[v] and key.count(v) > 1 for v in key):
            continue
        keys.append(key)
    return keys


def polynomial(rng, space, max_degree, parity=None, terms=3,
               min_degree=0) -> SuperPolynomial:
    out = SuperPolynomial.zero(space)
    pool = []
    for d in range(min_degree, max_degree + 1):
        for key in monomial_keys(space, d):
            if parity is not None and sum(space.parities[v] for v in key) % 2 != parity:
                continue
            pool.append(key)
    if not pool:
        return out
    for _ in range(terms):
        key = pool[rng.randrange(len(pool))]
        out = out + SuperPolynomial.monomial(space, key, rational(rng, zero_ok=False))
    return out


def homogeneous_monomial(rng, space, degree, parity=None) -> SuperPolynomial:
    pool = [k for k in monomial_keys(space, degree)
            if parity is None or sum(space.parities[v] for v in k) % 2 == parity]
    if not pool:
        raise ValueError("no monomials with the requested degree/parity")
    key = pool[rng.randrange(len(pool))]
    return SuperPolynomial.monomial(space, key, rational(rng, zero_ok=False))


def vector_field(rng, space, parity, max_degree, terms=2) -> VectorField:
    imgs = []
    for i in range(len(space)):
        imgs.append(polynomial(rng, space, max_degree,
                               parity=(parity + space.parities[i]) % 2, terms=terms))
    return VectorField(space, imgs, parity)


def form(rng, ctx: FormContext, max_degree, max_form_degree, terms=3) -> SuperPolynomial:
    out = SuperPolynomial.zero(ctx.space)
    pool = []
    for d in range(max_degree + 1):
        for key in monomial_keys(ctx.space, d):
            if ctx.form_degree(key) <= max_form_degree:
                pool.append(key)
    for _ in range(terms):
        key = pool[rng.randrange(len(pool))]
        out = out + SuperPolynomial.monomial(ctx.space, key, rational(rng, zero_ok=False))
    return out


def multilinear(rng, space, rank, entries=4, parity=None) -> MultilinearMap:
    raw = {}
    n = len(space)
    guard = 0
    while len(raw) < entries and guard < 200:
        guard += 1
        args = tuple(rng.randrange(n) for _ in range(rank))
        out = rng.randrange(n)
        p = (space.parities[out] + sum(space.parities[a] for a in args)) % 2
        if parity is not None and p != parity:
            continue
        raw[(args, out)] = rational(rng, zero_ok=False)
    return MultilinearMap(space, rank, raw).symmetrized()


def vector(rng, space):
    return [rational(rng) for _ in range(len(space))]


def homogeneous_vector(rng, space, parity):
    return [rational(rng) if space.parities[i] == parity else Fraction(0)
            for i in range(len(space))]


def invertible_graded_matrix(rng, space):
    """Random invertible parity-preserving matrix (columns = new basis vectors)."""
    from . import linalg
    n = len(space)
    while True:
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if space.parities[i] == space.parities[j]:
                    m[i][j] = rational(rng)
        try:
            linalg.inverse(m)
            return m
        except ValueError:
            continue
