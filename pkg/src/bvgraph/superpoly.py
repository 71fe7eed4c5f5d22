"""Polynomial superfunctions, graded vector fields and multilinear maps.

Monomials are tuples of variable indices sorted ascending; odd variables never
repeat (their square is zero) and the Koszul sign of every reordering is folded
into the coefficient, so equality of polynomials is plain dict equality.

Odd partial derivatives act from the LEFT throughout the package; every
downstream sign (odd Laplacian values, Berezin integrals) inherits this single
convention.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .graded import EVEN, ODD, SuperSpace, koszul_sign, sort_indices_with_sign


def merge_keys(space: SuperSpace, k1, k2):
    """Merge two canonical monomials; (key, sign) or (None, 0) on an odd square."""
    pars = space.parities
    sign = 1
    for b in k2:
        if not pars[b]:
            continue
        for a in k1:
            if a == b:
                return None, 0
            if a > b and pars[a]:
                sign = -sign
    return tuple(sorted(k1 + k2)), sign


class SuperPolynomial:
    __slots__ = ("space", "terms")

    def __init__(self, space: SuperSpace, terms=None):
        self.space = space
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def scalar(cls, space, c):
        c = Fraction(c)
        return cls(space, {(): c} if c else {})

    @classmethod
    def variable(cls, space, i):
        return cls(space, {(i,): Fraction(1)})

    @classmethod
    def monomial(cls, space, seq, coeff=1):
        """Monomial from an arbitrarily ordered index sequence (sign folded in)."""
        key, sign = sort_indices_with_sign(space, tuple(seq))
        if key is None:
            return cls(space)
        return cls(space, {key: Fraction(coeff) * sign})

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SuperPolynomial(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SuperPolynomial(self.space, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            self._check(other)
            out = {}
            for k1, v1 in self.terms.items():
                for k2, v2 in other.terms.items():
                    key, sign = merge_keys(self.space, k1, k2)
                    if key is None:
                        continue
                    out[key] = out.get(key, Fraction(0)) + sign * v1 * v2
            return SuperPolynomial(self.space, out)
        c = Fraction(other)
        return SuperPolynomial(self.space, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def __eq__(self, other):
        return (isinstance(other, SuperPolynomial)
                and self.space == other.space and self.terms == other.terms)

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.space != other.space:
            raise ValueError("polynomials live on different variable spaces")

    # -- structure ----------------------------------------------------------
    def monomial_parity(self, key) -> int:
        return sum(self.space.parities[i] for i in key) % 2

    def parity(self):
        """Parity if homogeneous, else None.  Zero counts as either (None-safe)."""
        ps = {self.monomial_parity(k) for k in self.terms}
        if not ps:
            return None
        return ps.pop() if len(ps) == 1 else None

    def parity_components(self):
        out = [SuperPolynomial(self.space), SuperPolynomial(self.space)]
        for k, v in self.terms.items():
            out[self.monomial_parity(k)].terms[k] = v
        return out

    def degree_components(self):
        comp = {}
        for k, v in self.terms.items():
            comp.setdefault(len(k), {})[k] = v
        return {d: SuperPolynomial(self.space, t) for d, t in sorted(comp.items())}

    def max_degree(self):
        return max((len(k) for k in self.terms), default=0)

    def min_degree(self):
        return min((len(k) for k in self.terms), default=0)

    def coefficient(self, seq):
        key, sign = sort_indices_with_sign(self.space, tuple(seq))
        if key is None:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    # -- calculus -----------------------------------------------------------
    def deriv_left(self, var: int) -> "SuperPolynomial":
        """Left partial derivative with respect to variable `var`."""
        pars = self.space.parities
        out = {}
        for key, val in self.terms.items():
            odd_before = 0
            seen = set()
            for pos, v in enumerate(key):
                if v == var and v not in seen:
                    mult = key.count(v)
                    rest = key[:pos] + key[pos + 1:]
                    sign = -1 if (pars[var] and odd_before % 2) else 1
                    coeff = val * sign * (mult if not pars[var] else 1)
                    out[rest] = out.get(rest, Fraction(0)) + coeff
                    seen.add(v)
                if pars[v]:
                    odd_before += 1
        return SuperPolynomial(self.space, out)

    def substitute(self, images, target_space: SuperSpace) -> "SuperPolynomial":
        """Graded algebra map sending variable i to images[i] (same parity)."""
        for i, img in enumerate(images):
            p = img.parity()
            if p is not None and p != self.space.parities[i]:
                raise ValueError("substitution must preserve parity")
        out = SuperPolynomial.zero(target_space)
        for key, val in self.terms.items():
            prod = SuperPolynomial.scalar(target_space, val)
            for v in key:
                prod = prod * images[v]
                if prod.is_zero():
                    break
            out = out + prod
        return out

    def rename_space(self, new_space: SuperSpace) -> "SuperPolynomial":
        if new_space.parities != self.space.parities:
            raise ValueError("parity pattern mismatch")
        return SuperPolynomial(new_space, dict(self.terms))

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.space.names
        bits = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            v = self.terms[key]
            factors = []
            i = 0
            while i < len(key):
                j = i
                while j < len(key) and key[j] == key[i]:
                    j += 1
                factors.append(names[key[i]] + (f"^{j - i}" if j - i > 1 else ""))
                i = j
            m = "*".join(factors) if factors else "1"
            bits.append(f"({v})*{m}" if factors else f"({v})")
        return " + ".join(bits)

    __repr__ = render


def poly_from_vector(space, vec) -> SuperPolynomial:
    """Linear polynomial sum_i vec[i] * y_i."""
    return SuperPolynomial(space, {(i,): Fraction(c) for i, c in enumerate(vec) if c})


class VectorField:
    """Graded derivation of S(W*), given by its images on the coordinates."""

    __slots__ = ("space", "images", "parity")

    def __init__(self, space: SuperSpace, images, parity=None):
        self.space = space
        self.images = tuple(images)
        if len(self.images) != len(space):
            raise ValueError("need one image per variable")
        if parity is None:
            ps = set()
            mixed = False
            for i, img in enumerate(self.images):
                if img.is_zero():
                    continue
                p = img.parity()
                if p is None:
                    mixed = True
                    break
                ps.add((p - space.parities[i]) % 2)
            if mixed or len(ps) > 1:
                parity = None
            else:
                parity = ps.pop() if ps else EVEN
        self.parity = parity

    @classmethod
    def zero(cls, space):
        z = SuperPolynomial.zero(space)
        return cls(space, [z] * len(space), EVEN)

    @classmethod
    def coordinate(cls, space, i):
        """The left partial d/dy_i as a field."""
        imgs = [SuperPolynomial.zero(space) for _ in space.names]
        imgs[i] = SuperPolynomial.scalar(space, 1)
        return cls(space, imgs, space.parities[i])

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        return apply_derivation(self.space, self.images, self.parity, f)

    def __add__(self, other):
        par = self.parity if self.parity == other.parity else None
        return VectorField(self.space,
                           [a + b for a, b in zip(self.images, other.images)], par)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return VectorField(self.space, [img * c for img in self.images], self.parity)

    def scale_by_poly(self, p: SuperPolynomial) -> "VectorField":
        pp = p.parity()
        par = None if (pp is None or self.parity is None) else (pp + self.parity) % 2
        return VectorField(self.space, [p * img for img in self.images], par)

    def commutator(self, other: "VectorField") -> "VectorField":
        if self.parity is None or other.parity is None:
            raise ValueError("commutator needs homogeneous fields")
        sgn = -1 if (self.parity and other.parity) else 1
        imgs = []
        for i in range(len(self.space)):
            imgs.append(self(other.images[i]) - sgn * other(self.images[i]))
        return VectorField(self.space, imgs, (self.parity + other.parity) % 2)

    def is_zero(self):
        return all(img.is_zero() for img in self.images)


def apply_derivation(space, images, op_parity, f: SuperPolynomial) -> SuperPolynomial:
    """Apply the graded derivation with the given generator images to f.

    Works monomial-by-monomial, so f need not be parity homogeneous; the
    prefix sign uses each monomial's actual prefix parity.
    """
    if op_parity is None:
        raise ValueError("derivation parity must be declared")
    out = SuperPolynomial.zero(space)
    pars = space.parities
    for key, val in f.terms.items():
        odd_prefix = 0
        for pos, v in enumerate(key):
            img = images[v]
            if not img.is_zero():
                sign = -1 if (op_parity and odd_prefix % 2) else 1
                pre = SuperPolynomial.monomial(space, key[:pos], sign * val)
                suf = SuperPolynomial.monomial(space, key[pos + 1:], 1)
                out = out + pre * img * suf
            if pars[v]:
                odd_prefix += 1
    return out


def divergence(eta: VectorField) -> SuperPolynomial:
    """nabla(eta) = sum_i (-1)^{|y_i| + |y_i||eta|} d/dy_i [eta(y_i)]."""
    if eta.parity is None:
        parts = []
        for comp in _field_parity_parts(eta):
            parts.append(divergence(comp))
        out = SuperPolynomial.zero(eta.space)
        for p in parts:
            out = out + p
        return out
    out = SuperPolynomial.zero(eta.space)
    for i, img in enumerate(eta.images):
        pi = eta.space.parities[i]
        sign = -1 if (pi + pi * eta.parity) % 2 else 1
        out = out + sign * img.deriv_left(i)
    return out


def _field_parity_parts(eta: VectorField):
    parts = []
    for par in (EVEN, ODD):
        imgs = []
        for i, img in enumerate(eta.images):
            comps = img.parity_components()
            imgs.append(comps[(par + eta.space.parities[i]) % 2])
        f = VectorField(eta.space, imgs, par)
        if not f.is_zero():
            parts.append(f)
    return parts


class MultilinearMap:
    """Koszul-symmetric tensor in Hom(S^n(W), W), stored sparsely.

    Entries map (args tuple of basis indices, out index) -> coefficient.
    """

    __slots__ = ("space", "rank", "entries")

    def __init__(self, space: SuperSpace, rank: int, entries=None):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.space = space
        self.rank = rank
        self.entries = {k: v for k, v in (entries or {}).items() if v != 0}

    def parity(self):
        ps = set()
        for (args, out) in self.entries:
            p = (self.space.parities[out]
                 + sum(self.space.parities[a] for a in args)) % 2
            ps.add(p)
        if not ps:
            return EVEN
        if len(ps) > 1:
            return None
        return ps.pop()

    def symmetrized(self) -> "MultilinearMap":
        """Average over all Koszul-signed argument permutations."""
        out = {}
        fact = factorial(self.rank)
        for (args, tgt), val in self.entries.items():
            pars = [self.space.parities[a] for a in args]
            for order in permutations(range(self.rank)):
                sign = koszul_sign(order, pars)
                key = (tuple(args[o] for o in order), tgt)
                out[key] = out.get(key, Fraction(0)) + Fraction(sign, fact) * val
        return MultilinearMap(self.space, self.rank,
                              {k: v for k, v in out.items() if v != 0})

    def is_symmetric(self) -> bool:
        for s in range(self.rank - 1):
            for (args, tgt), val in self.entries.items():
                swapped = list(args)
                swapped[s], swapped[s + 1] = swapped[s + 1], swapped[s]
                sign = 1
                if self.space.parities[args[s]] and self.space.parities[args[s + 1]]:
                    sign = -1
                if self.entries.get((tuple(swapped), tgt), Fraction(0)) != sign * val:
                    return False
        return True

    def evaluate(self, vectors):
        """Value on a tuple of coefficient vectors; a dict {out index: Fraction}."""
        if len(vectors) != self.rank:
            raise ValueError("argument count mismatch")
        out = {}
        for (args, tgt), val in self.entries.items():
            c = val
            for slot, a in enumerate(args):
                c *= vectors[slot][a] if a < len(vectors[slot]) else 0
                if c == 0:
                    break
            if c:
                out[tgt] = out.get(tgt, Fraction(0)) + c
        return {k: v for k, v in out.items() if v != 0}

    def to_field(self) -> VectorField:
        """The vector field pi_n(y) * d_alpha for each entry y (x) alpha.

        The 1/n! of the averaging map is folded in here; the normalization is
        pinned by the divergence-as-supertrace cross-check.
        """
        space = self.space
        fact = factorial(self.rank)
        imgs = [SuperPolynomial.zero(space) for _ in space.names]
        for (args, tgt), val in self.entries.items():
            key, sign = sort_indices_with_sign(space, args)
            if key is None:
                continue
            imgs[tgt] = imgs[tgt] + SuperPolynomial(
                space, {key: Fraction(sign, fact) * val})
        return VectorField(space, imgs, self.parity())

    @classmethod
    def from_field(cls, eta: VectorField, degree: int) -> "MultilinearMap":
        """Inverse of to_field on fields whose images are pure degree n."""
        entries = {}
        space = eta.space
        for tgt, img in enumerate(eta.images):
            for key, val in img.terms.items():
                if len(key) != degree:
                    raise ValueError("field images must be homogeneous of the degree")
                pars = [space.parities[i] for i in key]
                for order in permutations(range(degree)):
                    sign = koszul_sign(order, pars)
                    akey = (tuple(key[o] for o in order), tgt)
                    entries[akey] = entries.get(akey, Fraction(0)) + sign * val
        return cls(space, degree, {k: v for k, v in entries.items() if v != 0})

    def supertrace_form(self, vectors) -> Fraction:
        """tr[x -> zeta(args, x)] for n-1 argument vectors."""
        if len(vectors) != self.rank - 1:
            raise ValueError("argument count mismatch")
        total = Fraction(0)
        n = len(self.space)
        for j in range(n):
            basis = [Fraction(0)] * n
            basis[j] = Fraction(1)
            val = self.evaluate(list(vectors) + [basis]).get(j, Fraction(0))
            total += (-1 if self.space.parities[j] else 1) * val
        return total


def divergence_as_supertrace(zeta: MultilinearMap, vectors) -> Fraction:
    return zeta.supertrace_form(vectors)
