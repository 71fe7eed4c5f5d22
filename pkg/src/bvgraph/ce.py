"""Chevalley-Eilenberg chains on the cubic-and-up Hamiltonians, delta, osp action.

Chains are stored on representatives: sparse combinations of wedge words of
canonically sorted monomials; wedge antisymmetry with Koszul signs is enforced
on construction.  Coinvariance is certified downstream by testing the
functionals against the osp action rather than building the quotient.
"""
from __future__ import annotations

from fractions import Fraction

from .graded import EVEN, ODD
from .superpoly import SuperPolynomial
from .symplectic import SymplecticSpace


def monomial_parity(space, key):
    return sum(space.parities[i] for i in key) % 2


def sort_wedge_word(space, word):
    """Canonical order for a word of monomial keys; (word, sign) or (None, 0).

    Adjacent transposition of factors h, h' costs -(-1)^{|h||h'|}; a repeated
    even factor kills the word, repeated odd factors are allowed.
    """
    word = list(word)
    n = len(word)
    sign = 1
    for i in range(n):
        pi = monomial_parity(space, word[i])
        for j in range(i + 1, n):
            if word[i] == word[j]:
                if pi == EVEN:
                    return None, 0  # repeated even factor: w ^ w = 0
                continue
            if (len(word[i]), word[i]) > (len(word[j]), word[j]):
                pj = monomial_parity(space, word[j])
                # adjacent transposition costs -(-1)^{|h||h'|}
                sign *= 1 if (pi and pj) else -1
    word.sort(key=lambda k: (len(k), k))
    return tuple(word), sign


class CEChain:
    """Formal rational combination of wedge words over a fixed even V_{2n|m}."""

    def __init__(self, symp: SymplecticSpace, terms=None):
        if symp.parity != EVEN:
            raise ValueError("CE chains live over an even symplectic space")
        self.symp = symp
        self.terms = {}
        for word, coeff in (terms or {}).items():
            self._accumulate(word, coeff)

    def _accumulate(self, word, coeff):
        if coeff == 0:
            return
        for key in word:
            if len(key) < 3:
                raise ValueError("wedge factors must have degree >= 3")
        sword, sign = sort_wedge_word(self.symp.space, word)
        if sword is None:
            return
        cur = self.terms.get(sword, Fraction(0)) + sign * coeff
        if cur:
            self.terms[sword] = cur
        else:
            self.terms.pop(sword, None)

    @classmethod
    def from_polynomials(cls, symp, polys, coeff=1):
        """Wedge of polynomials, expanded multilinearly into monomial words."""
        out = cls(symp)
        words = [((), Fraction(coeff))]
        for p in polys:
            if p.space != symp.space:
                raise ValueError("factor on the wrong space")
            words = [(w + (key,), c * v)
                     for (w, c) in words for key, v in p.terms.items()]
        for word, c in words:
            out._accumulate(word, c)
        return out

    def add(self, other: "CEChain") -> "CEChain":
        out = CEChain(self.symp, dict(self.terms))
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def scale(self, c) -> "CEChain":
        return CEChain(self.symp, {w: v * Fraction(c) for w, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, CEChain) and self.symp is other.symp
                and self.terms == other.terms)

    def word_parities(self, word):
        return [monomial_parity(self.symp.space, k) for k in word]

    def render(self):
        bits = []
        for word, c in sorted(self.terms.items()):
            monos = [SuperPolynomial(self.symp.space, {k: Fraction(1)}).render()
                     for k in word]
            bits.append(f"({c})*[" + " ^ ".join(monos) + "]")
        return " + ".join(bits) if bits else "0"

    __repr__ = render

    def to_json(self):
        names = self.symp.space.names
        out = []
        for word, c in sorted(self.terms.items()):
            out.append({"coeff": str(c),
                        "word": ["*".join(names[i] for i in key) for key in word]})
        return out


def ce_differential(chain: CEChain) -> CEChain:
    """delta(g_1 ^ ... ^ g_m) = sum_{i<j} (-1)^{p(g)} [g_i,g_j] ^ rest.

    p(g) = |g_i|(|g_1|+..+|g_{i-1}|) + |g_j|(|g_1|+..+|g_{j-1}|) + |g_i||g_j|
           + i + j - 1, with 1-based positions, exactly as printed.
    """
    symp = chain.symp
    out = CEChain(symp)
    for word, coeff in chain.terms.items():
        pars = chain.word_parities(word)
        m = len(word)
        for i in range(m):
            for j in range(i + 1, m):
                p = (pars[i] * sum(pars[:i]) + pars[j] * sum(pars[:j])
                     + pars[i] * pars[j] + (i + 1) + (j + 1) - 1)
                sign = -1 if p % 2 else 1
                gi = SuperPolynomial(symp.space, {word[i]: Fraction(1)})
                gj = SuperPolynomial(symp.space, {word[j]: Fraction(1)})
                bracket = symp.poisson(gi, gj)
                rest = tuple(word[t] for t in range(m) if t not in (i, j))
                for bkey, bval in bracket.terms.items():
                    out._accumulate((bkey,) + rest, sign * coeff * bval)
    return out


def osp_action(eta: SuperPolynomial, chain: CEChain) -> CEChain:
    """Adjoint action of a quadratic Hamiltonian, extended by the Leibniz rule."""
    if any(len(k) != 2 for k in eta.terms):
        raise ValueError("osp elements are quadratic Hamiltonians")
    symp = chain.symp
    pe = eta.parity()
    out = CEChain(symp)
    for word, coeff in chain.terms.items():
        pars = chain.word_parities(word)
        for i in range(len(word)):
            sign = 1
            if pe == ODD and sum(pars[:i]) % 2:
                sign = -1
            gi = SuperPolynomial(symp.space, {word[i]: Fraction(1)})
            bracket = symp.poisson(eta, gi)
            for bkey, bval in bracket.terms.items():
                out._accumulate(word[:i] + (bkey,) + word[i + 1:],
                                sign * coeff * bval)
    return out
