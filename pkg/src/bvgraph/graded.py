"""Parities, Koszul signs, superspaces and sparse graded tensors.

Everything downstream (polynomials, forms, brackets, Wick sums) reduces its
sign bookkeeping to one primitive: the Koszul sign of rearranging an ordered
list of graded symbols.  That primitive lives here.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

EVEN = 0
ODD = 1


def perm_parity(perm) -> int:
    """Sign (+1/-1) of a permutation given as a sequence of images."""
    perm = list(perm)
    n = len(perm)
    sign = 1
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def koszul_sign(order, parities) -> int:
    """Koszul sign of the rearrangement placing source symbol order[j] at slot j.

    `parities` grades the *source* symbols.  Each inverted pair of odd symbols
    contributes -1; even symbols move freely.  Equivalent to decomposing the
    permutation into adjacent transpositions, each swap of symbols (a, b)
    contributing (-1)^{|a||b|}.
    """
    if len(order) != len(parities):
        raise ValueError("order/parities length mismatch")
    sign = 1
    n = len(order)
    for a in range(n):
        if parities[order[a]] == EVEN:
            continue
        for b in range(a + 1, n):
            if parities[order[b]] == ODD and order[a] > order[b]:
                sign = -sign
    return sign


class SuperSpace:
    """Finite-dimensional Z/2-graded vector space with a named, ordered basis."""

    __slots__ = ("names", "parities", "_dual_of", "_index")

    def __init__(self, names, parities, _dual_of=None):
        names = tuple(names)
        parities = tuple(int(p) % 2 for p in parities)
        if len(names) != len(parities):
            raise ValueError("names/parities length mismatch")
        if len(set(names)) != len(names):
            raise ValueError("basis labels must be unique")
        self.names = names
        self.parities = parities
        self._dual_of = _dual_of
        self._index = {nm: i for i, nm in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def dim(self):
        """Dimension pair (n_even, n_odd)."""
        ev = sum(1 for p in self.parities if p == EVEN)
        return (ev, len(self.parities) - ev)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def index(self, name: str) -> int:
        return self._index[name]

    def dual(self) -> "SuperSpace":
        if self._dual_of is not None:
            return self._dual_of
        return SuperSpace(tuple(nm + "*" for nm in self.names), self.parities,
                          _dual_of=self)

    def parity_reversed(self) -> "SuperSpace":
        """Parity reversion: same labels, flipped grading."""
        return SuperSpace(self.names, tuple(1 - p for p in self.parities))

    def __eq__(self, other):
        return (isinstance(other, SuperSpace)
                and self.names == other.names
                and self.parities == other.parities)

    def __hash__(self):
        return hash((self.names, self.parities))

    def __repr__(self):
        ev, od = self.dim()
        return f"SuperSpace({ev}|{od}: {', '.join(self.names)})"


def tensor_space(a: SuperSpace, b: SuperSpace) -> SuperSpace:
    """Tensor product space; basis is ordered pairs, parities add."""
    names = []
    parities = []
    for i, na in enumerate(a.names):
        for j, nb in enumerate(b.names):
            names.append(f"{na}(x){nb}")
            parities.append((a.parities[i] + b.parities[j]) % 2)
    return SuperSpace(names, parities)


# ---------------------------------------------------------------------------
# Sparse tensors: dict {tuple of basis indices: Fraction}

def tensor_clean(t: dict) -> dict:
    return {k: v for k, v in t.items() if v != 0}


def permute_tensor(space: SuperSpace, t: dict, order) -> dict:
    """Apply the signed place permutation: slot j of the result holds slot order[j]."""
    out = {}
    for key, val in t.items():
        pars = [space.parities[i] for i in key]
        sign = koszul_sign(order, pars)
        new = tuple(key[o] for o in order)
        out[new] = out.get(new, Fraction(0)) + sign * val
    return tensor_clean(out)


def symmetrize_tensor(space: SuperSpace, t: dict, rank: int) -> dict:
    """The map i_n: sum of all Koszul-signed place permutations."""
    out = {}
    for order in permutations(range(rank)):
        for key, val in permute_tensor(space, t, order).items():
            out[key] = out.get(key, Fraction(0)) + val
    return tensor_clean(out)


def sort_indices_with_sign(space: SuperSpace, key):
    """Sort basis indices ascending; Koszul sign of the sort, None on odd square."""
    key = list(key)
    sign = 1
    n = len(key)
    for a in range(n):
        for b in range(a + 1, n):
            if key[a] > key[b]:
                if space.parities[key[a]] and space.parities[key[b]]:
                    sign = -sign
            elif key[a] == key[b] and space.parities[key[a]]:
                return None, 0
    return tuple(sorted(key)), sign


def average_tensor(space: SuperSpace, t: dict, rank: int) -> dict:
    """The map pi_n: project onto the coinvariant representative and divide by n!.

    Keys repeating an odd index represent classes that vanish in the symmetric
    algebra and are dropped.
    """
    out = {}
    fact = factorial(rank)
    for key, val in t.items():
        skey, sign = sort_indices_with_sign(space, key)
        if skey is None:
            continue
        out[skey] = out.get(skey, Fraction(0)) + Fraction(sign, fact) * val
    return tensor_clean(out)


def is_symmetric_tensor(space: SuperSpace, t: dict, rank: int) -> bool:
    """Koszul-symmetry under adjacent transpositions (hence all of S_n)."""
    for s in range(rank - 1):
        order = list(range(rank))
        order[s], order[s + 1] = order[s + 1], order[s]
        if permute_tensor(space, t, order) != tensor_clean(dict(t)):
            return False
    return True
