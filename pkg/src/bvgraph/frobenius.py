"""Differential graded commutative Frobenius algebras with odd pairing.

An algebra is given by sparse structure constants, a differential matrix and a
pairing matrix over a named basis.  Elements are sparse coefficient dicts
{basis index: Fraction}.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .graded import EVEN, ODD, SuperSpace, koszul_sign
from .symplectic import BilinearForm


def _vec_add(u, v):
    out = dict(u)
    for k, c in v.items():
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if c != 0}


def _vec_scale(u, c):
    c = Fraction(c)
    return {k: v * c for k, v in u.items() if v * c != 0}


class FrobeniusAlgebra:
    def __init__(self, space: SuperSpace, mult, diff, pairing, name=""):
        """mult: {(i,j): {k: coeff}}; diff: matrix d[k][j] with d(a_j) = sum_k d[k][j] a_k;
        pairing: matrix of <a_i, a_j>."""
        self.space = space
        self.name = name
        n = len(space)
        self.mult = {ij: {k: Fraction(c) for k, c in img.items() if c != 0}
                     for ij, img in mult.items()}
        self.diff = [[Fraction(diff[i][j]) for j in range(n)] for i in range(n)]
        self.pairing = BilinearForm(space, pairing, ODD, "sym", check=False)

    # -- element algebra ------------------------------------------------------
    def basis_element(self, i):
        return {i: Fraction(1)}

    def mul(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                img = self.mult.get((i, j))
                if not img:
                    continue
                for k, c in img.items():
                    out[k] = out.get(k, Fraction(0)) + a * b * c
        return {k: c for k, c in out.items() if c != 0}

    def mul_chain(self, elements):
        out = None
        for e in elements:
            out = e if out is None else self.mul(out, e)
            if not out:
                return {}
        return out if out is not None else {}

    def d_of(self, u):
        out = {}
        for j, c in u.items():
            for k in range(len(self.space)):
                if self.diff[k][j]:
                    out[k] = out.get(k, Fraction(0)) + self.diff[k][j] * c
        return {k: c for k, c in out.items() if c != 0}

    def pair(self, u, v) -> Fraction:
        total = Fraction(0)
        for i, a in u.items():
            for j, b in v.items():
                total += a * self.pairing.rows[i][j] * b
        return total

    def element_parity(self, u):
        ps = {self.space.parities[i] for i in u}
        if len(ps) > 1:
            raise ValueError("element is not parity homogeneous")
        return ps.pop() if ps else None

    # -- structural data -----------------------------------------------------
    def d_matrix(self):
        return [row[:] for row in self.diff]

    def image_of_d(self):
        return linalg.column_space_basis(self.diff)

    def kernel_of_d(self):
        return linalg.nullspace(self.diff)


def verify_axioms(alg: FrobeniusAlgebra) -> dict:
    """Exhaustive check of the DG Frobenius axioms over basis tuples."""
    failures = []
    sp = alg.space
    n = len(sp)
    p = sp.parities
    e = [alg.basis_element(i) for i in range(n)]

    for (i, j), img in alg.mult.items():
        for k, c in img.items():
            if c != 0 and p[k] != (p[i] + p[j]) % 2:
                failures.append(f"product a{i}*a{j} has a component of wrong parity")
    for i in range(n):
        for j in range(n):
            lhs = alg.mul(e[i], e[j])
            rhs = _vec_scale(alg.mul(e[j], e[i]), -1 if (p[i] and p[j]) else 1)
            if lhs != rhs:
                failures.append(f"graded commutativity fails at ({i},{j})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if alg.mul(alg.mul(e[i], e[j]), e[k]) != alg.mul(e[i], alg.mul(e[j], e[k])):
                    failures.append(f"associativity fails at ({i},{j},{k})")
    try:
        alg.pairing.validate()
    except ValueError as exc:
        failures.append(f"pairing: {exc}")
    if not alg.pairing.is_nondegenerate():
        failures.append("pairing is degenerate")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if alg.pair(alg.mul(e[i], e[j]), e[k]) != alg.pair(e[i], alg.mul(e[j], e[k])):
                    failures.append(f"invariance <ab,c>=<a,bc> fails at ({i},{j},{k})")
    for j in range(n):
        for k in range(n):
            if alg.diff[k][j] != 0 and p[k] != (p[j] + 1) % 2:
                failures.append(f"differential is not odd at column {j}")
    for i in range(n):
        for j in range(n):
            lhs = alg.d_of(alg.mul(e[i], e[j]))
            rhs = _vec_add(alg.mul(alg.d_of(e[i]), e[j]),
                           _vec_scale(alg.mul(e[i], alg.d_of(e[j])),
                                      -1 if p[i] else 1))
            if lhs != rhs:
                failures.append(f"Leibniz rule for d fails at ({i},{j})")
    for j in range(n):
        if alg.d_of(alg.d_of(e[j])):
            failures.append(f"d^2 != 0 on basis vector {j}")
    for i in range(n):
        for j in range(n):
            lhs = alg.pair(alg.d_of(e[i]), e[j])
            rhs = alg.pair(e[i], alg.d_of(e[j])) * (-1 if p[i] else 1)
            if lhs + rhs != 0:
                failures.append(f"d-invariance of the pairing fails at ({i},{j})")
    return {"ok": not failures, "failures": sorted(set(failures))}


def degenerate_form(alg: FrobeniusAlgebra) -> BilinearForm:
    """<a,b>_d = (-1)^a <a, d(b)> ; even, super-antisymmetric, kernel >= ker d."""
    n = len(alg.space)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        si = -1 if alg.space.parities[i] else 1
        for j in range(n):
            rows[i][j] = si * alg.pair(alg.basis_element(i),
                                       alg.d_of(alg.basis_element(j)))
    return BilinearForm(alg.space, rows, EVEN, "skew")


def check_contractible(alg: FrobeniusAlgebra):
    """ker d = im d test; returns (flag, dim d(A))."""
    img = alg.image_of_d()
    ker = alg.kernel_of_d()
    rk_img = len(img)
    if rk_img != len(ker):
        return False, rk_img
    stacked = [list(v) for v in img] + [list(v) for v in ker]
    return linalg.rank(stacked) == rk_img, rk_img


class Gauge:
    """A graded isotropic complement L of d(A) with nondegenerate <-,->_d."""

    def __init__(self, alg: FrobeniusAlgebra, vectors, label=""):
        self.alg = alg
        self.vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        self.label = label
        self.parities = []
        for v in self.vectors:
            ps = {alg.space.parities[i] for i, c in enumerate(v) if c != 0}
            if len(ps) != 1:
                raise ValueError("gauge basis vectors must be parity homogeneous")
            self.parities.append(ps.pop())
        self.validate()

    def validate(self):
        alg = self.alg
        n = len(alg.space)
        if 2 * len(self.vectors) != n:
            raise ValueError("gauge must be half-dimensional")
        for u in self.vectors:
            for v in self.vectors:
                if alg.pairing.evaluate(u, v) != 0:
                    raise ValueError("gauge is not isotropic for the pairing")
        img = alg.image_of_d()
        stacked = [list(v) for v in self.vectors] + [list(v) for v in img]
        if linalg.rank(stacked) != n:
            raise ValueError("gauge does not complement d(A)")
        if not self.restricted_form().is_nondegenerate():
            raise ValueError("<-,->_d restricted to the gauge is degenerate")

    def subspace(self) -> SuperSpace:
        return SuperSpace([f"l{i}" for i in range(len(self.vectors))], self.parities)

    def restricted_form(self) -> BilinearForm:
        dform = degenerate_form(self.alg)
        rows = dform.restrict(self.vectors)
        return BilinearForm(self.subspace(), rows, EVEN, "skew")

    def to_json(self):
        return {"label": self.label,
                "basis": [[str(x) for x in v] for v in self.vectors]}


def find_gauges(alg: FrobeniusAlgebra, values=(0, 1), limit=64):
    """Enumerate graded isotropic complements of d(A) over a rational parameter box.

    Complements are graphs of parity-preserving maps phi: C0 -> d(A) over a
    reference complement C0; isotropy is linear in phi because d(A) is
    isotropic, so the family is an affine subspace.  Returns (gauges, info).
    """
    flag, _ = check_contractible(alg)
    if not flag:
        return [], {"error": "algebra is not contractible"}
    n = len(alg.space)
    img = alg.image_of_d()
    # graded reference complement from standard basis vectors
    c0 = []
    current = [list(v) for v in img]
    for i in range(n):
        cand = [Fraction(0)] * n
        cand[i] = Fraction(1)
        if linalg.rank(current + [cand]) > len(current):
            current.append(cand)
            c0.append(cand)
    # parameters t[r][s] for phi(c0_r) = sum_s t[r][s] img_s (parity matching)
    params = []
    for r, cv in enumerate(c0):
        pr = alg.element_parity({i: c for i, c in enumerate(cv) if c})
        for s, iv in enumerate(img):
            ps = alg.element_parity({i: c for i, c in enumerate(iv) if c})
            if pr == ps:
                params.append((r, s))
    # isotropy: <c_r + phi c_r, c_q + phi c_q> = 0, linear in t
    rows, rhs = [], []
    for r in range(len(c0)):
        for q in range(r, len(c0)):
            row = [Fraction(0)] * len(params)
            for pidx, (pr, ps) in enumerate(params):
                if pr == r:
                    row[pidx] += alg.pairing.evaluate(img[ps], c0[q])
                if pr == q:
                    row[pidx] += alg.pairing.evaluate(c0[r], img[ps])
            const = alg.pairing.evaluate(c0[r], c0[q])
            if any(row) or const:
                rows.append(row)
                rhs.append(-const)
    if rows:
        particular = linalg.solve(rows, rhs)
        if particular is None:
            return [], {"error": "no isotropic complement in this parametrization"}
        homogeneous = linalg.nullspace(rows)
    else:
        particular = [Fraction(0)] * len(params)
        homogeneous = linalg.nullspace([[Fraction(0)] * len(params)]) if params else []
    info = {"n_parameters": len(homogeneous),
            "reference_complement": [[str(x) for x in v] for v in c0]}

    def build(tvals):
        vectors = []
        for r, cv in enumerate(c0):
            vec = list(cv)
            for pidx, (pr, ps) in enumerate(params):
                if pr == r and tvals[pidx]:
                    vec = [a + tvals[pidx] * b for a, b in zip(vec, img[ps])]
            vectors.append(vec)
        return vectors

    gauges = []
    assignments = [[]]
    for _ in homogeneous:
        assignments = [a + [v] for a in assignments for v in values]
        if len(assignments) > limit:
            assignments = assignments[:limit]
    for lam in assignments:
        tvals = list(particular)
        for l, hvec in zip(lam, homogeneous):
            if l:
                tvals = [t + Fraction(l) * h for t, h in zip(tvals, hvec)]
        try:
            gauges.append(Gauge(alg, build(tvals), label=str(tuple(lam))))
        except ValueError:
            continue
    return gauges, info


def vertex_tensor(alg: FrobeniusAlgebra, k: int) -> dict:
    """mu_k(a_1..a_k) = <a_1 ... a_{k-1}, a_k>, as a sparse coefficient dict."""
    if k < 3:
        raise ValueError("vertex tensors need valence >= 3")
    n = len(alg.space)
    out = {}
    e = [alg.basis_element(i) for i in range(n)]
    for tup in product(range(n), repeat=k):
        prod = alg.mul_chain([e[i] for i in tup[:-1]])
        val = alg.pair(prod, e[tup[-1]])
        if val:
            out[tup] = val
    return out


def vertex_tensor_on_vectors(alg: FrobeniusAlgebra, vectors, k: int) -> dict:
    """mu_k evaluated on a list of elements (e.g. a gauge basis)."""
    if k < 3:
        raise ValueError("vertex tensors need valence >= 3")
    els = [{i: c for i, c in enumerate(v) if c != 0} for v in vectors]
    out = {}
    for tup in product(range(len(els)), repeat=k):
        prod = alg.mul_chain([els[i] for i in tup[:-1]])
        val = alg.pair(prod, els[tup[-1]])
        if val:
            out[tup] = val
    return out


def vertex_tensor_is_symmetric(space_parities, tensor, k) -> bool:
    for s in range(k - 1):
        for key, val in tensor.items():
            swapped = list(key)
            swapped[s], swapped[s + 1] = swapped[s + 1], swapped[s]
            sgn = -1 if (space_parities[key[s]] and space_parities[key[s + 1]]) else 1
            if tensor.get(tuple(swapped), Fraction(0)) != sgn * val:
                return False
    return True


# ---------------------------------------------------------------------------
# Grassmann fixtures

def grassmann_space(k: int):
    """Basis of Lambda(xi_1..xi_k) indexed by sorted generator subsets."""
    subsets = []
    for r in range(k + 1):
        subsets.extend(combinations(range(1, k + 1), r))
    names = ["1"] + ["xi" + "".join(str(i) for i in s) for s in subsets[1:]]
    parities = [len(s) % 2 for s in subsets]
    return subsets, SuperSpace(names, parities)


def _grassmann_mul(a, b):
    """Product of generator subsets, (subset, sign) or (None, 0)."""
    if set(a) & set(b):
        return None, 0
    merged = a + b
    sign = 1
    items = list(merged)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return tuple(sorted(merged)), sign


def grassmann_algebra(k: int, d_images: dict, name="") -> FrobeniusAlgebra:
    """Lambda(xi_1..xi_k) with top-coefficient pairing and the given differential.

    d_images maps a basis subset to the element dict of its d-image; d is a
    matrix, not a derivation: callers supply every column they need.
    """
    subsets, space = grassmann_space(k)
    index = {s: i for i, s in enumerate(subsets)}
    n = len(subsets)
    mult = {}
    for i, a in enumerate(subsets):
        for j, b in enumerate(subsets):
            m, sign = _grassmann_mul(a, b)
            if m is not None:
                mult[(i, j)] = {index[m]: Fraction(sign)}
    top = tuple(range(1, k + 1))
    pairing = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(subsets):
        for j, b in enumerate(subsets):
            m, sign = _grassmann_mul(a, b)
            if m == top:
                pairing[i][j] = Fraction(sign)
    diff = [[Fraction(0)] * n for _ in range(n)]
    for s, img in d_images.items():
        for t, c in img.items():
            diff[index[t]][index[s]] = Fraction(c)
    return FrobeniusAlgebra(space, mult, diff, pairing, name=name)


def k2() -> FrobeniusAlgebra:
    """Lambda(xi), d(xi) = 1, <1, xi> = 1 (the minimal 1|1 fixture)."""
    return grassmann_algebra(1, {(1,): {(): Fraction(1)}}, name="K2")


def g3() -> FrobeniusAlgebra:
    """Lambda(xi1,xi2,xi3), d = (1 + xi2 xi3) d/dxi1, top-coefficient pairing."""
    d_images = {
        (1,): {(): Fraction(1), (2, 3): Fraction(1)},
        (1, 2): {(2,): Fraction(1)},
        (1, 3): {(3,): Fraction(1)},
        (1, 2, 3): {(2, 3): Fraction(1)},
    }
    return grassmann_algebra(3, d_images, name="G3")


def k2_gauge(alg=None) -> Gauge:
    alg = alg or k2()
    return Gauge(alg, [(0, 1)], label="K2")


def g3_gauge(a=0, b=0, c=0, d=0, alg=None) -> Gauge:
    """The 4-parameter G3 gauge family solved from the isotropy constraints.

    L(a,b,c,d) = span{xi1 + a xi2 + b xi3,
                      xi1xi2 - d - b xi2xi3,
                      xi1xi3 + c + a xi2xi3,
                      xi1xi2xi3 + c xi2 + d xi3}.
    """
    alg = alg or g3()
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    idx = {nm: i for i, nm in enumerate(alg.space.names)}
    z = [Fraction(0)] * 8

    def vec(**comps):
        v = list(z)
        for nm, coeff in comps.items():
            v[idx[nm]] = coeff
        return v

    vectors = [
        vec(xi1=Fraction(1), xi2=a, xi3=b),
        vec(xi12=Fraction(1), **{"1": -d}, xi23=-b),
        vec(xi13=Fraction(1), **{"1": c}, xi23=a),
        vec(xi123=Fraction(1), xi2=c, xi3=d),
    ]
    return Gauge(alg, vectors, label=f"G3({a},{b},{c},{d})")


# ---------------------------------------------------------------------------
# JSON algebra format (see the cli module for the schema)

def algebra_to_json(alg: FrobeniusAlgebra) -> dict:
    mult = []
    for (i, j), img in sorted(alg.mult.items()):
        for k, c in sorted(img.items()):
            mult.append([i, j, k, str(c)])
    pairing = []
    diff = []
    n = len(alg.space)
    for i in range(n):
        for j in range(n):
            if alg.pairing.rows[i][j]:
                pairing.append([i, j, str(alg.pairing.rows[i][j])])
            if alg.diff[i][j]:
                diff.append([i, j, str(alg.diff[i][j])])
    return {"name": alg.name,
            "basis": [{"name": nm, "parity": p}
                      for nm, p in zip(alg.space.names, alg.space.parities)],
            "mult": mult, "pairing": pairing, "differential": diff}


def algebra_from_json(data: dict) -> FrobeniusAlgebra:
    basis = data["basis"]
    space = SuperSpace([b["name"] for b in basis], [b["parity"] for b in basis])
    mult = {}
    for i, j, k, c in data.get("mult", []):
        mult.setdefault((i, j), {})[k] = Fraction(c)
    n = len(space)
    pairing = [[Fraction(0)] * n for _ in range(n)]
    for i, j, c in data.get("pairing", []):
        pairing[i][j] = Fraction(c)
    diff = [[Fraction(0)] * n for _ in range(n)]
    for i, j, c in data.get("differential", []):
        diff[i][j] = Fraction(c)
    return FrobeniusAlgebra(space, mult, diff, pairing, name=data.get("name", ""))


def load_algebra(path_or_name: str) -> FrobeniusAlgebra:
    if path_or_name.upper() == "K2":
        return k2()
    if path_or_name.upper() == "G3":
        return g3()
    with open(path_or_name, "r", encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))
