"""Constant symplectic structures, Hamiltonian fields, brackets, odd Laplacian.

All brackets and the Laplacian run through the generic machinery (solve
i_alpha(omega) = da, then Lie/divergence); canonical-coordinate formulas exist
only as independent test oracles.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .graded import EVEN, ODD, SuperSpace
from .forms import FormContext
from .superpoly import SuperPolynomial, VectorField, divergence, poly_from_vector


class BilinearForm:
    """Matrix of a parity-homogeneous super-(skew)symmetric bilinear form."""

    __slots__ = ("space", "rows", "parity", "symmetry")

    def __init__(self, space: SuperSpace, rows, parity, symmetry, check=True):
        self.space = space
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.parity = parity
        self.symmetry = symmetry  # "sym" | "skew"
        if check:
            self.validate()

    def validate(self):
        n = len(self.space)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("matrix shape mismatch")
        s = 1 if self.symmetry == "sym" else -1
        for i in range(n):
            pi = self.space.parities[i]
            for j in range(n):
                pj = self.space.parities[j]
                if self.rows[i][j] != 0 and (pi + pj) % 2 != self.parity:
                    raise ValueError(f"entry ({i},{j}) breaks parity homogeneity")
                koszul = -1 if (pi and pj) else 1
                if self.rows[i][j] != s * koszul * self.rows[j][i]:
                    raise ValueError(f"declared {self.symmetry}metry fails at ({i},{j})")

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def matrix(self):
        return [list(r) for r in self.rows]

    def is_nondegenerate(self) -> bool:
        n = len(self.space)
        return n == 0 or linalg.rank(self.matrix()) == n

    def inverse(self) -> "BilinearForm":
        """Inverse form on the dual space, via the D_l/D_r diagram.

        Chasing the diagram with Koszul signs gives Binv = B^{-1} * E with
        E = diag((-1)^{p_i * |form|}); for odd symmetric forms the result is
        antisymmetric.
        """
        if not self.is_nondegenerate():
            raise ValueError("form is degenerate")
        binv = linalg.inverse(self.matrix())
        if self.parity == ODD:
            for i in range(len(binv)):
                for j in range(len(binv)):
                    if self.space.parities[j] == ODD:
                        binv[i][j] = -binv[i][j]
        sym = self.symmetry
        if self.parity == ODD:
            sym = "skew" if self.symmetry == "sym" else "sym"
        return BilinearForm(self.space.dual(), binv, self.parity, sym)

    def evaluate(self, u, v) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b:
                    total += a * self.rows[i][j] * b
        return total

    def restrict(self, vectors):
        """Gram matrix on a list of (homogeneous) vectors."""
        return [[self.evaluate(u, v) for v in vectors] for u in vectors]

    def tensor_with(self, other: "BilinearForm", space=None) -> "BilinearForm":
        """<a1 (x) w1, a2 (x) w2> = (-1)^{|w1||a2|} <a1,a2> <w1,w2>."""
        from .graded import tensor_space
        sp = space or tensor_space(self.space, other.space)
        na, nw = len(self.space), len(other.space)
        rows = [[Fraction(0)] * (na * nw) for _ in range(na * nw)]
        for a1 in range(na):
            for w1 in range(nw):
                for a2 in range(na):
                    sgn = -1 if (other.space.parities[w1] and self.space.parities[a2]) else 1
                    for w2 in range(nw):
                        v = self.rows[a1][a2] * other.rows[w1][w2]
                        if v:
                            rows[a1 * nw + w1][a2 * nw + w2] = sgn * v
        parity = (self.parity + other.parity) % 2
        symmetry = "sym" if self.symmetry == other.symmetry else "skew"
        return BilinearForm(sp, rows, parity, symmetry)


def i2_of_quadratic(sigma: SuperPolynomial) -> list:
    """The bilinear form i_2(sigma) of a quadratic function, as a matrix."""
    n = len(sigma.space)
    pars = sigma.space.parities
    rows = [[Fraction(0)] * n for _ in range(n)]
    for key, val in sigma.terms.items():
        if len(key) != 2:
            raise ValueError("sigma must be quadratic")
        i, j = key
        if i == j:
            rows[i][i] += 2 * val
        else:
            rows[i][j] += val
            rows[j][i] += (-1 if (pars[i] and pars[j]) else 1) * val
    return rows


def pi2_of_form(b: BilinearForm) -> SuperPolynomial:
    """The quadratic Hamiltonian pi_2(<-,->); inverse of i2 on (super)symmetric forms."""
    space = b.space
    sp = SuperPolynomial.zero(space)
    n = len(space)
    for i in range(n):
        for j in range(n):
            if b.rows[i][j]:
                sp = sp + SuperPolynomial.monomial(space, (i, j), b.rows[i][j] / 2)
    return sp


def upsilon(ctx: FormContext, omega: SuperPolynomial) -> BilinearForm:
    """Upsilon(dx dy) = (-1)^x [x(x)y - (-1)^{xy} y(x)x], on constant 2-forms."""
    if not ctx.is_constant_form(omega):
        raise ValueError("2-form must be constant")
    n = ctx.n
    pars = ctx.base.parities
    rows = [[Fraction(0)] * n for _ in range(n)]
    for key, val in omega.terms.items():
        if len(key) != 2:
            raise ValueError("need a 2-form")
        i, j = key[0] - n, key[1] - n
        si = -1 if pars[i] else 1
        if i == j:
            rows[i][i] += -2 * val  # only odd y allows dy*dy; Upsilon gives -2 x(x)x
        else:
            rows[i][j] += si * val
            rows[j][i] += -si * (-1 if (pars[i] and pars[j]) else 1) * val
    parity = None
    for key in omega.terms:
        p = (pars[key[0] - n] + pars[key[1] - n]) % 2
        parity = p if parity is None else parity
        if parity != p:
            raise ValueError("2-form must be parity homogeneous")
    return BilinearForm(ctx.base, rows, EVEN if parity is None else parity, "skew")


def upsilon_inverse(ctx: FormContext, b: BilinearForm) -> SuperPolynomial:
    """The constant 2-form with Upsilon(omega) = b, for super-skew b."""
    n = ctx.n
    pars = ctx.base.parities
    omega = SuperPolynomial.zero(ctx.space)
    for i in range(n):
        for j in range(n):
            v = b.rows[i][j]
            if v == 0:
                continue
            if i == j:
                omega = omega + SuperPolynomial.monomial(
                    ctx.space, (n + i, n + i), -v / 2)
            elif i < j:
                si = -1 if pars[i] else 1
                omega = omega + SuperPolynomial.monomial(
                    ctx.space, (n + i, n + j), si * v)
    return omega


class SymplecticSpace:
    """Superspace with a constant nondegenerate 2-form (even or odd)."""

    def __init__(self, space: SuperSpace, omega: SuperPolynomial):
        self.space = space
        self.ctx = FormContext(space)
        if omega.space != self.ctx.space:
            raise ValueError("omega must live in the form algebra of the space")
        self.omega = omega
        self.form = upsilon(self.ctx, omega)
        if not self.form.is_nondegenerate():
            raise ValueError("symplectic form is degenerate")
        self.parity = self.form.parity
        if self.parity == ODD:
            ev, od = space.dim()
            if ev != od:
                raise ValueError("odd symplectic space must have dimension n|n")
        # Contraction matrix: i_{d/dy_u}(omega) = sum_v M[v][u] dy_v.
        n = len(space)
        m = [[Fraction(0)] * n for _ in range(n)]
        for u in range(n):
            lam = self.ctx.contract(VectorField.coordinate(space, u), omega)
            for v, c in enumerate(self.ctx.one_form_coefficients(lam)):
                m[v][u] = c.terms.get((), Fraction(0))
        self._m = m
        self._minv = linalg.inverse(m)

    # -- canonical models -----------------------------------------------------
    @classmethod
    def canonical_even(cls, n: int, m: int) -> "SymplecticSpace":
        """V_{2n|m} with omega = sum dp_i dq_i + 1/2 sum dx_i dx_i."""
        names = ([f"p{i+1}" for i in range(n)] + [f"q{i+1}" for i in range(n)]
                 + [f"x{i+1}" for i in range(m)])
        parities = [EVEN] * (2 * n) + [ODD] * m
        space = SuperSpace(names, parities)
        ctx = FormContext(space)
        omega = SuperPolynomial.zero(ctx.space)
        for i in range(n):
            omega = omega + SuperPolynomial.monomial(
                ctx.space, (len(space) + i, len(space) + n + i), 1)
        for j in range(m):
            k = len(space) + 2 * n + j
            omega = omega + SuperPolynomial.monomial(ctx.space, (k, k), Fraction(1, 2))
        return cls(space, omega)

    @classmethod
    def canonical_odd(cls, n: int) -> "SymplecticSpace":
        """U_{n|n} with omega = sum dx_i dxi_i."""
        names = [f"x{i+1}" for i in range(n)] + [f"xi{i+1}" for i in range(n)]
        parities = [EVEN] * n + [ODD] * n
        space = SuperSpace(names, parities)
        ctx = FormContext(space)
        omega = SuperPolynomial.zero(ctx.space)
        for i in range(n):
            omega = omega + SuperPolynomial.monomial(
                ctx.space, (2 * n + i, 2 * n + n + i), 1)
        return cls(space, omega)

    @classmethod
    def from_bilinear(cls, b: BilinearForm) -> "SymplecticSpace":
        ctx = FormContext(b.space)
        return cls(b.space, upsilon_inverse(ctx, b))

    # -- Hamiltonian correspondence --------------------------------------------
    def hamiltonian_field(self, a: SuperPolynomial) -> VectorField:
        """Phi^{-1}(da): the field alpha with i_alpha(omega) = da."""
        if a.space != self.space:
            raise ValueError("Hamiltonian not on this space")
        da = self.ctx.d(self.ctx.inject(a))
        coeffs = self.ctx.one_form_coefficients(da)
        n = len(self.space)
        imgs = []
        for u in range(n):
            img = SuperPolynomial.zero(self.space)
            for v in range(n):
                if self._minv[u][v]:
                    img = img + coeffs[v] * self._minv[u][v]
            imgs.append(img)
        return VectorField(self.space, imgs)

    def hamiltonian_of(self, eta: VectorField) -> SuperPolynomial:
        """Inverse direction: the Hamiltonian of a symplectic field (up to constants)."""
        lam = self.ctx.contract(eta, self.omega)
        return self.ctx.poincare_integrate(lam)

    def is_symplectic_field(self, eta: VectorField) -> bool:
        return self.ctx.lie(eta, self.omega).is_zero()

    # -- brackets ---------------------------------------------------------------
    def poisson(self, a: SuperPolynomial, b: SuperPolynomial) -> SuperPolynomial:
        """{a,b} = (-1)^a L_alpha(b) on an even symplectic space."""
        if self.parity != EVEN:
            raise ValueError("Poisson bracket needs an even symplectic form")
        out = SuperPolynomial.zero(self.space)
        for part in a.parity_components():
            if part.is_zero():
                continue
            sgn = -1 if part.parity() else 1
            out = out + sgn * self.hamiltonian_field(part)(b)
        return out

    def antibracket(self, a: SuperPolynomial, b: SuperPolynomial) -> SuperPolynomial:
        """{a,b} = L_alpha(b) on an odd symplectic space (linear P-manifold)."""
        if self.parity != ODD:
            raise ValueError("antibracket needs an odd symplectic form")
        return self.hamiltonian_field(a)(b)

    def odd_laplacian(self, a: SuperPolynomial) -> SuperPolynomial:
        """Delta(a) = 1/2 nabla(Phi^{-1} da)."""
        if self.parity != ODD:
            raise ValueError("the odd Laplacian needs an odd symplectic form")
        return divergence(self.hamiltonian_field(a)) / 2

    def canonical_laplacian_oracle(self, a: SuperPolynomial) -> SuperPolynomial:
        """sum_i d/dx_i d/dxi_i, valid on the canonical U_{n|n} only (test oracle)."""
        n = len(self.space) // 2
        out = SuperPolynomial.zero(self.space)
        for i in range(n):
            out = out + a.deriv_left(n + i).deriv_left(i)
        return out


class LagrangianSubspace:
    """Graded maximally isotropic subspace of an odd symplectic space."""

    def __init__(self, symp: SymplecticSpace, vectors):
        if symp.parity != ODD:
            raise ValueError("Lagrangian gauges live in odd symplectic spaces")
        self.symp = symp
        self.vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        n = len(symp.space) // 2
        if len(self.vectors) != n:
            raise ValueError("a Lagrangian in n|n has total dimension n")
        self.parities = []
        for v in self.vectors:
            ps = {symp.space.parities[i] for i, c in enumerate(v) if c != 0}
            if len(ps) != 1:
                raise ValueError("basis vectors must be parity homogeneous")
            self.parities.append(ps.pop())
        if linalg.rank([list(v) for v in self.vectors]) != n:
            raise ValueError("basis vectors are dependent")
        for u in self.vectors:
            for w in self.vectors:
                if symp.form.evaluate(u, w) != 0:
                    raise ValueError("subspace is not isotropic")

    def dim(self):
        ev = sum(1 for p in self.parities if p == EVEN)
        return (ev, len(self.parities) - ev)

    def subspace(self, prefix="l") -> SuperSpace:
        return SuperSpace([f"{prefix}{i}" for i in range(len(self.vectors))],
                          self.parities)


def lagrangian_from_generating_function(symp: SymplecticSpace, phi: SuperPolynomial,
                                        k: int) -> LagrangianSubspace:
    """Graph-of-a-gradient Lagrangian on canonical U_{n|n}.

    phi must be odd quadratic in (x_1..x_k, xi_{k+1}..xi_n) only; the locus is
    xi_i = -d phi/dx_i (i <= k), x_j = d phi/dxi_j (j > k).
    """
    n = len(symp.space) // 2
    if phi.parity() not in (None, ODD) or any(len(key) != 2 for key in phi.terms):
        raise ValueError("generating function must be odd quadratic")
    for key in phi.terms:
        for v in key:
            if (v < n and v >= k) or (v >= n and v < n + k):
                raise ValueError("phi may only involve x_1..x_k, xi_{k+1}..xi_n")
    vectors = []
    for s in range(k):          # even directions: x_s = 1
        vec = [Fraction(0)] * (2 * n)
        vec[s] = Fraction(1)
        for j in range(k, n):   # x_j = d phi / dxi_j
            vec[j] = phi.deriv_left(n + j).coefficient((s,))
        vectors.append(vec)
    for t in range(k, n):       # odd directions: xi_t = 1
        vec = [Fraction(0)] * (2 * n)
        vec[n + t] = Fraction(1)
        for i in range(k):      # xi_i = -d phi / dx_i
            vec[n + i] = -phi.deriv_left(i).coefficient((n + t,))
        vectors.append(vec)
    return LagrangianSubspace(symp, vectors)


def canonical_lagrangian(symp: SymplecticSpace, k: int) -> LagrangianSubspace:
    ctx_n = len(symp.space) // 2
    zero = SuperPolynomial.zero(symp.space)
    return lagrangian_from_generating_function(symp, zero, k)


def restrict_polynomial(f: SuperPolynomial, vectors, sub_space: SuperSpace) -> SuperPolynomial:
    """Pull back along the inclusion span(vectors) -> ambient, in given coordinates."""
    images = []
    amb = f.space
    for i in range(len(amb)):
        img = SuperPolynomial.zero(sub_space)
        for s, v in enumerate(vectors):
            if v[i]:
                img = img + SuperPolynomial(sub_space, {(s,): Fraction(v[i])})
        images.append(img)
    return f.substitute(images, sub_space)


def duality_map(symp: SymplecticSpace, g: SuperPolynomial):
    """Inverse-Fourier duality D: functions on U_{n|n} -> forms on the body M.

    D(f xi_{i1}..xi_{il}) = i_{d/dx_{i1}} o ... o i_{d/dx_{il}} [f dx_1..dx_n].
    Returns (body FormContext, form).
    """
    n = len(symp.space) // 2
    body = SuperSpace([symp.space.names[i] for i in range(n)], [EVEN] * n)
    ctx = FormContext(body)
    vol_key = tuple(range(n, 2 * n))
    out = SuperPolynomial.zero(ctx.space)
    for key, val in g.terms.items():
        xs = tuple(i for i in key if i < n)
        xis = tuple(i - n for i in key if i >= n)
        base = SuperPolynomial(ctx.space, {xs + vol_key: val})
        for i in reversed(xis):
            base = ctx.contract(VectorField.coordinate(body, i), base)
        out = out + base
    return ctx, out
