"""The dual construction: Psi, sigma-tilde, S (BV side), F (Feynman side), I.

Both pipelines produce the same rationals; the commuting-diagram check is the
keystone that pins every remaining sign convention end to end.
"""
from __future__ import annotations

from fractions import Fraction

from .graded import EVEN, ODD, SuperSpace, koszul_sign, tensor_space
from .superpoly import (MultilinearMap, SuperPolynomial, VectorField,
                        divergence)
from .symplectic import (BilinearForm, SymplecticSpace, pi2_of_form,
                         i2_of_quadratic, restrict_polynomial, upsilon_inverse)
from .forms import FormContext
from .frobenius import (FrobeniusAlgebra, Gauge, degenerate_form,
                        vertex_tensor, vertex_tensor_on_vectors)
from .wick import QuadraticWeight, beta_contract_indices, chord_diagrams
from .graphs import CanonicalGraph, GraphChain, canonicalize_directed
from .ce import CEChain


# ---------------------------------------------------------------------------
# The tensor model A (x) V and its odd symplectic structure

class TensorModel:
    """A (x) V with its odd symplectic form and the quadratic Hamiltonian of d."""

    def __init__(self, alg: FrobeniusAlgebra, v: SymplecticSpace):
        if v.parity != EVEN:
            raise ValueError("V must carry an even symplectic form")
        self.alg = alg
        self.v = v
        self.space = tensor_space(alg.space, v.space)
        self.nv = len(v.space)
        form = alg.pairing.tensor_with(v.form, space=self.space)
        self.symp = SymplecticSpace.from_bilinear(form)
        self._mu_cache = {}
        self._psi_cache = {}
        self.sigma = self._sigma_tilde()
        self.dform = BilinearForm(self.space, i2_of_quadratic(self.sigma),
                                  EVEN, "sym", check=False)

    def z(self, alpha: int, i: int) -> int:
        """Variable index of a* (x) w* for algebra slot alpha, V slot i."""
        return alpha * self.nv + i

    def mu(self, k: int) -> dict:
        if k not in self._mu_cache:
            self._mu_cache[k] = vertex_tensor(self.alg, k)
        return self._mu_cache[k]

    def _dtilde_field(self) -> VectorField:
        """(d (x) 1)^vee: z_{(alpha,i)} -> sum_beta d[alpha][beta] z_{(beta,i)}."""
        imgs = []
        na = len(self.alg.space)
        for alpha in range(na):
            for i in range(self.nv):
                img = SuperPolynomial.zero(self.space)
                for beta in range(na):
                    c = self.alg.diff[alpha][beta]
                    if c:
                        img = img + SuperPolynomial(
                            self.space, {(self.z(beta, i),): c})
                imgs.append(img)
        return VectorField(self.space, imgs, ODD)

    def _sigma_tilde(self) -> SuperPolynomial:
        return self.symp.hamiltonian_of(self._dtilde_field())

    def dform_entrywise(self) -> BilinearForm:
        """The printed tensored form: (-1)^{|w1||a2|} <a1,a2>_d <w1,w2>_W."""
        md = degenerate_form(self.alg)
        return md.tensor_with(self.v.form, space=self.space)

    # -- Psi on Hamiltonians -------------------------------------------------
    def psi(self, h: SuperPolynomial) -> SuperPolynomial:
        """Lift a Hamiltonian on V to A (x) V through the vertex tensors.

        On a degree-k monomial u_1..u_k the image is
        sum mu_k[alpha] * shuffle_sign * prod_r z_{(alpha_r, u_r)},
        the shuffle sign moving each u_r left past the a*'s after it.
        """
        if h.space != self.v.space:
            raise ValueError("Hamiltonian must live on V")
        if not h.is_zero() and h.min_degree() < 2:
            raise ValueError("Psi needs polynomial order >= 2")
        out = SuperPolynomial.zero(self.space)
        for key, coeff in h.terms.items():
            out = out + coeff * self._psi_monomial(key)
        return out

    def _psi_monomial(self, key) -> SuperPolynomial:
        if key in self._psi_cache:
            return self._psi_cache[key]
        k = len(key)
        mu = self.mu(k) if k >= 3 else vertex_tensor_on_chain(self.alg, k)
        vpar = [self.v.space.parities[i] for i in key]
        apar = self.alg.space.parities
        out = SuperPolynomial.zero(self.space)
        for alphas, mval in mu.items():
            shuffle = 0
            for r in range(k):
                if vpar[r]:
                    shuffle += sum(apar[alphas[s]] for s in range(r + 1, k))
            sign = -1 if shuffle % 2 else 1
            mono = SuperPolynomial.monomial(
                self.space, tuple(self.z(alphas[r], key[r]) for r in range(k)),
                sign * mval)
            out = out + mono
        self._psi_cache[key] = out
        return out

    # -- Psi on multilinear maps ----------------------------------------------
    def psi_multilinear(self, zeta: MultilinearMap) -> MultilinearMap:
        return psi_multilinear_map(self.alg, self.v.space, zeta, self.space)


def psi_multilinear_map(alg: FrobeniusAlgebra, vspace: SuperSpace,
                        zeta: MultilinearMap, target=None) -> MultilinearMap:
    """(m_n (x) zeta) o shuffle on S^n(A (x) V); needs no symplectic data."""
    if zeta.space != vspace:
        raise ValueError("map must live on V")
    from itertools import product
    target = target or tensor_space(alg.space, vspace)
    na = len(alg.space)
    nv = len(vspace)
    apar = alg.space.parities
    vpar = vspace.parities
    entries = {}
    for (args, out_w), val in zeta.entries.items():
        n = zeta.rank
        for alphas in product(range(na), repeat=n):
            prod_vec = alg.mul_chain([alg.basis_element(a) for a in alphas])
            if not prod_vec:
                continue
            shuffle = 0
            for r in range(n):
                if vpar[args[r]]:
                    shuffle += sum(apar[alphas[s]] for s in range(r + 1, n))
            sign = -1 if shuffle % 2 else 1
            akey = tuple(alphas[r] * nv + args[r] for r in range(n))
            for out_a, c in prod_vec.items():
                ekey = (akey, out_a * nv + out_w)
                cur = entries.get(ekey, Fraction(0)) + sign * val * c
                if cur:
                    entries[ekey] = cur
                else:
                    entries.pop(ekey, None)
    return MultilinearMap(target, zeta.rank, entries)


def vertex_tensor_on_chain(alg, k):
    """mu_k for k < 3 (plumbing for low-degree checks, never used by F)."""
    from itertools import product
    out = {}
    n = len(alg.space)
    e = [alg.basis_element(i) for i in range(n)]
    for tup in product(range(n), repeat=k):
        prod = alg.mul_chain([e[i] for i in tup[:-1]])
        val = alg.pair(prod, e[tup[-1]])
        if val:
            out[tup] = val
    return out


# ---------------------------------------------------------------------------
# Restriction to a gauge and the BV functional

class GaugeModel:
    """The integration locus L (x) V inside A (x) V, with the restricted weight."""

    def __init__(self, model: TensorModel, gauge: Gauge):
        if gauge.alg is not model.alg:
            raise ValueError("gauge belongs to a different algebra")
        self.model = model
        self.gauge = gauge
        nv = model.nv
        vpar = model.v.space.parities
        names, parities, vectors = [], [], []
        dim_a = len(model.alg.space)
        for s, lvec in enumerate(gauge.vectors):
            for i in range(nv):
                names.append(f"l{s}(x){model.v.space.names[i]}")
                parities.append((gauge.parities[s] + vpar[i]) % 2)
                vec = [Fraction(0)] * (dim_a * nv)
                for alpha, c in enumerate(lvec):
                    if c:
                        vec[model.z(alpha, i)] = c
                vectors.append(vec)
        self.space = SuperSpace(names, parities)
        self.vectors = vectors
        sigma_l = restrict_polynomial(model.sigma, vectors, self.space)
        self.weight = QuadraticWeight.from_sigma(sigma_l)

    def restrict(self, f: SuperPolynomial) -> SuperPolynomial:
        return restrict_polynomial(f, self.vectors, self.space)


def wedge_sign(parities) -> int:
    """(-1)^{p(h)} from commuting one odd Psi past each following factor."""
    total = 0
    l = len(parities)
    for r, p in enumerate(parities):
        total += (l - 1 - r) * p
    return -1 if total % 2 else 1


def psi_of_word(model: TensorModel, word) -> SuperPolynomial:
    """(-1)^{p(h)} Psi(h_1) ... Psi(h_l) for a word of monomial keys."""
    vspace = model.v.space
    pars = [sum(vspace.parities[i] for i in key) % 2 for key in word]
    out = SuperPolynomial.scalar(model.space, wedge_sign(pars))
    for key in word:
        out = out * model._psi_monomial(key)
    return out


def s_functional(model: TensorModel, gm: GaugeModel, chain: CEChain) -> Fraction:
    """S = (-1)^{p(h)} < prod Psi(h_r) >_0 over L (x) V with the sigma weight."""
    if chain.symp is not model.v and chain.symp.space != model.v.space:
        raise ValueError("chain over the wrong symplectic space")
    total = Fraction(0)
    for word, coeff in chain.terms.items():
        poly = gm.restrict(psi_of_word(model, word))
        total += coeff * gm.weight.expectation(poly)
    return total


# ---------------------------------------------------------------------------
# Feynman amplitudes

def graph_from_chord(vertex_sizes, chord):
    """Gamma(c; k_1..k_l): consecutive half-edge blocks, chord pairs as edges."""
    vertex_of = []
    for vtx, size in enumerate(vertex_sizes):
        vertex_of.extend([vtx] * size)
    edges = tuple((vertex_of[i], vertex_of[j]) for i, j in chord)
    return len(vertex_sizes), edges


def chord_presentation(graph: CanonicalGraph):
    """Slots and chord diagram presenting a canonical graph as Gamma(c; k)."""
    sizes = list(graph.valences())
    offsets = [0]
    for s in sizes[:-1]:
        offsets.append(offsets[-1] + s)
    cursor = list(offsets)
    chord = []
    for a, b in graph.edges:
        i = cursor[a]
        cursor[a] += 1
        j = cursor[b]
        cursor[b] += 1
        chord.append((i, j))
    return sizes, tuple(chord)


def feynman_value(model: TensorModel, gm: GaugeModel,
                  graph: CanonicalGraph) -> Fraction:
    """F(Gamma) = beta_c over L* of mu_{k_1} (x) .. (x) mu_{k_l}, with the
    inverse restricted d-form as propagator."""
    gauge = gm.gauge
    sizes, chord = chord_presentation(graph)
    mus = [vertex_tensor_on_vectors(model.alg, gauge.vectors, k) for k in sizes]
    prop = gauge.restricted_form().inverse().rows
    lpar = gauge.parities
    total = Fraction(0)

    def rec(vtx, assignment, coeff):
        nonlocal total
        if vtx == len(sizes):
            pars = [lpar[s] for s in assignment]
            val = coeff * Fraction(koszul_sign([p for ij in chord for p in ij],
                                               pars))
            for i, j in chord:
                val *= prop[assignment[i]][assignment[j]]
                if val == 0:
                    return
            total += val
            return
        for idx, mval in mus[vtx].items():
            rec(vtx + 1, assignment + list(idx), coeff * mval)

    rec(0, [], Fraction(1))
    return total


def feynman_cochain(model: TensorModel, gm: GaugeModel, v: int, e: int) -> dict:
    from .graphs import enumerate_graphs
    return {g: feynman_value(model, gm, g) for g in enumerate_graphs(v, e)}


def feynman_on_chain(model: TensorModel, gm: GaugeModel,
                     chain: GraphChain) -> Fraction:
    total = Fraction(0)
    for g, c in chain.terms.items():
        total += c * feynman_value(model, gm, g)
    return total


# ---------------------------------------------------------------------------
# The chord-diagram map I

def wick_map(chain: CEChain) -> GraphChain:
    """I: wedge words of monomials to signed sums of graphs, one per diagram."""
    symp = chain.symp
    inv = symp.form.inverse().rows
    out = GraphChain()
    for word, coeff in chain.terms.items():
        factors = [i for key in word for i in key]
        sizes = [len(key) for key in word]
        if len(factors) % 2:
            continue
        pars = [symp.space.parities[i] for i in factors]
        for chord in chord_diagrams(len(factors) // 2):
            val = beta_contract_indices(pars, factors, chord, inv)
            if val == 0:
                continue
            nv, edges = graph_from_chord(sizes, chord)
            rep, sign = canonicalize_directed(nv, edges)
            if sign == 0:
                continue
            out.add(rep, coeff * val * sign)
    return out


# ---------------------------------------------------------------------------
# Verification suites (each returns a report dict)

def _report(check, status, witnesses=None, **inputs):
    return {"check": check, "inputs": inputs,
            "status": "pass" if status else "fail",
            "witnesses": witnesses or []}


def verify_vanishing_divergence(alg: FrobeniusAlgebra, v: SymplecticSpace,
                                zeta: MultilinearMap) -> bool:
    gamma = psi_multilinear_map(alg, v.space, zeta)
    return divergence(gamma.to_field()).is_zero()


def verify_master_equations(model: TensorModel) -> dict:
    lap = model.symp.odd_laplacian(model.sigma)
    br = model.symp.antibracket(model.sigma, model.sigma)
    match = model.dform.rows == model.dform_entrywise().rows
    ok = lap.is_zero() and br.is_zero() and match
    wit = []
    if not lap.is_zero():
        wit.append({"quantum_master": lap.render()})
    if not br.is_zero():
        wit.append({"classical_master": br.render()})
    if not match:
        wit.append({"dform": "i2(sigma) differs from the printed tensored form"})
    return _report("master_equations", ok, wit, algebra=model.alg.name)


def verify_commute(model: TensorModel, gm: GaugeModel, chain: CEChain) -> dict:
    lhs = s_functional(model, gm, chain)
    rhs = feynman_on_chain(model, gm, wick_map(chain))
    ok = lhs == rhs
    wit = [] if ok else [{"S": str(lhs), "F_I": str(rhs),
                          "chain": chain.to_json()}]
    return _report("commute", ok, wit, algebra=model.alg.name,
                   gauge=gm.gauge.label)


def verify_cocycle_graphs(model: TensorModel, gm: GaugeModel, v: int,
                          e: int) -> dict:
    from .graphs import boundary_of_graph, enumerate_graphs
    wit = []
    for g in enumerate_graphs(v, e):
        val = feynman_on_chain(model, gm, boundary_of_graph(g))
        if val != 0:
            wit.append({"graph": g.graph_id(), "F_boundary": str(val)})
    return _report("cocycle_graphs", not wit, wit, bidegree=[v, e],
                   algebra=model.alg.name, gauge=gm.gauge.label)


def verify_cocycle_chains(model: TensorModel, gm: GaugeModel, chains) -> dict:
    from .ce import ce_differential
    wit = []
    for chain in chains:
        val = s_functional(model, gm, ce_differential(chain))
        if val != 0:
            wit.append({"chain": chain.to_json(), "S_delta": str(val)})
    return _report("cocycle_chains", not wit, wit, samples=len(list(chains)),
                   algebra=model.alg.name, gauge=gm.gauge.label)


def verify_gauge_independence(model: TensorModel, g0: Gauge, g1: Gauge,
                              v: int, e: int) -> dict:
    from .graphs import cycle_space
    gm0 = GaugeModel(model, g0)
    gm1 = GaugeModel(model, g1)
    _, cycles = cycle_space(v, e)
    wit = []
    for z in cycles:
        v0 = feynman_on_chain(model, gm0, z)
        v1 = feynman_on_chain(model, gm1, z)
        if v0 != v1:
            wit.append({"cycle": z.to_json(), "F_L0": str(v0), "F_L1": str(v1)})
    return _report("gauge_independence", not wit, wit, bidegree=[v, e],
                   n_cycles=len(cycles), gauges=[g0.label, g1.label])


def verify_kontsevich_chain_map(chain: CEChain) -> dict:
    from .ce import ce_differential
    from .graphs import boundary
    lhs = wick_map(ce_differential(chain))
    rhs = boundary(wick_map(chain))
    diff = lhs + rhs.scale(-1)
    ok = diff.is_zero()
    wit = [] if ok else [{"I_delta_minus_boundary_I": diff.to_json(),
                          "chain": chain.to_json()}]
    return _report("kontsevich_chain_map", ok, wit)


def verify_osp_invariance(model: TensorModel, gm: GaugeModel,
                          eta: SuperPolynomial, chain: CEChain) -> dict:
    from .ce import osp_action
    val = s_functional(model, gm, osp_action(eta, chain))
    ok = val == 0
    wit = [] if ok else [{"S_of_action": str(val), "eta": eta.render()}]
    return _report("osp_invariance", ok, wit, algebra=model.alg.name,
                   gauge=gm.gauge.label)
