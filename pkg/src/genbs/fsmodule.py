"""The free module R[x, 1/(f_1..f_p), s] f^s: action, checks, ansatz oracle.

An element is numerator / (f_1^k_1 .. f_p^k_p) times the formal symbol
f^s.  Differential operators act through logarithmic derivatives:

    d_i (g f^s) = (d_i g) f^s + g sum_j s_j (d_i f_j)/f_j f^s

with all bookkeeping exact.  Denominators are exponent vectors, never
general polynomials, and the canonical form divides out f_j from the
numerator while possible.

The ansatz routine searches for (b, P) with act(P, f^(s+v)) = b f^s by
exact linear algebra within degree bounds; it is independent of the
Groebner pipeline and serves as the oracle for everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyAnsatz, MixedRingError
from .factor import exact_div
from .instance import ProblemInstance
from .poly import Poly
from .weyl import WeylOp


@dataclass(frozen=True)
class AnsatzBounds:
    """Degree box for the (b, P) search; all bounds are >= 0."""

    x_degree: int
    d_order: int
    s_degree: int

    def __post_init__(self):
        if min(self.x_degree, self.d_order, self.s_degree) < 0:
            raise ValueError("bounds must be non-negative")


class FsElement:
    """numerator / prod f_j^k_j times f^s, over a fixed instance."""

    __slots__ = ("instance", "numerator", "k")

    def __init__(self, instance, numerator, k, reduce=True):
        self.instance = instance
        if reduce:
            numerator, k = _reduce(instance, numerator, tuple(k))
        self.numerator = numerator
        self.k = tuple(k)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def symbol(instance) -> "FsElement":
        """The generator f^s itself."""
        ring = instance.fs_ring()
        return FsElement(instance, ring.one(), (0,) * instance.registry.p)

    @staticmethod
    def shifted(instance) -> "FsElement":
        """f^(s+v), i.e. the element with numerator prod f_j^v_j."""
        ring = instance.fs_ring()
        return FsElement(
            instance, ring.convert(instance.f_power_v()), (0,) * instance.registry.p
        )

    # -- structure ---------------------------------------------------------------

    def is_zero(self):
        return self.numerator.is_zero()

    def _common(self, other):
        if self.instance != other.instance:
            raise MixedRingError("f^s elements over different instances")
        K = tuple(max(a, b) for a, b in zip(self.k, other.k))
        fs = _f_lifted(self.instance)
        n1 = self.numerator
        n2 = other.numerator
        for j, fj in enumerate(fs):
            n1 = n1 * fj ** (K[j] - self.k[j])
            n2 = n2 * fj ** (K[j] - other.k[j])
        return n1, n2, K

    def __add__(self, other):
        if not isinstance(other, FsElement):
            return NotImplemented
        n1, n2, K = self._common(other)
        return FsElement(self.instance, n1 + n2, K)

    def __neg__(self):
        return FsElement(self.instance, -self.numerator, self.k, reduce=False)

    def __sub__(self, other):
        if not isinstance(other, FsElement):
            return NotImplemented
        return self + (-other)

    def scale_poly(self, g: Poly) -> "FsElement":
        ring = self.instance.fs_ring()
        return FsElement(self.instance, ring.convert(g) * self.numerator, self.k)

    def scale(self, c) -> "FsElement":
        return FsElement(
            self.instance, self.numerator * Fraction(c), self.k, reduce=False
        )

    def __eq__(self, other):
        if not isinstance(other, FsElement):
            return NotImplemented
        n1, n2, _ = self._common(other)
        return n1 == n2

    def __hash__(self):
        return hash((self.instance.registry, str(self.numerator), self.k))

    def __str__(self):
        den = []
        for fj, kj in zip(self.instance.f, self.k):
            if kj == 1:
                den.append("(%s)" % fj)
            elif kj > 1:
                den.append("(%s)^%d" % (fj, kj))
        body = "(%s)" % self.numerator
        if den:
            body += " / (%s)" % "*".join(den)
        return body + " * f^s"

    def __repr__(self):
        return "FsElement(%s)" % self


def _f_lifted(instance):
    return instance.f_in_fs_ring()


def _reduce(instance, numerator, k):
    """Canonical form: divide numerator by f_j while divisible and k_j > 0."""
    if numerator.is_zero():
        return numerator, (0,) * len(k)
    fs = _f_lifted(instance)
    k = list(k)
    for j, fj in enumerate(fs):
        while k[j] > 0:
            try:
                numerator = exact_div(numerator, fj)
            except ValueError:
                break
            k[j] -= 1
    return numerator, tuple(k)


def _diff_once(e: FsElement, x_name: str) -> FsElement:
    """Action of a single d/dx on the element."""
    inst = e.instance
    ring = inst.fs_ring()
    fs = _f_lifted(inst)
    p = inst.registry.p
    s_vars = [ring.var(name) for name in inst.registry.s]
    term = e.numerator.diff(x_name)
    for fj in fs:
        term = term * fj
    for j in range(p):
        cof = ring.one()
        for l in range(p):
            if l != j:
                cof = cof * fs[l]
        factor = s_vars[j] - ring.const(e.k[j])
        term = term + factor * fs[j].diff(x_name) * e.numerator * cof
    return FsElement(inst, term, tuple(kj + 1 for kj in e.k))


def act(A: WeylOp, e: FsElement) -> FsElement:
    """Apply a normally ordered operator to an f^s element.

    Every generator of A's ring must be either a variable of the
    numerator ring (acting by multiplication) or a derivative paired to
    an x variable (acting by differentiation).
    """
    inst = e.instance
    ring = inst.fs_ring()
    wr = A.ring
    der_to_x = {}
    for pos, der in wr.pairs:
        der_to_x[der] = wr.names[pos]
    mult_index = {}
    for i, name in enumerate(wr.names):
        if i in der_to_x:
            continue
        mult_index[i] = ring.index(name)

    result = FsElement(inst, ring.zero(), e.k, reduce=False)
    for exp, c in A._terms.items():
        cur = e
        for der_i, x_name in der_to_x.items():
            for _ in range(exp[der_i]):
                cur = _diff_once(cur, x_name)
        mono_exp = [0] * ring.nvars
        for i, j in mult_index.items():
            mono_exp[j] = exp[i]
        mono = ring.monomial(tuple(mono_exp), c)
        cur = FsElement(inst, cur.numerator * mono, cur.k)
        result = result + cur
    return result


def check_identity(b: Poly, P: WeylOp, inst: ProblemInstance) -> bool:
    """Exact check of act(P, f^(s+v)) = b(s) f^s."""
    lhs = act(P, FsElement.shifted(inst))
    rhs = FsElement.symbol(inst).scale_poly(b)
    return (lhs - rhs).is_zero()


def congruence_remainder(h: Poly, b: Poly, U: WeylOp, inst: ProblemInstance):
    """r = h b f^s - U f^(s+v), the term that must lie in Q[x, 1/f, s] f^s."""
    lhs = FsElement.symbol(inst).scale_poly(h).scale_poly(b)
    rhs = act(U, FsElement.shifted(inst))
    return lhs - rhs


def check_congruence(g, inst: ProblemInstance | None = None) -> bool:
    """Whether the stored identity holds modulo Q: every coefficient of
    the remainder's numerator (as a polynomial in x, s) reduces to 0."""
    if inst is None:
        inst = g.instance
    r = congruence_remainder(g.h, g.b, g.U, inst)
    return remainder_in_Q(r, g.Q, inst)


def remainder_in_Q(r: FsElement, Q, inst: ProblemInstance) -> bool:
    from .groebner import normal_form

    if r.is_zero():
        return True
    ring = inst.fs_ring()
    param = inst.param_ring()
    non_a = inst.registry.x + inst.registry.s
    groups = r.numerator.coefficients_wrt(non_a)
    basis = [param.convert(q) for q in Q.basis]
    for _, coeff in groups.items():
        ap = param.convert(coeff)
        if not normal_form(ap, basis).is_zero():
            return False
    return True


# -- exact linear algebra over Q ---------------------------------------------


def nullspace(rows, ncols):
    """Basis of the right kernel of a rational matrix (rows of length ncols)."""
    mat = [list(r) for r in rows]
    pivots = {}
    rank = 0
    for c in range(ncols):
        pr = None
        for i in range(rank, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        inv = Fraction(1) / mat[rank][c]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[rank])]
        pivots[c] = rank
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, pr in pivots.items():
            v[c] = -mat[pr][fc]
        basis.append(v)
    return basis


def _echelon_by_priority(vectors, priority):
    """Row-reduce full vectors, pivoting along the given column priority."""
    work = [list(v) for v in vectors]
    out = []
    for col in priority:
        pivot_vec = None
        for v in work:
            if v[col] != 0:
                pivot_vec = v
                break
        if pivot_vec is None:
            continue
        work.remove(pivot_vec)
        inv = Fraction(1) / pivot_vec[col]
        pivot_vec = [x * inv for x in pivot_vec]
        work = [
            [x - v[col] * y for x, y in zip(v, pivot_vec)] if v[col] != 0 else v
            for v in work
        ]
        out = [
            [x - v[col] * y for x, y in zip(v, pivot_vec)] if v[col] != 0 else v
            for v in out
        ]
        out.append(pivot_vec)
    return out


def _multi_indices(nvars, max_total):
    """All exponent tuples with total degree <= max_total, ascending."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], max_total, nvars)
    out.sort(key=lambda t: (sum(t), t))
    return out


def ansatz_bs(inst: ProblemInstance, bounds: AnsatzBounds):
    """Degree-bounded search for all (b, P) with act(P, f^(s+v)) = b f^s.

    Returns echelonized solutions with b != 0, minimal b-degree first,
    each b monic.  Raises EmptyAnsatz when the box contains none.
    Parameters are not supported here; specialize first.
    """
    if inst.registry.m != 0:
        raise ValueError("the ansatz oracle works over Q; specialize parameters first")
    n = inst.registry.n
    p = inst.registry.p
    ring = inst.fs_ring()
    wring = inst.weyl_ring()
    s_ring = inst.s_ring()

    betas = _multi_indices(n, bounds.d_order)
    alphas = _multi_indices(n, bounds.x_degree)
    gammas = _multi_indices(p, bounds.s_degree)

    shifted = FsElement.shifted(inst)
    base_by_beta = {}
    for beta in betas:
        cur = shifted
        for i, name in enumerate(inst.registry.x):
            for _ in range(beta[i]):
                cur = _diff_once(cur, name)
        base_by_beta[beta] = cur

    symbol = FsElement.symbol(inst)

    # columns: first the P unknowns (beta, alpha, gamma), then the b unknowns
    p_cols = [(beta, alpha, gamma) for beta in betas for alpha in alphas for gamma in gammas]
    b_cols = list(gammas)
    ncols = len(p_cols) + len(b_cols)

    elements = []
    for beta, alpha, gamma in p_cols:
        exp = [0] * ring.nvars
        for i, name in enumerate(inst.registry.x):
            exp[ring.index(name)] = alpha[i]
        for j, name in enumerate(inst.registry.s):
            exp[ring.index(name)] = gamma[j]
        mono = ring.monomial(tuple(exp))
        e = base_by_beta[beta]
        elements.append(FsElement(inst, e.numerator * mono, e.k))
    for gamma in b_cols:
        exp = [0] * ring.nvars
        for j, name in enumerate(inst.registry.s):
            exp[ring.index(name)] = gamma[j]
        mono = ring.monomial(tuple(exp))
        elements.append(FsElement(inst, -(symbol.numerator * mono), symbol.k))

    K = tuple(max(e.k[j] for e in elements) for j in range(p))
    fs = _f_lifted(inst)
    numerators = []
    for e in elements:
        num = e.numerator
        for j in range(p):
            num = num * fs[j] ** (K[j] - e.k[j])
        numerators.append(num)

    monomials = sorted({exp for num in numerators for exp in num._terms})
    rows = []
    for exp in monomials:
        rows.append([num._terms.get(exp, Fraction(0)) for num in numerators])

    kernel = nullspace(rows, ncols)
    if not kernel:
        raise EmptyAnsatz("no (b, P) within bounds %s" % (bounds,))

    # pivot on b coordinates, highest s-monomial first, so leading b terms
    # are echelonized; solutions never reached by a b pivot have b = 0
    border = sorted(
        range(len(b_cols)),
        key=lambda i: s_ring.order.key(b_cols[i]),
        reverse=True,
    )
    priority = [len(p_cols) + i for i in border] + list(range(len(p_cols)))
    reduced = _echelon_by_priority(kernel, priority)

    results = []
    for v in reduced:
        bterms = {}
        for i, gamma in enumerate(b_cols):
            c = v[len(p_cols) + i]
            if c != 0:
                bterms[gamma] = c
        if not bterms:
            continue
        b = s_ring.from_terms(list(bterms.items()))
        pterms = {}
        for col, (beta, alpha, gamma) in enumerate(p_cols):
            c = v[col]
            if c == 0:
                continue
            exp = [0] * wring.nvars
            for i, name in enumerate(inst.registry.x):
                exp[wring.index(name)] = alpha[i]
                exp[wring.index("d" + name)] = beta[i]
            for j, name in enumerate(inst.registry.s):
                exp[wring.index(name)] = gamma[j]
            key = tuple(exp)
            pterms[key] = pterms.get(key, Fraction(0)) + c
        P = WeylOp(wring, {e: c for e, c in pterms.items() if c != 0})
        lc = b.lead_coeff()
        b = b.monic()
        P = P.scale(Fraction(1) / lc)
        results.append((b, P))

    if not results:
        raise EmptyAnsatz("only b = 0 solutions within bounds %s" % (bounds,))
    results.sort(key=lambda t: (t[0].total_degree(), str(t[0])))
    return results
