"""Ann f^s and the Bernstein-Sato ideal B^v(f), with certificates.

Pipeline: the extended left ideal generated by

    t_j - u_j f_j,   d_i + sum_j u_j (df_j/dx_i) dt_j,   u_j y_j - 1

is intersected with the subalgebra free of u, y via a block elimination
order; survivors are balanced to matched t/dt powers and rewritten
through t^c dt^c = (t dt)(t dt - 1)..(t dt - c + 1) with t_j dt_j = -s_j - 1,
landing in A_n(R)[s].  Appending f^v = prod f_j^v_j and eliminating x, dx
yields the Bernstein-Sato ideal in R[s]; the left-reduction cofactor of
the f^v generator is the certificate operator P with b f^s = P f^(s+v).

Everything runs over a pluggable coefficient field so the same code
serves plain rational instances (parameters as central variables) and
residue fields of the parameter ring (parameters as field elements).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroPolynomialError
from .factor import factor, rational_roots
from .fsmodule import FsElement, act, check_identity
from .instance import ProblemInstance
from .orders import Block, GRevLex
from .poly import Poly, PolyRing, QQ, univar_extended_gcd
from .weyl import WeylOp, WeylRing
from .weyl_groebner import (
    GBBudget,
    LeftIdealW,
    left_buchberger,
    subring_elements,
    weight0_extract,
    weight_vector,
)


@dataclass(frozen=True)
class OpContext:
    """Names, shift vector and family for one operator-algebra computation.

    ``a_names`` are central parameter generators (plain mode); in residue
    mode they are empty and the parameters live inside the field.
    """

    field_: object
    a_names: tuple
    x_names: tuple
    s_names: tuple
    v: tuple
    f: tuple

    @property
    def n(self):
        return len(self.x_names)

    @property
    def p(self):
        return len(self.s_names)

    def d_names(self):
        return tuple("d" + x for x in self.x_names)

    def aux(self, prefix):
        return tuple("_%s%d" % (prefix, j + 1) for j in range(self.p))

    def base_ring(self) -> PolyRing:
        return PolyRing(self.field_, self.a_names + self.x_names, GRevLex())

    def s_poly_ring(self) -> PolyRing:
        return PolyRing(self.field_, self.a_names + self.s_names, GRevLex())

    def weyl_ring(self) -> WeylRing:
        names = self.a_names + self.x_names + self.d_names() + self.s_names
        na, n = len(self.a_names), self.n
        pairs = [(na + i, na + n + i) for i in range(n)]
        return WeylRing(self.field_, names, pairs)

    def malgrange_ring(self) -> WeylRing:
        names = (
            self.a_names
            + self.x_names
            + self.aux("t")
            + self.aux("u")
            + self.d_names()
            + self.aux("dt")
            + self.aux("y")
        )
        na, n, p = len(self.a_names), self.n, self.p
        x0, t0 = na, na + n
        d0 = na + n + 2 * p
        dt0 = na + 2 * n + 2 * p
        pairs = [(x0 + i, d0 + i) for i in range(n)] + [
            (t0 + j, dt0 + j) for j in range(p)
        ]
        return WeylRing(self.field_, names, pairs)

    def f_power_v(self) -> Poly:
        acc = self.base_ring().one()
        for fj, vj in zip(self.f, self.v):
            acc = acc * self.base_ring().convert(fj) ** vj
        return acc


def plain_context(inst: ProblemInstance) -> OpContext:
    r = inst.registry
    return OpContext(
        field_=QQ,
        a_names=r.a,
        x_names=r.x,
        s_names=r.s,
        v=tuple(inst.v),
        f=tuple(inst.f),
    )


@dataclass
class BSIdeal:
    """Verified members of the Bernstein-Sato ideal with certificates.

    ``generators[i]`` is a polynomial in the s variables (and parameters
    in plain mode); ``certificates[i]`` is the operator P with
    generators[i] * f^s = P f^(s+v).  ``elimination_basis`` is the full
    left basis the intersection was read from.
    """

    context: OpContext
    generators: list
    certificates: list
    ann_basis: list
    elimination_basis: list

    def is_zero(self):
        return not self.generators


def malgrange_ideal(inst_or_ctx) -> LeftIdealW:
    """The extended left ideal whose elimination yields Ann f^s."""
    ctx = inst_or_ctx if isinstance(inst_or_ctx, OpContext) else plain_context(inst_or_ctx)
    ring = ctx.malgrange_ring()
    base = ctx.base_ring()
    t = [ring.gen(nm) for nm in ctx.aux("t")]
    u = [ring.gen(nm) for nm in ctx.aux("u")]
    dt = [ring.gen(nm) for nm in ctx.aux("dt")]
    y = [ring.gen(nm) for nm in ctx.aux("y")]
    f_ops = [ring.from_poly(base.convert(fj)) for fj in ctx.f]

    gens = []
    for j in range(ctx.p):
        gens.append(t[j] - u[j] * f_ops[j])
    for i, xn in enumerate(ctx.x_names):
        g = ring.gen("d" + xn)
        for j in range(ctx.p):
            df = base.convert(ctx.f[j]).diff(base.index(xn))
            if not df.is_zero():
                g = g + u[j] * ring.from_poly(df) * dt[j]
        gens.append(g)
    for j in range(ctx.p):
        gens.append(u[j] * y[j] - 1)
    return LeftIdealW(ring=ring, generators=gens)


def _malgrange_weights(ring, ctx):
    """The +1/-1 grading on t, u versus dt, y, one aggregate vector."""
    assignment = {}
    for nm in ctx.aux("t"):
        assignment[nm] = 1
    for nm in ctx.aux("u"):
        assignment[nm] = 1
    for nm in ctx.aux("dt"):
        assignment[nm] = -1
    for nm in ctx.aux("y"):
        assignment[nm] = -1
    return weight_vector(ring, assignment)


def ann_fs_ctx(ctx: OpContext, budget: GBBudget | None = None) -> LeftIdealW:
    """Generators of Ann f^s in A_n(R)[s], not yet verified."""
    ideal = malgrange_ideal(ctx)
    ring = ideal.ring
    front = [ring.index(nm) for nm in ctx.aux("u") + ctx.aux("y")]
    elim_ring = ring.with_order(Block(tuple(sorted(front))))
    gens = [WeylOp(elim_ring, g._terms) for g in ideal.generators]
    w = _malgrange_weights(elim_ring, ctx)
    basis = left_buchberger(gens, budget=budget, weight_vectors=(w,))
    kept = subring_elements(basis, ctx.aux("u") + ctx.aux("y"))
    balanced = weight0_extract(
        kept,
        elim_ring,
        ctx.aux("t"),
        ctx.aux("dt"),
        u_names=ctx.aux("u"),
        y_names=ctx.aux("y"),
    )
    target = ctx.weyl_ring()
    out = [_theta_substitute(g, elim_ring, target, ctx) for g in balanced]
    out = [g for g in out if not g.is_zero()]
    return LeftIdealW(ring=target, generators=out)


def _theta_substitute(op: WeylOp, source: WeylRing, target: WeylRing, ctx: OpContext):
    """Rewrite matched t^c dt^c blocks as falling factorials in -s_j - 1.

    Uses t^c dt^c = (t dt)(t dt - 1)..(t dt - c + 1) and t_j dt_j = -s_j - 1;
    the substituted symbol is central on the remaining generators, so the
    rewrite respects products.
    """
    t_idx = [source.index(nm) for nm in ctx.aux("t")]
    dt_idx = [source.index(nm) for nm in ctx.aux("dt")]
    tset = set(t_idx) | set(dt_idx)
    s_ops = [target.gen(nm) for nm in ctx.s_names]
    out = target.zero()
    for exp, c in op._terms.items():
        sub = target.one()
        for j, (ti, di) in enumerate(zip(t_idx, dt_idx)):
            cj = exp[ti]
            if exp[di] != cj:
                raise AssertionError("unmatched t/dt powers reached substitution")
            for i in range(cj):
                sub = sub * (-s_ops[j] - (1 + i))
        base = [0] * target.nvars
        for i, e in enumerate(exp):
            if e and i not in tset:
                base[target.index(source.names[i])] = e
        out = out + target.monomial(tuple(base), c) * sub
    return out


def ann_fs(inst: ProblemInstance, budget: GBBudget | None = None, verify: bool = True) -> LeftIdealW:
    """Ann f^s with every generator checked to kill f^s exactly."""
    ctx = plain_context(inst)
    ideal = ann_fs_ctx(ctx, budget=budget)
    if verify:
        symbol = FsElement.symbol(inst)
        for g in ideal.generators:
            if not act(g, symbol).is_zero():
                raise AssertionError(
                    "annihilator candidate fails to kill f^s: %s" % g
                )
    return ideal


def bs_ideal_ctx(ctx: OpContext, budget: GBBudget | None = None) -> BSIdeal:
    """(Ann f^s + A_n(R)[s] f^v) intersected with R[s], certificates included."""
    ann = ann_fs_ctx(ctx, budget=budget)
    ring = ann.ring
    fv = ring.from_poly(ctx.f_power_v())
    gens = list(ann.generators) + [fv]

    xd = ctx.x_names + ctx.d_names()
    front = tuple(sorted(ring.index(nm) for nm in xd))
    elim_ring = ring.with_order(Block(front))
    egens = [WeylOp(elim_ring, g._terms) for g in gens]
    basis, reps = left_buchberger(egens, cofactors=True, budget=budget)

    s_only = []
    certs = []
    spoly_ring = ctx.s_poly_ring()
    for g, rep in zip(basis, reps):
        if all(all(exp[i] == 0 for i in front) for exp in g._terms):
            s_only.append(elim_ring.to_poly(g, spoly_ring))
            P = WeylOp(ring, rep[-1]._terms)
            certs.append(P)
    return BSIdeal(
        context=ctx,
        generators=s_only,
        certificates=certs,
        ann_basis=list(ann.generators),
        elimination_basis=list(basis),
    )


def bs_ideal(inst: ProblemInstance, budget: GBBudget | None = None, verify: bool = True) -> BSIdeal:
    """Bernstein-Sato ideal over the plain coefficients, verified.

    In plain mode parameters are central variables, so every generator's
    identity b f^s = P f^(s+v) holds literally over Q[a] and is checked
    by direct action.
    """
    B = bs_ideal_ctx(plain_context(inst), budget=budget)
    if verify:
        for b, P in zip(B.generators, B.certificates):
            if not check_identity(b, P, inst):
                raise AssertionError(
                    "certificate fails the functional identity for %s" % b
                )
    return B


@dataclass
class BernsteinPoly:
    """Monic generator for p = 1 with its certificate and factorization."""

    b: Poly
    certificate: WeylOp
    factorization: object
    ideal: BSIdeal


def bs_poly(inst: ProblemInstance, budget: GBBudget | None = None) -> BernsteinPoly:
    """The Bernstein polynomial: monic generator of B^v(f) for p = 1.

    The principal generator is the gcd of the elimination output; the
    extended Euclidean cofactors combine the member certificates into a
    certificate for the gcd, which is verified against the oracle.
    """
    if inst.registry.p != 1:
        raise ValueError("the Bernstein polynomial is defined for p = 1")
    if inst.registry.m != 0:
        raise ValueError("plain rational coefficients required; specialize first")
    B = bs_ideal(inst, budget=budget, verify=True)
    if not B.generators:
        raise ZeroPolynomialError(
            "no nonzero element found in B^v(f); enlarge budgets"
        )
    wring = B.context.weyl_ring()
    g = B.generators[0]
    P = B.certificates[0]
    for g2, P2 in zip(B.generators[1:], B.certificates[1:]):
        if g.is_zero():
            g, P = g2, P2
            continue
        d, u_cof, w_cof = univar_extended_gcd(g, g2)
        P = wring.from_poly(_to_weyl_poly(u_cof, wring)) * P + wring.from_poly(
            _to_weyl_poly(w_cof, wring)
        ) * P2
        g = d
    g = g.monic()
    if not check_identity(g, P, inst):
        raise AssertionError("combined certificate fails for the gcd generator")
    return BernsteinPoly(
        b=g, certificate=P, factorization=factor(g), ideal=B
    )


def _to_weyl_poly(q: Poly, wring: WeylRing) -> Poly:
    """Re-home an s-polynomial into a ring sharing the operator ring names."""
    target = PolyRing(q.ring.field, wring.names, GRevLex())
    return target.convert(q)


def rationality_report(B: BSIdeal) -> dict:
    """Which generators lie in Q[s], with exact root data per factor."""
    ctx = B.context
    out = {"generators": [], "rational_element_found": False}
    for g in B.generators:
        entry = {"poly": str(g), "rational": None, "factors": []}
        entry["rational"] = _is_rational_poly(g, ctx.a_names)
        if entry["rational"]:
            out["rational_element_found"] = True
            gq = _as_rational_poly(g, ctx.s_names)
            fac = factor(gq)
            all_neg = True
            for piece, mult, certified in fac.factors:
                rec = {
                    "factor": str(piece),
                    "multiplicity": mult,
                    "irreducible_certified": bool(certified),
                    "roots": [],
                }
                used = piece.variables()
                if len(used) == 1:
                    var = used[0]
                    rec["variable"] = piece.ring.names[var]
                    try:
                        roots = rational_roots(piece, var)
                    except ValueError:
                        roots = []
                    rec["roots"] = [str(r) for r in roots]
                    deg = piece.degree_in(var)
                    if deg != len(roots) or any(r >= 0 for r in roots):
                        all_neg = False
                else:
                    all_neg = False
                entry["factors"].append(rec)
            entry["all_roots_negative_rational"] = all_neg
        out["generators"].append(entry)
    return out


def _is_rational_poly(g: Poly, a_names) -> bool:
    """True when every coefficient is a plain rational (no parameter part)."""
    fld = g.ring.field
    if fld == QQ:
        a_idx = [g.ring.index(nm) for nm in a_names if nm in g.ring._index]
        return all(all(exp[i] == 0 for i in a_idx) for exp in g._terms)
    rational = getattr(fld, "is_rational_elem", None)
    if rational is None:
        return False
    return all(rational(c) for c in g._terms.values())


def _as_rational_poly(g: Poly, s_names) -> Poly:
    """Project a rational-coefficient generator onto Q[s]."""
    target = PolyRing(QQ, tuple(s_names), GRevLex())
    fld = g.ring.field
    if fld == QQ:
        return target.convert(g)
    out = {}
    sel = [g.ring.index(nm) for nm in s_names]
    for exp, c in g._terms.items():
        q = fld.as_rational(c)
        if q:
            out[tuple(exp[i] for i in sel)] = q
    return Poly(target, out)
