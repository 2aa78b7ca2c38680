"""Exact gcd, squarefree decomposition and partial factorization over Q.

Factorization here is deliberately conservative: every factor carries a
flag stating whether its irreducibility is certified.  Certified cases
are monomials, univariate polynomials of degree at most three with no
rational root, linear factors from rational roots, and multivariate
polynomials of degree one in some variable with coprime coefficients.
Anything else is returned whole with the flag off, never guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroPolynomialError
from .poly import Poly, QQ, univar_gcd


def exact_div(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when g divides f exactly; raises ValueError otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("exact division by zero")
    ring = f.ring
    fld = ring.field
    q = ring.zero()
    r = f
    from .orders import mono_div

    lg = g.lead_exp()
    lcg = g.lead_coeff()
    while not r.is_zero():
        m = mono_div(r.lead_exp(), lg)
        if m is None:
            raise ValueError("division is not exact")
        t = ring.monomial(m, fld.div(r.lead_coeff(), lcg))
        q = q + t
        r = r - t * g
    return q


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ValueError:
        return False


def _univar_coeffs(f: Poly, i: int):
    """Coefficient list of f along variable i; entries lie in the same ring."""
    d = f.degree_in(i)
    out = [f.ring.zero()] * (d + 1)
    for exp, c in f._terms.items():
        rest = list(exp)
        k = rest[i]
        rest[i] = 0
        out[k] = out[k] + f.ring.monomial(tuple(rest), c)
    return out


def _from_coeffs(ring, i, coeffs):
    acc = ring.zero()
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        exp = [0] * ring.nvars
        exp[i] = k
        acc = acc + c * ring.monomial(tuple(exp))
    return acc


def _deg(coeffs):
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero():
            return k
    return -1


def _content(coeffs):
    g = None
    for c in coeffs:
        if c.is_zero():
            continue
        g = c.monic() if g is None else multi_gcd(g, c)
        if g.is_constant():
            break
    return g


def multi_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd in a multivariate polynomial ring over a field.

    Uses the primitive polynomial remainder sequence, recursing on the
    coefficient ring through contents.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    used = sorted(set(f.variables()) | set(g.variables()))
    if len(used) == 1:
        return univar_gcd(f, g)
    i = used[0]
    ring = f.ring

    fc = _univar_coeffs(f, i)
    gc = _univar_coeffs(g, i)
    cont_f = _content(fc)
    cont_g = _content(gc)
    cont = multi_gcd(cont_f, cont_g)
    a = [exact_div(c, cont_f) for c in fc]
    b = [exact_div(c, cont_g) for c in gc]
    if _deg(a) < _deg(b):
        a, b = b, a
    while True:
        r = _prem(a, b, ring)
        if _deg(r) < 0:
            pp = [exact_div(c, _content(b)) for c in b]
            return (cont * _from_coeffs(ring, i, pp)).monic()
        cr = _content(r)
        a, b = b, [exact_div(c, cr) for c in r]


def _prem(a, b, ring):
    """Pseudo-remainder of coefficient lists, content-insensitive."""
    db = _deg(b)
    lcb = b[db]
    b = b[: db + 1]
    r = list(a)
    while _deg(r) >= db:
        dr = _deg(r)
        r = r[: dr + 1]
        lcr = r[dr]
        shifted = [ring.zero()] * (dr - db) + b
        r = [lcb * rc for rc in r]
        for k in range(len(shifted)):
            r[k] = r[k] - lcr * shifted[k]
        if _deg(r) == dr:
            raise AssertionError("pseudo-division failed to drop the degree")
    return r


def squarefree_decomposition(f: Poly):
    """Write monic f as a product of squarefree parts with multiplicities.

    Returns a list of (w, k) with f = prod w^k, the w pairwise coprime,
    squarefree, monic, and nonconstant.  Characteristic zero only.
    """
    if f.is_zero():
        raise ZeroPolynomialError("cannot decompose the zero polynomial")
    f = f.monic()
    if f.is_constant():
        return []
    g = f
    for i in f.variables():
        g = multi_gcd(g, f.diff(i))
        if g.is_constant():
            break
    out = []
    c = exact_div(f, g).monic()
    g = g.monic()
    k = 1
    while not c.is_constant():
        d = multi_gcd(c, g)
        piece = exact_div(c, d).monic()
        if not piece.is_constant():
            out.append((piece, k))
        c = d
        if not d.is_constant():
            g = exact_div(g, d).monic()
        k += 1
    return out


def squarefree_part(f: Poly) -> Poly:
    acc = f.ring.one()
    for w, _ in squarefree_decomposition(f):
        acc = acc * w
    return acc


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(f: Poly, var: int):
    """All rational roots of a univariate polynomial over Q, by trial.

    Assumes the trailing coefficient is nonzero (no root at 0).
    """
    coeffs = _univar_coeffs(f, var)
    vals = [c.const_value() for c in coeffs]
    den_lcm = 1
    for v in vals:
        if v:
            den_lcm = den_lcm * v.denominator // _gcd_int(den_lcm, v.denominator)
    ints = [int(v * den_lcm) for v in vals]
    content = 0
    for z in ints:
        content = _gcd_int(content, z)
    ints = [z // content for z in ints]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        raise ValueError("trailing coefficient is zero; remove the monomial part first")
    roots = []
    for p in _divisors(a0):
        for q in _divisors(an):
            for sign in (1, -1):
                r = Fraction(sign * p, q)
                if r in roots:
                    continue
                if _eval_univar(vals, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _eval_univar(vals, r):
    acc = Fraction(0)
    for c in reversed(vals):
        acc = acc * r + c
    return acc


@dataclass
class Factorization:
    """unit * prod(poly^multiplicity) reproduces the original polynomial."""

    unit: object
    factors: list  # (Poly monic, multiplicity, certified_irreducible)

    def expand(self, ring) -> Poly:
        acc = ring.const(1).scale(self.unit)
        for p, k, _ in self.factors:
            acc = acc * p**k
        return acc

    def all_certified(self) -> bool:
        return all(flag for _, _, flag in self.factors)

    def __str__(self):
        parts = [] if self.unit == 1 else [str(self.unit)]
        for p, k, flag in self.factors:
            body = "(%s)" % p
            if k != 1:
                body += "^%d" % k
            if not flag:
                body += "?"
            parts.append(body)
        return " * ".join(parts) if parts else "1"


def factor(f: Poly) -> Factorization:
    """Conservative factorization over Q; see the module docstring."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    if not isinstance(f.ring.field, type(QQ)):
        raise ValueError("factorization is implemented over Q only")
    ring = f.ring
    unit = f.lead_coeff()
    f = f.monic()
    factors = []

    # monomial content
    mins = [min(exp[i] for exp in f._terms) for i in range(ring.nvars)]
    for i, k in enumerate(mins):
        if k > 0:
            factors.append((ring.var(i), k, True))
    if any(mins):
        shift = {}
        for exp, c in f._terms.items():
            shift[tuple(e - m for e, m in zip(exp, mins))] = c
        f = Poly(ring, shift)

    if f.is_constant():
        return Factorization(unit, _merge(factors))

    for w, mult in squarefree_decomposition(f):
        for piece, flag in _factor_squarefree(w):
            factors.append((piece, mult, flag))
    return Factorization(unit, _merge(factors))


def _merge(factors):
    out = []
    for p, k, flag in factors:
        for idx, (p2, k2, flag2) in enumerate(out):
            if p2 == p:
                out[idx] = (p2, k2 + k, flag2)
                break
        else:
            out.append((p, k, flag))
    return out


def _factor_squarefree(w: Poly):
    """Split a squarefree monic polynomial; yields (piece, certified) pairs."""
    if w.is_constant():
        return []
    used = w.variables()
    if len(used) == 1:
        return _factor_univar_squarefree(w, used[0])
    ring = w.ring
    i = used[0]
    coeffs = _univar_coeffs(w, i)
    cont = _content(coeffs)
    out = []
    if not cont.is_constant():
        out.extend(_factor_squarefree(cont.monic()))
        coeffs = [exact_div(c, cont) for c in coeffs]
        w = _from_coeffs(ring, i, coeffs).monic()
    if _certified_multivar_irreducible(w):
        out.append((w, True))
    else:
        out.append((w, False))
    return out


def _certified_multivar_irreducible(w: Poly) -> bool:
    """True when w has degree one in some variable with coprime coefficients."""
    for v in w.variables():
        if w.degree_in(v) == 1:
            cont = _content(_univar_coeffs(w, v))
            if cont is not None and cont.is_constant():
                return True
    return False


def _factor_univar_squarefree(w: Poly, var: int):
    ring = w.ring
    out = []
    for r in rational_roots(w, var):
        out.append((ring.var(var) - ring.const(r), True))
    for lin, _ in out:
        w = exact_div(w, lin)
    w = w.monic()
    if w.is_constant():
        return out
    if w.degree_in(var) <= 3:
        # quadratics and cubics without rational roots are irreducible
        out.append((w, True))
    else:
        out.append((w, False))
    return out


def is_certified_irreducible(f: Poly) -> bool:
    """True when the conservative factorization certifies f irreducible."""
    if f.is_zero() or f.is_constant():
        return False
    fac = factor(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1 and fac.factors[0][2]
