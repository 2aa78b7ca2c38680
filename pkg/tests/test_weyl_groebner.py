"""Left Groebner engine: reduction exactness, S-pairs, weights, extraction."""

import random
from fractions import Fraction

import pytest

from genbs.errors import HomogeneityViolation, TimeoutBudget
from genbs.poly import QQ
from genbs.weyl import WeylOp, WeylRing
from genbs.weyl_groebner import (
    GBBudget,
    balance_pairs,
    elimination_order,
    is_left_groebner,
    is_weight_homogeneous,
    left_buchberger,
    left_normal_form,
    left_spoly,
    subring_elements,
    weight0_extract,
    weight_vector,
)

W = WeylRing(QQ, ("x", "dx", "s"), ((0, 1),))
X, DX, S = (W.gen(n) for n in W.names)


def random_op(rng, ring, max_terms=3, max_exp=2):
    acc = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        exp = tuple(rng.randrange(max_exp + 1) for _ in range(ring.nvars))
        c = Fraction(rng.randrange(-3, 4))
        if c:
            acc[exp] = acc.get(exp, 0) + c
    return WeylOp(ring, {e: c for e, c in acc.items() if c})


def test_left_normal_form_exact():
    basis = [X * DX - S, X**2]
    f = X**2 * DX**2 + X * DX + S
    nf, cof = left_normal_form(f, basis, with_cofactors=True)
    rebuilt = nf
    for q, b in zip(cof, basis):
        rebuilt = rebuilt + q * b
    assert rebuilt == f


def test_left_buchberger_idempotent_and_groebner():
    gens = [X * DX - S, X**3]
    basis = left_buchberger(gens)
    assert is_left_groebner(basis)
    again = left_buchberger(basis)
    assert [str(g) for g in again] == [str(g) for g in basis]
    # every S-pair of the basis reduces to zero
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = left_spoly(basis[i], basis[j])
            assert left_normal_form(s, basis).is_zero()


def test_left_buchberger_cofactors():
    gens = [X * DX - S, X**2]
    basis, reps = left_buchberger(gens, cofactors=True)
    for g, rep in zip(basis, reps):
        rebuilt = W.zero()
        for q, f in zip(rep, gens):
            rebuilt = rebuilt + q * f
        assert rebuilt == g


def test_left_buchberger_random_spoly_property():
    rng = random.Random(29)
    checked = 0
    for _ in range(20):
        gens = [random_op(rng, W, max_terms=2, max_exp=2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        try:
            basis = left_buchberger(gens, budget=GBBudget(max_steps=600))
        except TimeoutBudget:
            continue
        assert is_left_groebner(basis)
        checked += 1
    assert checked >= 5


def test_elimination_and_subring():
    # eliminate dx from <x dx - s, x^2 dx>: the intersection with Q[x, s]
    E = W.with_order(elimination_order(W, ("dx",)))
    gens = [WeylOp(E, dict(g._terms)) for g in [X * DX - S, X**2 * DX]]
    basis = left_buchberger(gens)
    sub = subring_elements(basis, kill_names=("dx",))
    assert all(g.degree_in("dx") == 0 for g in sub)
    assert any(not g.is_zero() for g in sub)


def test_weight_vector_and_homogeneity():
    WT = WeylRing(QQ, ("t", "u", "dt", "y"), ((0, 2),))
    w = weight_vector(WT, {"t": 1, "dt": -1, "u": 1, "y": -1})
    t, u, dt, y = (WT.gen(n) for n in WT.names)
    assert is_weight_homogeneous(t * dt, w)
    assert is_weight_homogeneous(u * y - 1, w)
    assert not is_weight_homogeneous(t + WT.one(), w)


def test_balance_pairs():
    WT = WeylRing(QQ, ("x", "t", "dx", "dt"), ((0, 2), (1, 3)))
    x, t, dx, dt = (WT.gen(n) for n in WT.names)
    # degree +1 in the (t, dt) pair: balancing left-multiplies by dt
    g = t * x
    balanced = balance_pairs(g, t_idx=(1,), dt_idx=(3,))
    assert balanced == dt * (t * x)
    for exp in balanced._terms:
        assert exp[1] == exp[3]
    # degree -1: balancing multiplies by t
    g2 = dt * x
    balanced2 = balance_pairs(g2, t_idx=(1,), dt_idx=(3,))
    for exp in balanced2._terms:
        assert exp[1] == exp[3]
    # mixed degrees inside one element are rejected
    with pytest.raises(HomogeneityViolation):
        balance_pairs(t + x, t_idx=(1,), dt_idx=(3,))


def test_weight0_extract_matched():
    WT = WeylRing(QQ, ("x", "t", "u", "dx", "dt", "y"), ((0, 3), (1, 4)))
    x, t, u, dx, dt, y = (WT.gen(n) for n in WT.names)
    ops = [t * dt + 1, t * x, u * y - 1]
    out = weight0_extract(
        ops, WT, t_names=("t",), dt_names=("dt",), u_names=("u",), y_names=("y",)
    )
    # the u, y element is dropped; the others come back pair-balanced
    assert len(out) == 2
    for g in out:
        assert g.degree_in("u") == 0 and g.degree_in("y") == 0
        for exp in g._terms:
            assert exp[1] == exp[4]


def test_budget_ticks():
    b = GBBudget(max_steps=5)
    for _ in range(5):
        b.tick()
    with pytest.raises(TimeoutBudget):
        b.tick()
    assert b.used == 5
