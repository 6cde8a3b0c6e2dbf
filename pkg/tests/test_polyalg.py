import random

import pytest

from core.errors import ParseError, RingMismatch, UnknownVariable
from core.markers import INFINITE
from core.polyalg import (Polynomial, PolyRing, bounded_span_contains, buchberger, ideal_contains,
                          is_proper, monomials_up_to, normal_form, parse_poly, quotient_monomial_basis)


def test_parse_reduces_coefficients(F2xy):
    f = parse_poly(F2xy, "3*x^2 + 2*x*y + (x+y)^2")
    # (x+y)^2 = x^2 + y^2 over F_2
    assert f == parse_poly(F2xy, "y^2")


def test_parse_error_reports_offset(F2xy):
    with pytest.raises(ParseError) as info:
        parse_poly(F2xy, "x + * y")
    assert info.value.offset == 4


def test_unknown_variable(F2xy):
    with pytest.raises(UnknownVariable):
        parse_poly(F2xy, "x + z")


def test_ring_mismatch():
    a = PolyRing(2, ("x",))
    b = PolyRing(3, ("x",))
    with pytest.raises(RingMismatch):
        normal_form(a.gen("x"), [b.gen("x")])


def test_grevlex_lead_monomial():
    ring = PolyRing(5, ("x", "y", "z"))
    f = ring.parse("x*z^2 + y^3 + x^2")
    # grevlex: x*z^2 and y^3 both degree 3, y^3 wins on the last variable
    assert f.lead_monomial == (0, 3, 0)


def test_reduced_groebner_basis_of_twisted_cubic_style_ideal():
    ring = PolyRing(3, ("x", "y"))
    gb = buchberger(ring, [ring.parse("x^2 - y"), ring.parse("x*y - 1")])
    assert all(g.lead_coeff == 1 for g in gb)
    leads = [g.lead_monomial for g in gb]
    for i, a in enumerate(leads):
        for j, b in enumerate(leads):
            if i != j:
                assert not all(x <= y for x, y in zip(a, b))
    assert ideal_contains(ring, gb, ring.parse("y^3 - 1"))


def test_unit_ideal(F2xy):
    gens = [F2xy.parse("x"), F2xy.parse("x + 1")]
    assert not is_proper(F2xy, gens)
    assert buchberger(F2xy, gens) == [F2xy.one()]
    assert quotient_monomial_basis(F2xy, gens) == []


def test_empty_ideal_basis(F2xy):
    assert buchberger(F2xy, [F2xy.zero()]) == []
    assert quotient_monomial_basis(F2xy, []) is INFINITE


def test_quotient_monomial_basis(F2xy):
    basis = quotient_monomial_basis(F2xy, [F2xy.parse("x^2"), F2xy.parse("x*y"), F2xy.parse("y^2")])
    assert sorted(basis) == [(0, 0), (0, 1), (1, 0)]
    assert quotient_monomial_basis(F2xy, [F2xy.parse("x^2")]) is INFINITE


# ---------- 与线性张成的对照 ----------

def _random_poly(rng, ring, max_degree, max_terms):
    monomials = monomials_up_to(ring.nvars, max_degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(monomials)] = rng.randrange(1, ring.modulus)
    return Polynomial(ring, terms)


def test_bounded_span_contains(F2xy):
    gens = [F2xy.parse("x^2 + y")]
    assert bounded_span_contains(F2xy, gens, F2xy.parse("x^3 + x*y"), 3)
    # y^2 + x^2*y = y·g 需要次数 3
    assert not bounded_span_contains(F2xy, gens, F2xy.parse("x^2*y + y^2"), 2)
    assert bounded_span_contains(F2xy, gens, F2xy.parse("x^2*y + y^2"), 3)
    assert not bounded_span_contains(F2xy, gens, F2xy.parse("x"), 4)
    assert bounded_span_contains(F2xy, [], F2xy.zero(), 2)


def test_monomials_up_to():
    assert len(monomials_up_to(2, 2)) == 6
    assert monomials_up_to(3, 0) == [(0, 0, 0)]
    assert monomials_up_to(2, -1) == []


def test_membership_agrees_with_span_oracle():
    rng = random.Random(0)
    for _ in range(200):
        p = rng.choice([2, 3])
        names = ("x", "y", "z")[: rng.randint(1, 3)]
        ring = PolyRing(p, names)
        gens = [_random_poly(rng, ring, 2, 3) for _ in range(rng.randint(1, 2))]
        gb = buchberger(ring, gens)
        candidate = _random_poly(rng, ring, 4, 3)
        if bounded_span_contains(ring, gens, candidate, 4):
            assert normal_form(candidate, gb).is_zero()
        member = ring.zero()
        for g in gens:
            member = member + _random_poly(rng, ring, 2, 2) * g
        assert normal_form(member, gb).is_zero()
        assert bounded_span_contains(ring, gens, member, 4)


# ---------- 与 sympy 的对照 ----------

def _to_sympy(sp, f, symbols):
    expr = sp.Integer(0)
    for m, c in f.terms.items():
        term = sp.Integer(c)
        for s, e in zip(symbols, m):
            term *= s ** e
        expr += term
    return expr


def _canonical(term_dicts):
    return sorted(sorted(d.items()) for d in term_dicts)


@pytest.mark.parametrize("seed", range(10))
def test_reduced_basis_matches_sympy(seed):
    sp = pytest.importorskip("sympy")
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    names = ("x", "y", "z")[: rng.randint(2, 3)]
    ring = PolyRing(p, names)
    symbols = sp.symbols(" ".join(names))
    gens = [_random_poly(rng, ring, 2, 3) for _ in range(rng.randint(2, 3))]
    ours = [dict(g.terms) for g in buchberger(ring, gens)]
    reference = sp.groebner([_to_sympy(sp, g, symbols) for g in gens], *symbols, modulus=p, order="grevlex")
    theirs = []
    for expr in reference.exprs:
        poly = sp.Poly(expr, *symbols, modulus=p)
        theirs.append({tuple(m): int(c) % p for m, c in poly.terms() if int(c) % p})
    assert _canonical(ours) == _canonical(theirs)
