import pytest

from drinfeld2 import (DrinfeldModule, UPoly, annihilation_holds, build_tower,
                       discriminant, euler_characteristic, frobenius_charpoly,
                       is_imaginary, is_isogenous, minimal_polynomial)
from drinfeld2.charpoly import minimal_polynomial_annihilates


def module311(g, delta):
    tw = build_tower(3, 1, 1)
    return DrinfeldModule(tw, UPoly.parse(tw.fq, "T"), g, delta)


def P3(text):
    return UPoly.parse(build_tower(3, 1, 1).fq, text)


def test_charpoly_closed_form_n1():
    # at d = m = 1, P = T: unit = -1/delta and trace = unit * g
    cp = frobenius_charpoly(module311(1, 1))
    assert cp.trace == P3("2") and cp.unit == 2
    cp0 = frobenius_charpoly(module311(0, 1))
    assert cp0.trace.is_zero() and cp0.unit == 2
    tw = module311(1, 1).tower
    for g in range(3):
        for delta in (1, 2):
            cp = frobenius_charpoly(module311(g, delta))
            unit = tw.fq.neg(tw.fq.inv(delta))
            assert cp.unit == unit
            assert cp.trace == UPoly.constant(tw.fq, tw.fq.mul(unit, g))


def test_norm_term_is_constant_coefficient():
    cp = frobenius_charpoly(module311(1, 1))
    assert cp.norm_term() == P3("2*T")
    assert cp.eval_at(UPoly.zero(cp.trace.fq)) == cp.norm_term()


def test_annihilation_identity():
    for g in range(3):
        for delta in (1, 2):
            assert annihilation_holds(module311(g, delta))


def test_euler_characteristic_example():
    chi = euler_characteristic(module311(1, 1))
    assert chi.gen == P3("T+1")
    assert chi.degree() == 1


def test_norm_ideals_are_prime_powers():
    # (P(0)) equals (prime^m) as ideals, for a few modules
    for n, ptxt, m in ((1, "T", 1), (2, "T", 2), (2, "T^2+1", 1)):
        tw = build_tower(3, 1, n)
        prime = UPoly.parse(tw.fq, ptxt)
        mod = DrinfeldModule(tw, prime, 1, 1)
        cp = frobenius_charpoly(mod)
        assert cp.norm_term().monic() == prime.pow(m)
        # (P(1)) is the product of the invariant factors: cross-module check
        from drinfeld2 import module_structure
        inv = module_structure(mod)
        assert (inv.i1 * inv.i2).monic() == cp.chi_poly()


def test_discriminant_examples():
    cp = frobenius_charpoly(module311(1, 1))
    assert discriminant(cp) == P3("T+1")  # 4 - 8T mod 3
    cp0 = frobenius_charpoly(module311(0, 1))
    assert discriminant(cp0) == P3("T")  # -4*2*T mod 3
    assert is_imaginary(P3("T+1"), cp.trace.fq)
    assert is_imaginary(P3("2"), cp.trace.fq)
    assert not is_imaginary(P3("T^2+1"), cp.trace.fq)  # lc 1 is a square
    assert not is_imaginary(UPoly.zero(cp.trace.fq), cp.trace.fq)


def test_discriminant_is_imaginary_for_ordinary_odd_q():
    for n, ptxt in ((1, "T"), (2, "T"), (2, "T^2+1")):
        tw = build_tower(3, 1, n)
        prime = UPoly.parse(tw.fq, ptxt)
        m = tw.n // int(prime.degree())
        for g in range(tw.order):
            for delta in range(1, tw.order):
                mod = DrinfeldModule(tw, prime, g, delta)
                if mod.is_ordinary():
                    disc = discriminant(frobenius_charpoly(mod))
                    assert is_imaginary(disc, tw.fq)


def test_trace_degree_bound():
    for n, ptxt in ((1, "T"), (2, "T"), (2, "T^2+1"), (3, "T")):
        tw = build_tower(3, 1, n)
        prime = UPoly.parse(tw.fq, ptxt)
        for g in (0, 1, tw.order - 1):
            for delta in (1, tw.order - 1):
                cp = frobenius_charpoly(DrinfeldModule(tw, prime, g, delta))
                assert cp.trace_degree_ok()


def test_is_isogenous():
    a = module311(1, 1)
    assert is_isogenous(a, a)
    # same trace but different norm unit: distinct classes
    assert frobenius_charpoly(module311(1, 1)).key() == ((2,), 2)
    assert frobenius_charpoly(module311(2, 2)).key() == ((2,), 1)
    assert not is_isogenous(module311(1, 1), module311(2, 2))
    assert not is_isogenous(module311(1, 1), module311(1, 2))
    # partition into isogeny classes is an equivalence
    mods = [module311(g, d) for g in range(3) for d in (1, 2)]
    for x in mods:
        for y in mods:
            assert is_isogenous(x, y) == (
                frobenius_charpoly(x).key() == frobenius_charpoly(y).key())
    with pytest.raises(ValueError):
        tw2 = build_tower(3, 1, 2)
        is_isogenous(a, DrinfeldModule(tw2, UPoly.parse(tw2.fq, "T"), 1, 1))


def test_minimal_polynomial_ordinary_is_charpoly():
    mod = module311(1, 1)
    mp = minimal_polynomial(mod)
    cp = frobenius_charpoly(mod)
    assert len(mp) == 3
    assert mp[0] == cp.norm_term() and mp[1] == -cp.trace
    assert minimal_polynomial_annihilates(mod)


def test_minimal_polynomial_degree_one_case():
    # g = 0, delta in F_q^*, d = 1, m = 2: the Frobenius is phi(a) for a linear a
    tw = build_tower(3, 1, 2)
    prime = UPoly.parse(tw.fq, "T")
    mod = DrinfeldModule(tw, prime, 0, 1)
    cp = frobenius_charpoly(mod)
    assert cp.frobenius_in_image == UPoly.parse(tw.fq, "T")
    assert cp.trace == UPoly.parse(tw.fq, "2*T") and cp.unit == 1
    mp = minimal_polynomial(mod)
    assert len(mp) == 2  # X - T
    assert minimal_polynomial_annihilates(mod)
    # the minimal polynomial divides the characteristic polynomial:
    # P(a) = 0 exactly
    assert cp.eval_at(cp.frobenius_in_image).is_zero()
    assert annihilation_holds(mod)
    # a supersingular neighbor whose Frobenius is not in the image
    mod2 = DrinfeldModule(tw, prime, 0, 3)
    cp2 = frobenius_charpoly(mod2)
    assert cp2.frobenius_in_image is None
    assert (cp2.trace % prime).is_zero()
    assert annihilation_holds(mod2)


def test_charpoly_cached_per_module():
    mod = module311(1, 1)
    assert frobenius_charpoly(mod) is frobenius_charpoly(mod)


def test_q_even_charpoly_still_exact():
    tw = build_tower(2, 2, 1)
    prime = UPoly.parse(tw.fq, "T")
    for g in range(4):
        for delta in range(1, 4):
            mod = DrinfeldModule(tw, prime, g, delta)
            assert annihilation_holds(mod)
            cp = frobenius_charpoly(mod)
            assert discriminant(cp) == cp.trace * cp.trace  # char 2 degeneration
