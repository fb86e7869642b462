import math
import random

import pytest

from kummerlcp import make_field, nth_roots, poly_analyze
from kummerlcp.errors import DegreeZero, FieldTooLarge, NotPrime, ZeroPolynomial
from kummerlcp.ffield import FieldElement, Poly

FIELDS = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (7, 2), (13, 2)]


@pytest.fixture(params=FIELDS, ids=lambda pk: f"GF({pk[0] ** pk[1]})")
def field(request):
    return make_field(*request.param)


def test_construction_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(NotPrime):
        make_field(1, 2)
    with pytest.raises(DegreeZero):
        make_field(5, 0)
    with pytest.raises(FieldTooLarge):
        make_field(2, 40)


def test_canonical_modulus_deterministic():
    # the modulus is the lexicographically least monic irreducible, so
    # reconstructing the field always yields the same tables
    assert make_field(7, 2).modulus == (1, 0, 1)       # x^2 + 1
    assert make_field(3, 2).modulus == (1, 0, 1)       # x^2 + 1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)    # x^3 + x + 1
    assert make_field(5, 1).modulus == (0, 1)          # x
    F1 = make_field.__wrapped__(13, 2)
    F2 = make_field.__wrapped__(13, 2)
    assert F1.modulus == F2.modulus == make_field(13, 2).modulus


def test_modulus_is_irreducible(field):
    # the generating element t (enc = p) must not satisfy any proper factor:
    # its minimal polynomial has full degree k, i.e. 1, t, ..., t^{k-1} are
    # linearly independent <=> t generates all q encodings as polynomials
    if field.k == 1:
        return
    mod = Poly.from_ints(field, field.modulus)
    t = field.p  # encoding of the generator of the extension
    assert mod.eval_enc(t) == 0


def test_field_axioms_random(field):
    rng = random.Random(20260824)
    F = field
    for _ in range(2000):
        a = rng.randrange(F.q)
        b = rng.randrange(F.q)
        c = rng.randrange(F.q)
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_fermat_exhaustive(field):
    F = field
    for a in range(F.q):
        assert F.pow(a, F.q) == a
        if a:
            assert F.pow(a, F.q - 1) == 1


def test_pow_negative_and_zero(field):
    F = field
    for a in range(1, F.q):
        assert F.mul(F.pow(a, -1), a) == 1
        assert F.pow(a, 0) == 1
        assert F.pow(a, -3) == F.inv(F.pow(a, 3))
    assert F.pow(0, 0) == 1
    assert F.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        F.pow(0, -1)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_element_order_divides_group_order(field):
    F = field
    for a in range(1, F.q):
        order = F.element_order(a)
        assert (F.q - 1) % order == 0
        assert F.pow(a, order) == 1
        for f in {2, 3, 5, 7}:
            if order % f == 0:
                assert F.pow(a, order // f) != 1


def test_vectorized_ops_match_scalar(field):
    import numpy as np

    F = field
    rng = random.Random(7)
    a = np.array([rng.randrange(F.q) for _ in range(200)], dtype=np.int64)
    b = np.array([rng.randrange(F.q) for _ in range(200)], dtype=np.int64)
    assert all(int(v) == F.add(int(x), int(y))
               for v, x, y in zip(F.add_arr(a, b), a, b))
    assert all(int(v) == F.mul(int(x), int(y))
               for v, x, y in zip(F.mul_arr(a, b), a, b))
    assert all(int(v) == F.sub(int(x), int(y))
               for v, x, y in zip(F.sub_arr(a, b), a, b))
    nz = a[a != 0]
    assert all(int(v) == F.inv(int(x)) for v, x in zip(F.inv_arr(nz), nz))
    assert all(int(v) == F.pow(int(x), 5) for v, x in zip(F.pow_arr(a, 5), a))


def test_field_element_wrapper():
    F = make_field(7, 2)
    a = F.element(10)
    b = F.element(3)
    assert (a + b).enc == F.add(10, 3)
    assert (a * b).enc == F.mul(10, 3)
    assert (a - b) + b == a
    assert (a / b) * b == a
    assert (-a) + a == F.zero()
    assert (a ** 3).enc == F.pow(10, 3)
    assert a.inverse() * a == F.one()
    assert int(b) == 3 and bool(b) and not bool(F.zero())
    # integers embed through the prime subfield
    assert (a + 7) == a
    assert (a * 1) == a


def test_nth_roots_properties(field):
    F = field
    for n in (1, 2, 3, F.q - 1 if F.q > 2 else 1):
        counted = 0
        for c in range(F.q):
            roots = nth_roots(FieldElement(F, c), n)
            for r in roots:
                assert F.pow(r.enc, n) == c
            if c == 0:
                assert [r.enc for r in roots] == [0]
            else:
                g = math.gcd(n, F.q - 1)
                assert len(roots) in (0, g)
            counted += len(roots)
        # y -> y^n is a function from the field onto its image
        assert counted == F.q


def test_nth_roots_known_values():
    F = make_field(7, 1)
    assert [r.enc for r in nth_roots(F.element(1), 3)] == [1, 2, 4]
    assert [r.enc for r in nth_roots(F.element(6), 3)] == [3, 5, 6]
    assert [r.enc for r in nth_roots(F.element(3), 2)] == []  # 3 is no square mod 7


def test_poly_arithmetic(field):
    F = field
    rng = random.Random(13)
    for _ in range(50):
        a = Poly(F, [rng.randrange(F.q) for _ in range(rng.randrange(1, 6))])
        b = Poly(F, [rng.randrange(F.q) for _ in range(rng.randrange(1, 6))])
        if b.is_zero():
            continue
        quot, rem = divmod(a, b)
        assert quot * b + rem == a
        assert rem.is_zero() or rem.degree < b.degree
        pt = rng.randrange(F.q)
        assert (a * b).eval_enc(pt) == F.mul(a.eval_enc(pt), b.eval_enc(pt))
        assert (a + b).eval_enc(pt) == F.add(a.eval_enc(pt), b.eval_enc(pt))


def test_poly_analyze_quartic_over_gf49():
    F = make_field(7, 2)
    f = Poly.from_ints(F, [1, 0, 0, 0, 1])  # x^4 + 1
    analysis = poly_analyze(f)
    assert len(analysis.roots) == 4
    assert all(mult == 1 for _, mult in analysis.roots)
    assert analysis.separable
    for root, _ in analysis.roots:
        assert F.pow(root.enc, 4) == F.neg(1)


def test_poly_analyze_multiplicities_and_separability():
    F = make_field(7, 1)
    sq = Poly.from_ints(F, [0, 0, 1])  # x^2
    analysis = poly_analyze(sq)
    assert analysis.roots == [(F.element(0), 2)]
    assert not analysis.separable
    no_roots = Poly.from_ints(F, [1, 0, 1])  # x^2 + 1, irreducible mod 7
    analysis = poly_analyze(no_roots)
    assert analysis.roots == [] and analysis.separable
    with pytest.raises(ZeroPolynomial):
        poly_analyze(Poly(F, []))


def test_poly_from_roots_and_derivative():
    F = make_field(3, 2)
    roots = [0, 1, 4]
    f = Poly.from_roots(F, roots)
    assert f.degree == 3
    for r in roots:
        assert f.eval_enc(r) == 0
    analysis = poly_analyze(f)
    assert sorted(r.enc for r, _ in analysis.roots) == roots
    # (x^3)' = 0 in characteristic 3
    cube = Poly.from_ints(F, [0, 0, 0, 1])
    assert cube.derivative().is_zero()


def test_field_serialization_roundtrip(field):
    data = field.to_json()
    again = make_field(data["p"], data["k"])
    assert again == field
    assert tuple(data["modulus"]) == field.modulus
