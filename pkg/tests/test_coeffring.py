import random
from fractions import Fraction

import pytest

from hopfcone.coeffring import (MultiPoly, PoleError, PolyFraction, binomial_poly,
                                eval_scalar, qbinomial, scalar_simplify,
                                scalar_to_json)


def _random_poly(rng, nvars=3, nterms=3, maxdeg=2, maxcoef=5):
    out = MultiPoly()
    names = ["a", "b", "q"]
    for _ in range(rng.randint(0, nterms)):
        term = MultiPoly.const(Fraction(rng.randint(-maxcoef, maxcoef),
                                        rng.randint(1, 4)))
        for name in names[:nvars]:
            term = term * MultiPoly.var(name, rng.randint(0, maxdeg))
        out = out + term
    return out


def test_ring_axioms_multipoly():
    rng = random.Random(12)
    for _ in range(500):
        x, y, z = (_random_poly(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_ring_axioms_polyfraction():
    rng = random.Random(34)
    count = 0
    while count < 500:
        nx, ny, nz = (_random_poly(rng) for _ in range(3))
        dx, dy, dz = (_random_poly(rng) for _ in range(3))
        if not (dx and dy and dz):
            continue
        x, y, z = PolyFraction(nx, dx), PolyFraction(ny, dy), PolyFraction(nz, dz)
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        count += 1


def test_cross_multiplication_equivalence():
    rng = random.Random(56)
    # reflexive / symmetric / transitive on scaled copies of the same fraction
    for _ in range(200):
        n = _random_poly(rng)
        d = _random_poly(rng)
        if not d:
            continue
        s1 = _random_poly(rng)
        s2 = _random_poly(rng)
        if not (s1 and s2):
            continue
        f = PolyFraction(n, d)
        g = PolyFraction(n * s1, d * s1)
        h = PolyFraction(n * s2, d * s2)
        assert f == f
        assert f == g and g == f
        assert g == h and f == h


def test_qbinomial_examples():
    q = MultiPoly.var("q")
    assert qbinomial(2, 1) == 1 + q
    assert qbinomial(5, 0) == MultiPoly.const(1)
    # product-formula oracle: [4 2] = (1-q^3)(1-q^4) / ((1-q)(1-q^2))
    want = 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    assert qbinomial(4, 2) == want
    num = (1 - MultiPoly.var("q", 3)) * (1 - MultiPoly.var("q", 4))
    den = (1 - q) * (1 - MultiPoly.var("q", 2))
    assert PolyFraction(num, den) == PolyFraction(qbinomial(4, 2))


def test_qbinomial_symmetry_and_specialization():
    import math
    for n in range(0, 11):
        for k in range(0, n + 1):
            assert qbinomial(n, k) == qbinomial(n, n - k)
            assert qbinomial(n, k).eval({"q": Fraction(1)}) == math.comb(n, k)


def test_qbinomial_range_error():
    with pytest.raises(ValueError):
        qbinomial(3, 4)


def test_binomial_poly():
    t = MultiPoly.var("t")
    assert binomial_poly(0) == MultiPoly.const(1)
    assert binomial_poly(1) == t
    assert binomial_poly(2) == (t * t - t) * Fraction(1, 2)


def test_eval_and_pole():
    z1 = MultiPoly.var("z1")
    f = PolyFraction(1, z1 - 1)
    assert f.eval({"z1": Fraction(3)}) == Fraction(1, 2)
    g = PolyFraction(MultiPoly.var("q") + 1)
    assert g.eval({"q": Fraction(1)}) == 2
    with pytest.raises(PoleError):
        f.eval({"z1": Fraction(1)})


def test_mixed_scalar_arithmetic():
    a = MultiPoly.var("a")
    assert 2 + a == a + 2
    assert (a - a) == 0
    assert not (a - a)
    f = PolyFraction(1, a)
    assert f * a == 1
    assert (f + 1) == PolyFraction(a + 1, a)
    assert Fraction(1, 2) * a * 2 == a


def test_fraction_normalization():
    a = MultiPoly.var("a")
    # constant denominators fold into the numerator
    f = PolyFraction(a, MultiPoly.const(Fraction(2)))
    assert f.den.const_value() == 1
    assert f.num == a * Fraction(1, 2)
    # denominator sign and integer content are normalized
    g = PolyFraction(a, (a - 1) * (-2))
    assert g == PolyFraction(a * Fraction(-1, 2), a - 1)


def test_scalar_json():
    assert scalar_to_json(Fraction(3)) == 3
    assert scalar_to_json(Fraction(1, 2)) == "1/2"
    a = MultiPoly.var("a")
    j = scalar_to_json(PolyFraction(a + 1, a))
    assert j["num"] == [{"coeff": 1, "exps": {"a": 1}}, {"coeff": 1, "exps": {}}]
    assert j["den"] == [{"coeff": 1, "exps": {"a": 1}}]
    assert scalar_simplify(MultiPoly.const(Fraction(1, 3))) == Fraction(1, 3)


def test_string_form():
    a, b = MultiPoly.var("a"), MultiPoly.var("b")
    assert str(a * a + 3 * a * b + b * b) == "a^2 + 3*a*b + b^2"


def test_eval_scalar_helper():
    assert eval_scalar(Fraction(2, 3), {}) == Fraction(2, 3)
    assert eval_scalar(MultiPoly.var("t"), {"t": Fraction(5)}) == 5
