"""Field-with-involution scalar layer."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from congru import FieldKind, FieldSpec, GaussianRational, Involution, ModInt

from conftest import ALL_FIELDS, GAUSSIAN_CONJ, GF7, RATIONALS, scalar_strategy

_small = st.integers(-6, 6)
_gauss = st.builds(
    lambda a, b, c, d: GaussianRational(Fraction(a, c), Fraction(b, d)),
    _small, _small, st.integers(1, 5), st.integers(1, 5))


class TestGaussianRational:
    def test_arithmetic_identities(self):
        x = GaussianRational(Fraction(1, 2), Fraction(-3))
        y = GaussianRational(Fraction(2), Fraction(1, 4))
        assert x + y - y == x
        assert (x * y) / y == x
        assert x * GaussianRational(1, 0) == x

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1, 1) / GaussianRational(0, 0)

    def test_i_squared(self):
        i = GaussianRational(0, 1)
        assert i * i == GaussianRational(-1, 0)

    def test_hash_matches_fraction_when_real(self):
        assert hash(GaussianRational(Fraction(3, 4), 0)) \
            == hash(Fraction(3, 4))

    def test_immutable(self):
        x = GaussianRational(1, 2)
        with pytest.raises(AttributeError):
            x.re = Fraction(5)

    @given(_gauss, _gauss)
    def test_conjugate_is_ring_involution(self, x, y):
        assert x.conjugate().conjugate() == x
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()

    @given(_gauss)
    def test_norm_via_conjugate(self, x):
        n = x * x.conjugate()
        assert n.im == 0 and n.re >= 0


class TestModInt:
    def test_inverse(self):
        a = ModInt(2, 7)
        assert a * (ModInt(1, 7) / a) == 1

    def test_mixed_moduli(self):
        with pytest.raises(ValueError, match="mixed moduli"):
            ModInt(1, 7) + ModInt(1, 11)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            ModInt(3, 7) / ModInt(0, 7)

    def test_negative_lift(self):
        assert ModInt(-1, 7) == 6


class TestFieldSpec:
    def test_conjugation_requires_gaussian(self):
        with pytest.raises(ValueError, match="Gaussian"):
            FieldSpec(FieldKind.RATIONAL, Involution.CONJUGATION)

    def test_prime_field_requires_modulus(self):
        with pytest.raises(ValueError, match="modulus"):
            FieldSpec(FieldKind.PRIME_FIELD)

    def test_modulus_must_be_prime(self):
        with pytest.raises(ValueError, match="not prime"):
            FieldSpec.prime_field(15)

    def test_modulus_bound(self):
        with pytest.raises(ValueError, match="2\\*\\*31"):
            FieldSpec.prime_field(2**31 + 11)

    def test_modulus_only_for_prime_field(self):
        with pytest.raises(ValueError, match="only meaningful"):
            FieldSpec(FieldKind.RATIONAL, p=7)

    def test_identity_involution_over_gaussian_is_legal(self):
        f = FieldSpec.gaussian(conjugation=False)
        x = f.parse_scalar("1+2*i")
        assert f.conjugate(x) == x

    def test_conjugate_flips_imaginary(self):
        x = GAUSSIAN_CONJ.parse_scalar("1+2*i")
        assert GAUSSIAN_CONJ.conjugate(x) == GAUSSIAN_CONJ.parse_scalar(
            "1-2*i")

    def test_coerce_fraction_into_prime_field(self):
        # 1/2 = 2^-1 = 4 in GF(7)
        assert GF7.coerce(Fraction(1, 2)) == 4

    def test_coerce_string(self):
        assert RATIONALS.coerce("-3/4") == Fraction(-3, 4)


class TestScalarGrammar:
    @pytest.mark.parametrize("text,re_part,im_part", [
        ("i", 0, 1),
        ("-i", 0, -1),
        ("3i", 0, 3),
        ("3*i", 0, 3),
        ("-2/3*i", 0, Fraction(-2, 3)),
        ("1/2-3/4*i", Fraction(1, 2), Fraction(-3, 4)),
        ("1+i", 1, 1),
        ("2-i", 2, -1),
        ("1+2i", 1, 2),
        ("0", 0, 0),
        ("-7/2", Fraction(-7, 2), 0),
    ])
    def test_gaussian_accepted_forms(self, text, re_part, im_part):
        got = GAUSSIAN_CONJ.parse_scalar(text)
        assert got == GaussianRational(Fraction(re_part), Fraction(im_part))

    @pytest.mark.parametrize("bad", [
        "", "x", "1+", "i2", "++i", "1 + i", "1/0", "i*3", "2ii",
    ])
    def test_gaussian_rejected_forms(self, bad):
        with pytest.raises(ValueError, match="scalar"):
            GAUSSIAN_CONJ.parse_scalar(bad)

    def test_real_gaussian_renders_plain(self):
        assert GAUSSIAN_CONJ.render_scalar(GaussianRational(Fraction(3), 0)) \
            == "3"

    def test_prime_field_residue(self):
        assert GF7.parse_scalar("13") == 6
        assert GF7.render_scalar(GF7.from_int(13)) == "6"

    @pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
    def test_render_parse_roundtrip_examples(self, field):
        for n in (-5, 0, 1, 3):
            x = field.from_int(n)
            assert field.parse_scalar(field.render_scalar(x)) == x


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
@given(data=st.data())
def test_render_parse_roundtrip(field, data):
    x = data.draw(scalar_strategy(field))
    assert field.parse_scalar(field.render_scalar(x)) == x


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
@given(data=st.data())
def test_involution_axioms(field, data):
    x = data.draw(scalar_strategy(field))
    y = data.draw(scalar_strategy(field))
    c = field.conjugate
    assert c(c(x)) == x
    assert c(x + y) == c(x) + c(y)
    assert c(x * y) == c(x) * c(y)


@pytest.mark.parametrize("field", ALL_FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(field, data):
    from congru.scalar import add, invert, is_zero, mul, sub

    x = data.draw(scalar_strategy(field))
    y = data.draw(scalar_strategy(field))
    assert sub(add(x, y), y) == x
    if not is_zero(x):
        assert mul(x, invert(x)) == field.one()
