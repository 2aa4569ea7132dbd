import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simrex.syntax import (
    GenConfig,
    Letter,
    ONE,
    One,
    ParseError,
    Product,
    Regex,
    Star,
    Sum,
    ZERO,
    Zero,
    generate,
    letter_count,
    letters,
    normalize,
    parse,
    render,
    sample,
)

A, B, C = Letter("a"), Letter("b"), Letter("c")


regexes = st.recursive(
    st.sampled_from([ZERO, ONE, A, B, C]),
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda p: Sum(*p)),
        st.tuples(kids, kids).map(lambda p: Product(*p)),
        kids.map(Star),
    ),
    max_leaves=16,
)


class TestParse:
    def test_motivating_example(self):
        assert parse("a.b + a.(b+c)") == Sum(Product(A, B), Product(A, Sum(B, C)))

    def test_one(self):
        assert parse("1") == ONE

    def test_star_binds_tightest(self):
        assert parse("(ab)*c") == Product(Star(Product(A, B)), C)
        assert parse("ab*") == Product(A, Star(B))

    def test_dot_and_juxtaposition_agree(self):
        assert parse("a.b.c") == parse("abc") == parse("a b c")

    def test_double_star(self):
        assert parse("a**") == Star(Star(A))

    def test_sum_and_product_fold_right(self):
        assert parse("a+b+c") == Sum(A, Sum(B, C))
        assert parse("abc") == Product(A, Product(B, C))

    def test_whitespace_insignificant(self):
        assert parse(" a (\tb + c ) ") == parse("a(b+c)")

    @pytest.mark.parametrize(
        "text,offset",
        [("", 0), ("a +", 3), ("(a", 2), ("a)", 1), ("*a", 0), ("a ++ b", 3), ("A", 0)],
    )
    def test_errors_carry_offset_and_expectations(self, text, offset):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.offset == offset
        assert err.value.expected


class TestRender:
    def test_zero(self):
        assert render(ZERO) == "0"

    def test_minimal_parens(self):
        assert render(Sum(Product(A, B), C)) == "ab + c"
        assert render(Star(Sum(A, ONE))) == "(a + 1)*"
        assert render(Product(Product(A, B), C)) == "(ab)c"
        assert render(Sum(Sum(A, B), C)) == "(a + b) + c"
        assert render(Product(A, Sum(B, C))) == "a(b + c)"

    @given(regexes)
    @settings(max_examples=300)
    def test_roundtrip(self, x):
        assert parse(render(x)) == x


class TestNormalize:
    def test_unit_laws(self):
        assert normalize(Product(ONE, B)) == B
        assert normalize(Product(B, ONE)) == B

    def test_associativity(self):
        assert normalize(Product(Product(A, B), C)) == Product(A, Product(B, C))

    def test_inner_units_dropped(self):
        assert normalize(Product(A, Product(ONE, Star(B)))) == Product(A, Star(B))

    def test_zero_products_kept(self):
        # 0·x is a theorem (equivalent to 0), not an identification
        assert normalize(Product(ZERO, A)) == Product(ZERO, A)

    def test_sums_untouched(self):
        assert normalize(Sum(A, A)) == Sum(A, A)

    @given(regexes)
    @settings(max_examples=300)
    def test_idempotent(self, x):
        assert normalize(normalize(x)) == normalize(x)

    @given(regexes)
    @settings(max_examples=200)
    def test_no_unit_factors_and_right_spine(self, x):
        def well_formed(e: Regex) -> bool:
            match e:
                case Product(l, r):
                    if isinstance(l, (Product, One)) or isinstance(r, One):
                        return False
                    return well_formed(l) and well_formed(r)
                case Sum(l, r):
                    return well_formed(l) and well_formed(r)
                case Star(b):
                    return well_formed(b)
                case _:
                    return True

        assert well_formed(normalize(x))


class TestStructure:
    def test_sizes(self):
        assert ZERO.size == 1
        assert Sum(A, Product(B, C)).size == 5
        assert Star(A).size == 2

    def test_letters_and_counts(self):
        x = parse("a(b+a)* + 1")
        assert letters(x) == frozenset("ab")
        assert letter_count(x) == 3

    def test_letter_validation(self):
        with pytest.raises(ValueError):
            Letter("A")
        with pytest.raises(ValueError):
            Letter("ab")

    def test_equality_is_structural(self):
        assert Sum(A, B) == Sum(Letter("a"), Letter("b"))
        assert hash(Sum(A, B)) == hash(Sum(Letter("a"), Letter("b")))
        assert Sum(A, B) != Sum(B, A)
        assert Zero() == ZERO and One() == ONE


class TestGenerate:
    def test_single_leaf_when_budget_is_one(self):
        for seed in range(50):
            x = generate(GenConfig(max_size=1, alphabet=("a",), seed=seed))
            assert x in (ZERO, ONE, A)

    def test_deterministic(self):
        config = GenConfig(max_size=15, seed=987)
        assert generate(config) == generate(config)
        assert sample(config, 20) == sample(config, 20)

    def test_size_bound_on_corpus(self):
        config = GenConfig(max_size=20, seed=5)
        for x in sample(config, 1000):
            assert x.size <= 20

    def test_alphabet_respected(self):
        config = GenConfig(max_size=12, alphabet=("q", "r"), seed=3)
        for x in sample(config, 200):
            assert letters(x) <= frozenset("qr")

    def test_config_validation(self):
        with pytest.raises(ValueError):
            GenConfig(max_size=0)
        with pytest.raises(ValueError):
            GenConfig(star_probability=1.5)
        with pytest.raises(ValueError):
            GenConfig(seed=-1)
        assert GenConfig(alphabet="aba").alphabet == ("a", "b")

    def test_roundtrip_on_generated_corpus(self):
        for x in sample(GenConfig(max_size=25, seed=77), 500):
            assert parse(render(x)) == x
