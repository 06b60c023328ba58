import pytest
from hypothesis import given, settings, strategies as st

from lawvere.builtin import (ABELIAN_GROUP, COMMUTATIVE_MONOID,
                             IDENTITY_THEORY, MONOID, POINTED, SEMIGROUP)
from lawvere.parser import parse_term
from lawvere.terms import (App, StructuralError, Var, brute_force_normal_forms,
                           substitute, term_size)
from .conftest import words_over


def mono(text, arity):
    return parse_term(text, MONOID, arity)


def abel(text, arity):
    return parse_term(text, ABELIAN_GROUP, arity)


class TestSubstitute:
    def test_diagonal(self):
        t = mono("ab", 2)
        got = MONOID.normalize(substitute(t, (Var(0), Var(0))))
        assert got == mono("aa", 1)

    def test_composite_three_ary_operation(self):
        # x^2 y applied to (abc, ab^2c^2)
        t = mono("a^2b", 2)
        sigma = (mono("abc", 3), mono("ab^2c^2", 3))
        got = MONOID.normalize(substitute(t, sigma))
        assert got == mono("abcabcab^2c^2", 3)

    def test_identity_tuple(self):
        t = abel("a-b+c", 3)
        assert substitute(t, (Var(0), Var(1), Var(2))) == t

    def test_arity_mismatch(self):
        with pytest.raises(StructuralError):
            substitute(mono("ab", 2), (Var(0),))


class TestNormalize:
    def test_abgroup_cancellation(self):
        assert abel("a+b-a", 3) == Var(1)

    def test_monoid_flattening(self):
        raw = App(MONOID.op("mul"),
                  (App(MONOID.op("mul"), (Var(0), Var(1))), Var(2)))
        assert MONOID.normalize(raw) == mono("abc", 3)

    def test_abgroup_coefficient_form(self):
        add = ABELIAN_GROUP.op("add")
        assert ABELIAN_GROUP.normalize(App(add, (Var(0), Var(0)))) == \
            abel("a+a", 1)

    def test_unknown_operation_rejected(self):
        with pytest.raises(StructuralError):
            ABELIAN_GROUP.normalize(mono("ab", 2))
        with pytest.raises(StructuralError):
            IDENTITY_THEORY.normalize(mono("ab", 2))


class TestEnumerate:
    def test_monoid_words_up_to_length_two(self):
        # oracle: plain words of length <= 2 over two letters, 7 of them
        oracle = {w for w in words_over(2, 2)}
        got = MONOID.enumerate_normal(2, 3)
        assert len(got) == len(oracle) == 7
        expected = {mono("1", 2), mono("a", 2), mono("b", 2), mono("aa", 2),
                    mono("ab", 2), mono("ba", 2), mono("bb", 2)}
        assert set(got) == expected

    def test_size_zero_bound(self):
        assert MONOID.enumerate_normal(0, 0) == []
        assert MONOID.enumerate_normal(0, 1) == [mono("1", 0)]

    def test_pointed_has_two_normal_forms(self):
        for bound in (1, 4, 9):
            got = POINTED.enumerate_normal(1, bound)
            assert got == [Var(0), parse_term("1", POINTED, 1)]

    @pytest.mark.parametrize("spec,k,bound", [
        (MONOID, 2, 5), (SEMIGROUP, 2, 5), (ABELIAN_GROUP, 2, 5),
        (COMMUTATIVE_MONOID, 2, 5), (POINTED, 2, 5), (IDENTITY_THEORY, 3, 2),
    ])
    def test_matches_brute_force(self, spec, k, bound):
        # oracle: enumerate every raw term and keep the self-normal ones
        assert spec.enumerate_normal(k, bound) == \
            brute_force_normal_forms(spec, k, bound)

    @pytest.mark.parametrize("spec", [MONOID, ABELIAN_GROUP, SEMIGROUP])
    def test_duplicate_free_and_self_normal(self, spec):
        got = spec.enumerate_normal(3, 5)
        assert len(got) == len(set(got))
        for t in got:
            assert spec.normalize(t) == t
            assert term_size(t) <= 5


# hypothesis strategies for raw terms over a fixed signature


def raw_terms(spec, k, max_depth=3):
    leaves = [st.builds(Var, st.integers(0, k - 1))]
    leaves.extend(st.just(App(op, ())) for op in spec.signature
                  if op.arity == 0)
    base = st.one_of(leaves)

    def extend(children):
        apps = [st.builds(lambda *a, op=op: App(op, tuple(a)),
                          *([children] * op.arity))
                for op in spec.signature if op.arity > 0]
        return st.one_of(apps) if apps else children

    return st.recursive(base, extend, max_leaves=2 ** max_depth)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_substitution_is_associative(data):
    spec = data.draw(st.sampled_from([MONOID, ABELIAN_GROUP, SEMIGROUP]))
    t = data.draw(raw_terms(spec, 2))
    sigma = tuple(data.draw(raw_terms(spec, 2)) for _ in range(2))
    tau = tuple(data.draw(raw_terms(spec, 2)) for _ in range(2))
    left = substitute(substitute(t, sigma), tau)
    right = substitute(t, tuple(substitute(s, tau) for s in sigma))
    assert left == right


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_normalizer_is_idempotent_and_congruent(data):
    spec = data.draw(st.sampled_from(
        [MONOID, ABELIAN_GROUP, SEMIGROUP, COMMUTATIVE_MONOID]))
    t = data.draw(raw_terms(spec, 2))
    n = spec.normalize(t)
    assert spec.normalize(n) == n
    # congruence: substituting raw inputs or their normal forms agrees
    sigma = tuple(data.draw(raw_terms(spec, 2)) for _ in range(2))
    via_raw = spec.normalize(substitute(t, sigma))
    via_normal = spec.normalize(substitute(
        n, tuple(spec.normalize(s) for s in sigma)))
    assert via_raw == via_normal
