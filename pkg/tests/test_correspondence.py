import itertools

from lawvere.builtin import IDENTITY_THEORY, MONOID, POINTED
from lawvere.correspondence import (MonadMap, TermTheoryTable,
                                    composite_correspondence_check,
                                    encode_term, istar_composite,
                                    monad_from_theory, monad_map_natural,
                                    phi, reconstruct_map, roundtrip_check,
                                    tabulate_map)
from lawvere.distlaw import PS_LAW, RING_LAW, trivial_law
from lawvere.fragments import (FREE_MONOID_MONAD, FREE_RING_MONAD,
                               IDENTITY_MONAD, POINTED_MONAD)
from lawvere.parser import parse_term
from lawvere.theory import BaseFunction
from .conftest import words_over


class TestPhi:
    def test_pointed_hom_two_one(self):
        assert len(phi(POINTED_MONAD).hom(2, 1)) == 3

    def test_free_monoid_bounded_words(self):
        got = {f[0] for f in phi(FREE_MONOID_MONAD).hom(2, 1, 2)}
        assert got == set(words_over(2, 2))
        assert len(got) == 7

    def test_identity_monad_gives_arity_category(self):
        table = phi(IDENTITY_MONAD)
        # hom(n, m) = functions [m] -> [n], composed by reindexing
        assert len(table.hom(3, 2)) == 9
        f = (0, 2)        # 3 -> 2
        g = (1, 1, 0)     # 2 -> 3
        assert table.compose(g, f) == (2, 2, 0)

    def test_kleisli_composition_matches_theory_composition(self):
        table = phi(FREE_MONOID_MONAD)
        f = ((0, 1), (1,))          # 2 -> 2
        g = ((0, 0, 1),)            # 2 -> 1
        assert table.compose(g, f) == ((0, 1, 0, 1, 1),)

    def test_basic_embedding(self):
        table = phi(POINTED_MONAD)
        alpha = BaseFunction(3, 1, (0, 0, 0))
        assert table.basic(alpha) == (0, 0, 0)
        assert table.identity(2) == (0, 1)


class TestMonadFromTheory:
    def test_pointed_theory_on_two_elements(self):
        res = monad_from_theory(TermTheoryTable(POINTED), 2, 2,
                                size_bound=3)
        assert res.size == 3
        assert res.stable

    def test_identity_theory_gives_the_set_back(self):
        for x in range(4):
            res = monad_from_theory(TermTheoryTable(IDENTITY_THEORY), x, 3,
                                    size_bound=2)
            assert res.size == x
            assert res.stable

    def test_ring_theory_matches_polynomial_count(self, ring):
        res = monad_from_theory(TermTheoryTable(ring), 1, 2, size_bound=5)
        oracle = FREE_RING_MONAD.carrier(1, 5)
        assert res.size == len(oracle)

    def test_phi_side_matches_fragment(self):
        res = monad_from_theory(phi(POINTED_MONAD), 3, 3)
        assert res.size == 4
        assert res.stable


class TestRoundtrip:
    def test_identity(self):
        rep = roundtrip_check(IDENTITY_MONAD, 3)
        assert rep.passed

    def test_pointed(self):
        rep = roundtrip_check(POINTED_MONAD, 3)
        assert rep.passed
        assert all(rep.stability.values())

    def test_free_monoid_bounded(self):
        rep = roundtrip_check(FREE_MONOID_MONAD, 2, truncation=3,
                              size_bound=3)
        assert rep.passed


class TestNaturalTransformations:
    def test_inclusion_and_reversal_natural(self):
        inc = MonadMap("include", IDENTITY_MONAD, POINTED_MONAD,
                       lambda n, e: e)
        rev = MonadMap("reverse", FREE_MONOID_MONAD, FREE_MONOID_MONAD,
                       lambda n, w: tuple(reversed(w)))
        assert monad_map_natural(inc, 3)
        assert monad_map_natural(rev, 3, carrier_bound=2)

    def test_non_natural_map_detected(self):
        bad = MonadMap("swap01", POINTED_MONAD, POINTED_MONAD,
                       lambda n, e: {0: 1, 1: 0}.get(e, e) if n >= 2 else e)
        assert not monad_map_natural(bad, 3)

    def test_tabulation_is_functorial(self):
        inc = MonadMap("include", IDENTITY_MONAD, POINTED_MONAD,
                       lambda n, e: e)
        ident = MonadMap("id", POINTED_MONAD, POINTED_MONAD,
                         lambda n, e: e)
        composed = MonadMap("both", IDENTITY_MONAD, POINTED_MONAD,
                            lambda n, e: ident.at(n, inc.at(n, e)))
        for n, m in itertools.product(range(3), repeat=2):
            for f in phi(IDENTITY_MONAD).hom(n, m):
                one_step = tabulate_map(composed, f, n)
                two_step = tabulate_map(ident, tabulate_map(inc, f, n), n)
                assert one_step == two_step

    def test_fullness_reconstruction(self):
        inc = MonadMap("include", IDENTITY_MONAD, POINTED_MONAD,
                       lambda n, e: e)
        beta = lambda n, m, f: tabulate_map(inc, f, n)
        alpha = reconstruct_map(phi(IDENTITY_MONAD), phi(POINTED_MONAD),
                                beta, 3)
        assert alpha is not None
        for n in range(4):
            for e in IDENTITY_MONAD.carrier(n):
                assert alpha.at(n, e) == inc.at(n, e)

    def test_reconstruction_rejects_unnatural_family(self):
        # a family that is not given by postcomposition at every arity
        def beta(n, m, f):
            if m == 2:
                return tuple(reversed(f))
            return f

        got = reconstruct_map(phi(POINTED_MONAD), phi(POINTED_MONAD),
                              beta, 2)
        assert got is None


class TestComposite:
    def test_ring_law_against_polynomials(self, ring):
        rep = composite_correspondence_check(
            RING_LAW, FREE_RING_MONAD, size_bound=6, arity_bound=2,
            spec=ring)
        assert rep.passed

    def test_ps_law_against_words(self, ps_monoid):
        rep = composite_correspondence_check(
            PS_LAW, FREE_MONOID_MONAD, size_bound=5, arity_bound=2,
            spec=ps_monoid)
        assert rep.passed

    def test_identity_outer_law_is_phi_of_inner(self):
        law = trivial_law(MONOID, IDENTITY_THEORY)
        from lawvere.distlaw import composite_theory
        spec = composite_theory(law, check=False)
        rep = composite_correspondence_check(
            law, FREE_MONOID_MONAD, size_bound=5, arity_bound=2, spec=spec)
        assert rep.passed

    def test_encode_term_bridges_representations(self, ring):
        t = parse_term("ab-b+1", ring, 2)
        assert encode_term(FREE_RING_MONAD, t) == \
            (((), 1), ((1,), -1), ((0, 1), 1))


class TestIstar:
    def test_pointed_counts(self):
        rep = istar_composite(POINTED_MONAD, 2, 2)
        assert rep.passed

    def test_identity_counts(self):
        rep = istar_composite(IDENTITY_MONAD, 3, 2)
        assert rep.passed

    def test_agreement_with_phi_tables(self):
        # |composite(k, n)| equals |Set(k, F n)| = |phi hom(n, k)|
        table = phi(POINTED_MONAD)
        for k, n in itertools.product(range(3), repeat=2):
            assert len(table.hom(n, k)) == \
                len(POINTED_MONAD.carrier(n)) ** k
