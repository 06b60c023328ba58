"""The dictionary between theories-as-arity-categories and finitary
monads presented by fragments.

One direction tabulates a fragment: the morphisms n -> m are the
functions from [m] into the carrier F[n], composed by Kleisli
substitution, with variable picking embedded through the unit.  The
other direction rebuilds a monad's value on a finite set as a truncated
coend over arities, computed by union-find, with an explicit
stabilization flag.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .distlaw import DistributiveLawSpec, check_law_axioms, composite_theory
from .fragments import (FREE_MONOID_MONAD, FREE_RING_MONAD,
                        POINTED_MONAD, FinitaryMonadFragment, PointedMonad,
                        poly_canonical)
from .pcompletion import _elementary_maps
from .profunctor import DisjointSet, _label_key
from .report import Report
from .sampling import Sampler
from .terms import StructuralError, Term, TheorySpec, Var
from .theory import BaseFunction


class MonadTheoryTable:
    """hom(n, m) = functions [m] -> F[n]; composition is Kleisli."""

    def __init__(self, fragment: FinitaryMonadFragment):
        self.fragment = fragment
        self.name = f"table({fragment.name})"

    def hom(self, n: int, m: int, bound: Optional[int] = None) -> list:
        pool = self.fragment.carrier(n, bound)
        return [tuple(c) for c in itertools.product(pool, repeat=m)]

    def compose(self, g: tuple, f: tuple) -> tuple:
        """g: m -> p after f: n -> m, both as element tuples."""
        return tuple(self.fragment.subst(e, f) for e in g)

    def identity(self, n: int) -> tuple:
        return tuple(self.fragment.unit(n, i) for i in range(n))

    def basic(self, alpha: BaseFunction) -> tuple:
        """The embedded morphism alpha.cod -> alpha.dom."""
        return tuple(self.fragment.unit(alpha.cod, alpha(i))
                     for i in range(alpha.dom))

    def act_source(self, g_table: Sequence[int], n_to: int, f: tuple) -> tuple:
        """Covariant transport along g: [n] -> [n_to]."""
        return tuple(self.fragment.map(tuple(g_table), n_to, e) for e in f)


def phi(fragment: FinitaryMonadFragment) -> MonadTheoryTable:
    """Tabulate a finitary monad fragment as a theory of arities."""
    return MonadTheoryTable(fragment)


class TermTheoryTable:
    """The same interface backed by a term theory's normal forms."""

    def __init__(self, spec: TheorySpec):
        self.spec = spec
        self.name = f"table({spec.name})"

    def hom(self, n: int, m: int, bound: int) -> list:
        pool = self.spec.enumerate_normal(n, bound)
        return [tuple(c) for c in itertools.product(pool, repeat=m)]

    def compose(self, g: tuple, f: tuple) -> tuple:
        from .terms import substitute
        return tuple(self.spec.normalize(substitute(t, f)) for t in g)

    def identity(self, n: int) -> tuple:
        return tuple(Var(i) for i in range(n))

    def basic(self, alpha: BaseFunction) -> tuple:
        return tuple(Var(alpha(i)) for i in range(alpha.dom))


# ---------------------------------------------------------------------------
# natural transformations between fragments


@dataclass
class MonadMap:
    """A transformation between fragments, one component per arity."""
    name: str
    src: FinitaryMonadFragment
    tgt: FinitaryMonadFragment
    component: Callable

    def at(self, n: int, e):
        return self.component(n, e)


def monad_map_natural(alpha: MonadMap, n_bound: int,
                      carrier_bound: Optional[int] = None) -> bool:
    """Exhaustive naturality squares over tables between small arities."""
    for n in range(n_bound + 1):
        for m in range(n_bound + 1):
            for table in itertools.product(range(m), repeat=n):
                for e in alpha.src.carrier(n, carrier_bound):
                    lhs = alpha.tgt.map(table, m, alpha.at(n, e))
                    rhs = alpha.at(m, alpha.src.map(table, m, e))
                    if lhs != rhs:
                        return False
    return True


def tabulate_map(alpha: MonadMap, f: tuple, n: int) -> tuple:
    """Post-compose a tabulated morphism with the transformation."""
    return tuple(alpha.at(n, e) for e in f)


def reconstruct_map(tableF: MonadTheoryTable, tableG: MonadTheoryTable,
                    beta: Callable, n_bound: int,
                    carrier_bound: Optional[int] = None) -> Optional[MonadMap]:
    """Rebuild a transformation from the (n, 1) components of a natural
    family and verify the family is its tabulation on the fragment."""
    comp: dict = {}
    for n in range(n_bound + 1):
        for e in tableF.fragment.carrier(n, carrier_bound):
            out = beta(n, 1, (e,))
            comp[(n, e)] = out[0]
    alpha = MonadMap(name="reconstructed", src=tableF.fragment,
                     tgt=tableG.fragment,
                     component=lambda n, e: comp[(n, e)])
    for n in range(n_bound + 1):
        for m in range(3):
            for f in tableF.hom(n, m, carrier_bound):
                if beta(n, m, f) != tabulate_map(alpha, f, n):
                    return None
    return alpha


# ---------------------------------------------------------------------------
# the coend reconstruction of a monad from a theory


@dataclass
class CoendResult:
    classes: dict
    invariants: dict
    stable: bool
    truncation: int

    @property
    def size(self) -> int:
        return len(self.classes)


def _theory_coend(hom1, act, evaluate, x: int, truncation: int) -> dict:
    """Classes of (n, f in hom(n,1), v: [n] -> [x]) under the arity action,
    keyed by representative, with their evaluation invariants."""
    ds = DisjointSet()
    for n in range(truncation + 1):
        for f in hom1(n):
            for v in itertools.product(range(x), repeat=n):
                ds.add((n, f, v))
    for (n_from, n_to, g) in _elementary_maps(truncation):
        for f in hom1(n_from):
            fg = act(f, n_from, g, n_to)
            for v2 in itertools.product(range(x), repeat=n_to):
                a = (n_to, fg, v2)
                b = (n_from, f, tuple(v2[g[i]] for i in range(n_from)))
                if evaluate(*a) != evaluate(*b):
                    raise StructuralError(
                        "arity action breaks the evaluation invariant")
                ds.union(a, b)
    return ds.classes()


def monad_from_theory(table, x: int, truncation: int,
                      size_bound: Optional[int] = None) -> CoendResult:
    """Value on a set of size x of the monad rebuilt from a theory table.

    Elements are classes of an operation of some arity n <= truncation
    together with an assignment of its inputs into [x]; the result carries
    a flag recording whether one more arity level changes the quotient.
    """
    def build(trunc: int) -> dict:
        if isinstance(table, MonadTheoryTable):
            frag = table.fragment

            def hom1(n):
                return [(e,) for e in frag.carrier(n, size_bound)]

            def act(f, n_from, g, n_to):
                return table.act_source(g, n_to, f)

            def evaluate(n, f, v):
                return frag.map(v, x, f[0])
        else:
            spec = table.spec

            def hom1(n):
                return [(t,) for t in spec.enumerate_normal(
                    n, size_bound if size_bound is not None else 5)]

            def act(f, n_from, g, n_to):
                return (spec.normalize(
                    _subst_vars(f[0], g)),)

            def evaluate(n, f, v):
                return spec.normalize(_subst_vars(f[0], v))
        return _theory_coend(hom1, act, evaluate, x, trunc)

    classes = build(truncation)
    bigger = build(truncation + 1)
    if isinstance(table, MonadTheoryTable):
        inv = {rep: table.fragment.map(rep[2], x, rep[1][0])
               for rep in classes}
    else:
        inv = {rep: table.spec.normalize(_subst_vars(rep[1][0], rep[2]))
               for rep in classes}
    return CoendResult(classes=classes, invariants=inv,
                       stable=len(bigger) == len(classes),
                       truncation=truncation)


def _subst_vars(t: Term, table: Sequence[int]) -> Term:
    from .terms import substitute
    return substitute(t, tuple(Var(i) for i in table))


def roundtrip_check(fragment: FinitaryMonadFragment, x_bound: int,
                    *, truncation: Optional[int] = None,
                    size_bound: Optional[int] = None) -> Report:
    """Rebuilding the tabulated fragment recovers it, naturally.

    For every x <= x_bound the coend classes biject with the carrier F[x]
    through evaluation, and for every function between the tested sets
    the class-level transport matches the fragment's own action.
    """
    table = phi(fragment)
    trunc = truncation if truncation is not None else x_bound + 1
    rep = Report(subject=f"roundtrip:{fragment.name}",
                 bounds={"xBound": x_bound, "truncation": trunc,
                         "sizeBound": size_bound})
    stability = {}
    results = {}
    for x in range(x_bound + 1):
        rep.sample_count += 1
        res = monad_from_theory(table, x, trunc, size_bound)
        results[x] = res
        carrier = fragment.carrier(x, size_bound)
        invs = sorted(set(map(_label_key, res.invariants.values())))
        want = sorted(set(map(_label_key, carrier)))
        stability[f"x={x}"] = res.stable
        if len(res.classes) == len(carrier) and invs == want and res.stable:
            rep.pass_count += 1
        else:
            rep.add_failure(x=x, classes=res.size, carrier=len(carrier),
                            stable=res.stable)
    # naturality of the identification under every function [x] -> [x2]
    for x in range(x_bound + 1):
        for x2 in range(x_bound + 1):
            for h in itertools.product(range(x2), repeat=x):
                rep.sample_count += 1
                bad = False
                for r in results[x].classes:
                    n, f, v = r
                    moved_inv = fragment.map(h, x2, results[x].invariants[r])
                    direct = fragment.map(
                        tuple(h[v[i]] for i in range(n)), x2, f[0])
                    if moved_inv != direct:
                        bad = True
                        break
                if bad:
                    rep.add_failure(check="naturality", x=x, x2=x2, h=h)
                else:
                    rep.pass_count += 1
    rep.stability = stability
    return rep


# ---------------------------------------------------------------------------
# composite theories against composite monads


def encode_term(fragment: FinitaryMonadFragment, t: Term):
    """Interpret a term as a fragment element; variables through the unit."""
    if isinstance(t, Var):
        return _encode_var(fragment, t.index)
    name = t.op.name
    args = [encode_term(fragment, a) for a in t.args]
    if fragment is FREE_RING_MONAD:
        from .fragments import poly_add, poly_mul, poly_scale
        if name == "mul":
            return poly_canonical(poly_mul(dict(args[0]), dict(args[1])))
        if name == "one":
            return (((), 1),)
        if name == "add":
            return poly_canonical(poly_add(dict(args[0]), dict(args[1])))
        if name == "neg":
            return poly_canonical(poly_scale(dict(args[0]), -1))
        if name == "zero":
            return ()
    if fragment is FREE_MONOID_MONAD:
        if name == "mul":
            return args[0] + args[1]
        if name in ("one", "point"):
            return ()
    if fragment is POINTED_MONAD and name == "point":
        return PointedMonad.POINT
    raise StructuralError(
        f"no interpretation of {t.op!r} in fragment {fragment.name}")


def _encode_var(fragment: FinitaryMonadFragment, i: int):
    if fragment is FREE_RING_MONAD:
        return (((i,), 1),)
    if fragment is FREE_MONOID_MONAD:
        return (i,)
    return i


def composite_correspondence_check(law: DistributiveLawSpec,
                                   fragment: FinitaryMonadFragment,
                                   *, size_bound: int = 5,
                                   arity_bound: int = 2,
                                   sampler: Optional[Sampler] = None,
                                   spec: Optional[TheorySpec] = None) -> Report:
    """The composite theory tabulates the composite monad.

    Hom-sets within the size bound must biject with the fragment's bounded
    carriers under term interpretation, compositions must agree on
    deterministic samples, and the composite's product structure must pass.
    """
    sampler = sampler or Sampler(samples=150)
    rep = Report(subject=f"correspondence:{law.name}",
                 bounds={"sizeBound": size_bound, "arityBound": arity_bound},
                 seed=sampler.seed)
    axioms = check_law_axioms(law, sampler)
    rep.sample_count += 1
    if axioms.passed:
        rep.pass_count += 1
    else:
        rep.add_failure(check="law-axioms", witness=axioms.first_failure)
        return rep
    theory = spec if spec is not None else composite_theory(law, check=False)

    frag_bound = fragment.bound_for_display_size(size_bound)
    for k in range(arity_bound + 1):
        rep.sample_count += 1
        terms = theory.enumerate_normal(k, size_bound)
        encoded = [encode_term(fragment, t) for t in terms]
        carrier = fragment.carrier(k, frag_bound)
        if len(set(map(_label_key, encoded))) == len(terms) and \
                sorted(map(_label_key, encoded)) == \
                sorted(map(_label_key, carrier)):
            rep.pass_count += 1
        else:
            rep.add_failure(check="hom-bijection", arity=k,
                            terms=len(terms), carrier=len(carrier))

    # compositions agree along the interpretation
    rng = sampler.rng()
    table = phi(fragment)
    from .terms import substitute
    pool1 = theory.enumerate_normal(1, size_bound)
    pool2 = theory.enumerate_normal(2, min(size_bound, 5))
    for _ in range(min(sampler.samples, 80)):
        g = rng.choice(pool2)
        f1, f2 = rng.choice(pool1), rng.choice(pool1)
        rep.sample_count += 1
        composed = theory.normalize(substitute(g, (f1, f2)))
        via_fragment = table.compose(
            (encode_term(fragment, g),),
            tuple(encode_term(fragment, c) for c in (f1, f2)))[0]
        if encode_term(fragment, composed) == via_fragment:
            rep.pass_count += 1
        else:
            rep.add_failure(check="composition", g=repr(g))
    return rep


# ---------------------------------------------------------------------------
# the universe-detour construction


def istar_composite(fragment: FinitaryMonadFragment, k_bound: int,
                    n_bound: int, *, universe_cap: Optional[int] = None,
                    carrier_bound: Optional[int] = None) -> Report:
    """Pass through a finite universe of sets and back down to arities.

    Classes of (X, a: [k] -> [X], b: [X] -> F[n]) under the universe
    action must biject with the functions [k] -> F[n], naturally; and
    inserting the detour after a second fragment leaves composites
    unchanged (checked as the same quotient statement with the carrier
    of the second fragment as the target).
    """
    rep = Report(subject=f"istar:{fragment.name}",
                 bounds={"kBound": k_bound, "nBound": n_bound})
    for n in range(n_bound + 1):
        carrier = fragment.carrier(n, carrier_bound)
        cap = universe_cap if universe_cap is not None else len(carrier) + 1
        for k in range(k_bound + 1):
            rep.sample_count += 1
            ds = DisjointSet()
            for x in range(cap + 1):
                for a in itertools.product(range(x), repeat=k):
                    for b in itertools.product(carrier, repeat=x):
                        ds.add((x, a, b))
            for (x_from, x_to, g) in _elementary_maps(cap):
                for a in itertools.product(range(x_from), repeat=k):
                    ga = tuple(g[i] for i in a)
                    for b2 in itertools.product(carrier, repeat=x_to):
                        lhs = (x_to, ga, b2)
                        rhs = (x_from, a,
                               tuple(b2[g[i]] for i in range(x_from)))
                        ds.union(lhs, rhs)
            classes = ds.classes()
            invs = set()
            for rep_elem in classes:
                x, a, b = rep_elem
                invs.add(tuple(b[a[i]] for i in range(k)))
            expected = len(carrier) ** k
            if len(classes) == expected and len(invs) == expected:
                rep.pass_count += 1
            else:
                rep.add_failure(check="istar-bijection", k=k, n=n,
                                classes=len(classes), expected=expected)

    # inserting the detour after the fragment changes nothing: the coend
    # over arities of (k-tuples in F[n]) x (assignments [n] -> [x]) must
    # still be the functions [k] -> F[x]
    for x in range(min(n_bound, 2) + 1):
        carrier_x = fragment.carrier(x, carrier_bound)
        trunc = x + 2
        for k in range(k_bound + 1):
            rep.sample_count += 1
            ds = DisjointSet()
            for n in range(trunc + 1):
                for u in itertools.product(
                        fragment.carrier(n, carrier_bound), repeat=k):
                    for v in itertools.product(range(x), repeat=n):
                        ds.add((n, u, v))
            for (n_from, n_to, g) in _elementary_maps(trunc):
                for u in itertools.product(
                        fragment.carrier(n_from, carrier_bound), repeat=k):
                    gu = tuple(fragment.map(g, n_to, e) for e in u)
                    for v2 in itertools.product(range(x), repeat=n_to):
                        ds.union((n_to, gu, v2),
                                 (n_from, u,
                                  tuple(v2[g[i]] for i in range(n_from))))
            classes = ds.classes()
            invs = set()
            for rep_elem in classes:
                n, u, v = rep_elem
                invs.add(tuple(fragment.map(v, x, e) for e in u))
            expected = len(carrier_x) ** k
            if len(classes) == expected and len(invs) == expected:
                rep.pass_count += 1
            else:
                rep.add_failure(check="pasting-identity", k=k, x=x,
                                classes=len(classes), expected=expected)
    return rep
