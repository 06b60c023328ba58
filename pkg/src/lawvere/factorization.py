"""Factorisation of composite-theory morphisms, and strict factorisation
systems on finite categories.

A morphism of a composite theory (outer layer B over inner layer A)
factors through a middle arity as a pure-A part followed by a pure-B
part.  The factorization is canonical but not unique: alternatives are
identified up to zigzags of basic morphisms whose triangles commute on
the appropriate sides, and the decision procedure compares canonical
forms while an optional bounded search produces an explicit witness
chain.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .distlaw import split_layer
from .fincat import FiniteCategory, Morphism
from .report import Report
from .terms import (App, StructuralError, Term, TheorySpec, Var, ops_used,
                    substitute, term_size)
from .theory import (BaseFunction, TheoryMorphism, basic_morphism, compose,
                     morphism)


def is_pure(t: Term, spec: TheorySpec) -> bool:
    return ops_used(t) <= spec.op_set


@dataclass(frozen=True)
class FactorizationPair:
    """A composite morphism split as inner-part then outer-part.

    ``left``: k -> middle with pure inner-theory components;
    ``right``: middle -> m with pure outer-theory components.
    """
    theory: TheorySpec
    inner: TheorySpec
    outer: TheorySpec
    left: TheoryMorphism
    right: TheoryMorphism

    def __post_init__(self):
        if self.left.target != self.right.source:
            raise StructuralError("middle objects do not match")
        for c in self.left.components:
            if not is_pure(c, self.inner):
                raise StructuralError("left part is not pure inner-theory")
        for c in self.right.components:
            if not is_pure(c, self.outer):
                raise StructuralError("right part is not pure outer-theory")

    @property
    def middle(self) -> int:
        return self.left.target

    @property
    def source(self) -> int:
        return self.left.source

    @property
    def target(self) -> int:
        return self.right.target

    def recompose(self) -> TheoryMorphism:
        return compose(self.right, self.left)

    def key(self):
        return (self.left.components, self.right.components)

    def __repr__(self):
        from .parser import format_term
        ls = ",".join(format_term(c) for c in self.left.components)
        rs = ",".join(format_term(c) for c in self.right.components)
        return (f"FactorizationPair({self.source}->{self.middle}->"
                f"{self.target}; left=[{ls}]; right=[{rs}])")


def factorize(theory: TheorySpec, inner: TheorySpec, outer: TheorySpec,
              f: TheoryMorphism) -> FactorizationPair:
    """Canonical factorization of a normal composite-theory morphism.

    The middle collects the distinct inner-layer atoms of all components
    in first-occurrence order; the right part replaces each atom by its
    middle variable.  No middle coordinate is duplicated or unused.
    """
    for c in f.components:
        if not theory.is_normal(c):
            raise StructuralError("factorize expects normal components")
    atom_index: dict = {}
    right_comps = []
    for c in f.components:
        skel, atoms = split_layer(c, outer.op_set)
        remap = []
        for a in atoms:
            if a not in atom_index:
                atom_index[a] = len(atom_index)
            remap.append(Var(atom_index[a]))
        right_comps.append(substitute(skel, tuple(remap)))
    middle_atoms = list(atom_index)
    j = len(middle_atoms)
    left = morphism(theory, f.source, middle_atoms)
    right = TheoryMorphism(theory, j, f.target,
                           tuple(theory.normalize(c) for c in right_comps))
    pair = FactorizationPair(theory, inner, outer, left, right)
    return pair


def canonicalize(pair: FactorizationPair) -> FactorizationPair:
    """Delete unused middles, merge duplicate left entries, sort by first
    use; iterated until stable (merging can cancel and free coordinates)."""
    return factorize(pair.theory, pair.inner, pair.outer, pair.recompose())


@dataclass(frozen=True)
class ZigzagStep:
    """One basic-morphism bridge between consecutive factorizations.

    ``forward`` means the base function maps the later middle into the
    earlier one (the arrow points from the earlier pair to the later one);
    the two triangle equations are in ``holds``.
    """
    base: BaseFunction
    forward: bool


@dataclass
class ZigzagWitness:
    pairs: list
    steps: list

    def __len__(self):
        return len(self.steps)

    def validate(self) -> bool:
        for i, step in enumerate(self.steps):
            a, b = self.pairs[i], self.pairs[i + 1]
            if not _step_holds(a, b, step):
                return False
        return True

    def middles(self) -> list:
        return [p.middle for p in self.pairs]


def _step_holds(a: FactorizationPair, b: FactorizationPair,
                step: ZigzagStep) -> bool:
    """Triangles for an arrow a -> b (forward) or b -> a (backward)."""
    src, dst = (a, b) if step.forward else (b, a)
    u = basic_morphism(a.theory, step.base)
    try:
        left_ok = compose(u, src.left) == dst.left
        right_ok = compose(dst.right, u) == src.right
    except StructuralError:
        return False
    return left_ok and right_ok


def zigzag_equivalent(p: FactorizationPair, q: FactorizationPair,
                      bound: int = 0,
                      atom_pool: Optional[Sequence[Term]] = None):
    """Decide equivalence; optionally search for an explicit witness.

    The decision compares canonical forms and never depends on the
    search.  With ``bound > 0`` a breadth-first search over single-step
    neighbours (middles capped at max(middles) + bound) tries to exhibit
    a chain of length <= bound; ``None`` means no witness within bounds,
    not inequivalence.
    """
    if (p.source, p.target) != (q.source, q.target):
        raise StructuralError("factorization endpoints differ")
    equivalent = canonicalize(p).key() == canonicalize(q).key()
    witness = None
    if equivalent and bound >= 0:
        witness = _search_witness(p, q, bound, atom_pool)
    return equivalent, witness


def _search_witness(p: FactorizationPair, q: FactorizationPair, bound: int,
                    atom_pool: Optional[Sequence[Term]]) -> Optional[ZigzagWitness]:
    if p.key() == q.key():
        return ZigzagWitness([p], [])
    if bound <= 0:
        return None
    cap = max(p.middle, q.middle) + bound
    pool = set(atom_pool or [])
    pool.update(p.left.components)
    pool.update(q.left.components)
    pool = sorted(pool, key=lambda t: (term_size(t), repr(t)))
    start = p.key()
    target = q.key()
    seen = {start}
    queue = deque([(p, [p], [])])
    while queue:
        cur, pairs, steps = queue.popleft()
        if len(steps) >= bound:
            continue
        for nxt, step in _neighbours(cur, cap, pool):
            k = nxt.key()
            if k in seen:
                continue
            seen.add(k)
            np, ns = pairs + [nxt], steps + [step]
            if k == target:
                return ZigzagWitness(np, ns)
            queue.append((nxt, np, ns))
    return None


def _neighbours(f: FactorizationPair, cap: int,
                pool: Sequence[Term]) -> Iterator[tuple]:
    """All pairs one triangle-commuting basic step away from f."""
    theory, inner, outer = f.theory, f.inner, f.outer
    j = f.middle
    for j2 in range(0, cap + 1):
        # arrows f -> g: base u: [j2] -> [j]; g.left is picked from f.left,
        # g.right is any normal lift of f.right along the renaming
        for table in itertools.product(range(j), repeat=j2):
            u = BaseFunction(j2, j, table)
            g_left = tuple(f.left.components[u(i)] for i in range(j2))
            lifts = _lift_tuple(f.right.components, u, theory)
            for g_right in lifts:
                try:
                    g = FactorizationPair(
                        theory, inner, outer,
                        TheoryMorphism(theory, f.source, j2, g_left),
                        TheoryMorphism(theory, j2, f.target, g_right))
                except StructuralError:
                    continue
                yield g, ZigzagStep(u, forward=True)
        # arrows g -> f: base u: [j] -> [j2]; g.right is determined,
        # g.left agrees with f.left on the image and is free elsewhere
        for table in itertools.product(range(j2), repeat=j):
            u = BaseFunction(j, j2, table)
            slots: list = [None] * j2
            ok = True
            for i in range(j):
                want = f.left.components[i]
                if slots[u(i)] is None:
                    slots[u(i)] = want
                elif slots[u(i)] != want:
                    ok = False
                    break
            if not ok:
                continue
            free = [i for i in range(j2) if slots[i] is None]
            if len(free) > 3:
                continue
            g_right = tuple(
                theory.normalize(substitute(c, tuple(Var(u(i))
                                                     for i in range(j))))
                for c in f.right.components)
            for fill in itertools.product(pool, repeat=len(free)):
                comps = list(slots)
                for idx, t in zip(free, fill):
                    comps[idx] = t
                try:
                    g = FactorizationPair(
                        theory, inner, outer,
                        TheoryMorphism(theory, f.source, j2, tuple(comps)),
                        TheoryMorphism(theory, j2, f.target, g_right))
                except StructuralError:
                    continue
                if _step_holds(g, f, ZigzagStep(u, forward=True)):
                    yield g, ZigzagStep(u, forward=False)


def _lift_tuple(comps: Sequence[Term], u: BaseFunction,
                theory: TheorySpec, limit: int = 400) -> Iterator[tuple]:
    """Tuples of normal terms over [u.dom] that rename along u to comps."""
    per = []
    for c in comps:
        lifts = [t for t in _lifts_of(c, u, limit)
                 if theory.is_normal(t)
                 and theory.normalize(substitute(
                     t, tuple(Var(u(i)) for i in range(u.dom)))) == c]
        if not lifts:
            return
        per.append(lifts)
    count = 1
    for p in per:
        count *= len(p)
        if count > limit:
            return
    yield from itertools.product(*per)


def _lifts_of(t: Term, u: BaseFunction, limit: int) -> list:
    """Raw preimage terms of t under variable renaming by u."""
    pre: dict = {}
    for i in range(u.dom):
        pre.setdefault(u(i), []).append(i)

    def go(x: Term) -> list:
        if isinstance(x, Var):
            return [Var(i) for i in pre.get(x.index, [])]
        parts = [go(a) for a in x.args]
        out = []
        for combo in itertools.product(*parts):
            out.append(App(x.op, combo))
            if len(out) > limit:
                break
        return out

    return go(t)[:limit]


# ---------------------------------------------------------------------------
# property sweep over a composite theory


def check_fs_over_base(theory: TheorySpec, inner: TheorySpec,
                       outer: TheorySpec, arity_bound: int, size_bound: int,
                       *, witness_bound: int = 2,
                       witness_sample: int = 24) -> Report:
    """Existence and zigzag-uniqueness over all bounded morphisms.

    Every enumerated morphism must factorize and recompose to itself; every
    alternative factorization found by the bounded neighbour search must be
    equivalent to the canonical one, and for a deterministic subsample an
    explicit witness chain is demanded and validated.
    """
    rep = Report(subject=f"fs-over-base:{theory.name}",
                 bounds={"arityBound": arity_bound, "sizeBound": size_bound,
                         "witnessBound": witness_bound})
    nfs = {k: theory.enumerate_normal(k, size_bound)
           for k in range(arity_bound + 1)}
    alt_total = 0
    picked = 0
    for k in range(arity_bound + 1):
        for m in range(arity_bound + 1):
            for comps in itertools.product(nfs[k], repeat=m):
                f = TheoryMorphism(theory, k, m, tuple(comps))
                rep.sample_count += 1
                pair = factorize(theory, inner, outer, f)
                if pair.recompose() != f:
                    rep.add_failure(check="existence", morphism=repr(f))
                    continue
                ok = True
                alternatives = list(_bounded_alternatives(pair))
                alt_total += len(alternatives)
                for alt in alternatives:
                    if alt.recompose() != f:
                        rep.add_failure(check="alt-recompose",
                                        alt=repr(alt))
                        ok = False
                        continue
                    eq, _ = zigzag_equivalent(pair, alt, bound=-1)
                    if not eq:
                        rep.add_failure(check="zigzag-uniqueness",
                                        morphism=repr(f), alt=repr(alt))
                        ok = False
                if ok and alternatives and picked < witness_sample:
                    picked += 1
                    eq, wit = zigzag_equivalent(pair, alternatives[0],
                                                bound=witness_bound)
                    if wit is None or not wit.validate():
                        rep.add_failure(check="witness", morphism=repr(f),
                                        alt=repr(alternatives[0]))
                        ok = False
                if ok:
                    rep.pass_count += 1
    rep.bounds["alternativesChecked"] = alt_total
    return rep


def _bounded_alternatives(pair: FactorizationPair) -> Iterator[FactorizationPair]:
    """A spread of raw factorizations of the same morphism: padded with a
    spare atom, entry duplicated, and middle permuted."""
    theory, inner, outer = pair.theory, pair.inner, pair.outer
    j = pair.middle
    spare = _spare_atom(pair)
    if spare is not None:
        left = TheoryMorphism(theory, pair.source, j + 1,
                              pair.left.components + (spare,))
        right = TheoryMorphism(
            theory, j + 1, pair.target,
            tuple(theory.normalize(substitute(
                c, tuple(Var(i) for i in range(j)) + (Var(j),)))
                for c in pair.right.components))
        yield FactorizationPair(theory, inner, outer, left, right)
    if j >= 1:
        dup = pair.left.components + (pair.left.components[0],)
        left = TheoryMorphism(theory, pair.source, j + 1, dup)
        yield FactorizationPair(theory, inner, outer, left,
                                TheoryMorphism(
                                    theory, j + 1, pair.target,
                                    tuple(theory.normalize(substitute(
                                        c, tuple(Var(i) for i in range(j))
                                        + (Var(0),)))
                                        for c in pair.right.components)))
    if j >= 2:
        perm = tuple(reversed(range(j)))
        left = TheoryMorphism(theory, pair.source, j,
                              tuple(pair.left.components[p] for p in perm))
        inv = [0] * j
        for pos, p in enumerate(perm):
            inv[p] = pos
        right = TheoryMorphism(
            theory, j, pair.target,
            tuple(theory.normalize(substitute(c, tuple(Var(i) for i in inv)))
                  for c in pair.right.components))
        yield FactorizationPair(theory, inner, outer, left, right)


def _spare_atom(pair: FactorizationPair) -> Optional[Term]:
    pool = pair.inner.atom_enumerator(
        tuple(Var(i) for i in range(pair.source)), 3)
    for t in pool:
        if t not in pair.left.components:
            return t
    return None


# ---------------------------------------------------------------------------
# strict factorisation systems on finite categories


def check_strict_fs(cat: FiniteCategory, left: Sequence[Morphism],
                    right: Sequence[Morphism]) -> Report:
    """Unique on-the-nose factorization, then the induced interchange data.

    On success the rewrite sending a right-then-left composite to its
    unique left-then-right factorization is extracted and its two unit and
    two multiplication compatibilities are verified exhaustively; the data
    is stored on the report under ``bounds['interchange']``.
    """
    rep = Report(subject=f"strict-fs:{cat.name}", bounds={})
    lset, rset = set(left), set(right)
    for x in cat.objects:
        if cat.identity(x) not in lset or cat.identity(x) not in rset:
            rep.add_failure(check="identities", object=repr(x))
    factor: dict = {}
    for f in cat.morphisms:
        rep.sample_count += 1
        pairs = [(l, r) for l in left for r in right
                 if l.src == f.src and r.tgt == f.tgt and l.tgt == r.src
                 and cat.compose(r, l) == f]
        if len(pairs) == 1:
            rep.pass_count += 1
            factor[f] = pairs[0]
        else:
            rep.add_failure(check="unique-factorization", morphism=f.name,
                            count=len(pairs))
    if not rep.passed:
        return rep

    # distributive-law data: (r then l) composites rewritten to (l' then r')
    law = {}
    for r in right:
        for l in left:
            if r.tgt == l.src:
                law[(r.name, l.name)] = factor[cat.compose(l, r)]
    rep.bounds["interchange"] = {
        f"{r},{l}": (out_l.name, out_r.name)
        for (r, l), (out_l, out_r) in law.items()}

    def check_eq(cond, **info):
        rep.sample_count += 1
        if cond:
            rep.pass_count += 1
        else:
            rep.add_failure(**info)

    for r in right:
        lid = cat.identity(r.tgt)
        check_eq(law[(r.name, lid.name)] == (cat.identity(r.src), r),
                 check="unit-left", r=r.name)
    for l in left:
        rid = cat.identity(l.src)
        check_eq(law[(rid.name, l.name)] == (l, cat.identity(l.tgt)),
                 check="unit-right", l=l.name)
    for r in right:
        for l1 in left:
            if r.tgt != l1.src:
                continue
            for l2 in left:
                if l1.tgt != l2.src:
                    continue
                a1, b1 = law[(r.name, l1.name)]
                a2, b2 = law[(b1.name, l2.name)]
                a_direct, b_direct = law[(r.name, cat.compose(l2, l1).name)]
                check_eq((cat.compose(a2, a1), b2) == (a_direct, b_direct),
                         check="mult-left", r=r.name, l1=l1.name, l2=l2.name)
    for l in left:
        for r1 in right:
            if r1.tgt != l.src:
                continue
            for r2 in right:
                if r2.tgt != r1.src:
                    continue
                a1, b1 = law[(r1.name, l.name)]
                a2, b2 = law[(r2.name, a1.name)]
                a_direct, b_direct = law[(cat.compose(r1, r2).name, l.name)]
                check_eq((a2, cat.compose(b1, b2)) == (a_direct, b_direct),
                         check="mult-right", l=l.name, r1=r1.name, r2=r2.name)
    return rep
