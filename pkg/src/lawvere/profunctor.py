"""Profunctors between finite categories as validated tables, composed by
coend: a disjoint union of pairs quotiented by the middle category's
action, computed with union-find.

Conventions.  A profunctor F from C to D assigns a finite set F(d, c) to
each pair of objects, covariant in the C argument and contravariant in
the D argument:

* ``act_c(f, d, x)``: for f: c -> c' sends x in F(d, c) to F(d, c');
* ``act_d(g, c, x)``: for g: d' -> d sends x in F(d, c) to F(d', c).

Bimodules store the same data in arrow form (elements with a source in
one category and a target in the other), which is the shape used for
monads whose multiplication composes arrows.
"""
from __future__ import annotations

import itertools
from typing import Callable, Optional, Sequence

from .fincat import FiniteCategory, FiniteFunctor, Morphism
from .terms import StructuralError


class DisjointSet:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # deterministic representative: the smaller repr wins
            if _label_key(rb) < _label_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def _label_key(x):
    return (str(type(x)), repr(x))


class FiniteProfunctor:
    def __init__(self, name: str, src: FiniteCategory, tgt: FiniteCategory,
                 table: dict, c_action: dict, d_action: dict,
                 validate: bool = True):
        """``table[(d, c)]`` lists the elements; ``c_action[(f.name, d, x)]``
        and ``d_action[(g.name, c, x)]`` give the two actions."""
        self.name = name
        self.src = src
        self.tgt = tgt
        self.table = {k: tuple(v) for k, v in table.items()}
        self.c_action = dict(c_action)
        self.d_action = dict(d_action)
        if validate:
            self._validate()

    def elements(self, d, c) -> tuple:
        return self.table.get((d, c), ())

    def act_c(self, f: Morphism, d, x):
        return self.c_action[(f.name, d, x)]

    def act_d(self, g: Morphism, c, x):
        return self.d_action[(g.name, c, x)]

    def total_size(self) -> int:
        return sum(len(v) for v in self.table.values())

    def __repr__(self):
        return (f"FiniteProfunctor({self.name}: {self.src.name} -> "
                f"{self.tgt.name}, {self.total_size()} elements)")

    def _validate(self):
        for d in self.tgt.objects:
            for c in self.src.objects:
                for x in self.elements(d, c):
                    for f in self.src.morphisms:
                        if f.src != c:
                            continue
                        y = self.act_c(f, d, x)
                        if y not in self.elements(d, f.tgt):
                            raise StructuralError(
                                f"{self.name}: C-action leaves the table")
                    for g in self.tgt.morphisms:
                        if g.tgt != d:
                            continue
                        y = self.act_d(g, c, x)
                        if y not in self.elements(g.src, c):
                            raise StructuralError(
                                f"{self.name}: D-action leaves the table")
                    idc = self.src.identity(c)
                    if self.act_c(idc, d, x) != x:
                        raise StructuralError(f"{self.name}: C-identity acts")
                    idd = self.tgt.identity(d)
                    if self.act_d(idd, c, x) != x:
                        raise StructuralError(f"{self.name}: D-identity acts")
        for g2, g1 in self.src.composable_pairs():
            gf = self.src.compose(g2, g1)
            for d in self.tgt.objects:
                for x in self.elements(d, g1.src):
                    if self.act_c(g2, d, self.act_c(g1, d, x)) != \
                            self.act_c(gf, d, x):
                        raise StructuralError(
                            f"{self.name}: C-action not functorial")
        for g2, g1 in self.tgt.composable_pairs():
            gf = self.tgt.compose(g2, g1)
            for c in self.src.objects:
                for x in self.elements(gf.tgt, c):
                    if self.act_d(g1, c, self.act_d(g2, c, x)) != \
                            self.act_d(gf, c, x):
                        raise StructuralError(
                            f"{self.name}: D-action not functorial")
        # the two actions commute
        for f in self.src.morphisms:
            for g in self.tgt.morphisms:
                for x in self.elements(g.tgt, f.src):
                    a = self.act_d(g, f.tgt, self.act_c(f, g.tgt, x))
                    b = self.act_c(f, g.src, self.act_d(g, f.src, x))
                    if a != b:
                        raise StructuralError(
                            f"{self.name}: actions do not commute")


def hom_profunctor(cat: FiniteCategory) -> FiniteProfunctor:
    """The identity 1-cell: table (d, c) -> hom(d, c)."""
    table = {(d, c): tuple(m.name for m in cat.hom(d, c))
             for d in cat.objects for c in cat.objects}
    c_action = {}
    d_action = {}
    for d in cat.objects:
        for c in cat.objects:
            for mname in table[(d, c)]:
                m = cat.morphism(mname)
                for f in cat.morphisms:
                    if f.src == c:
                        c_action[(f.name, d, mname)] = \
                            cat.compose(f, m).name
                for g in cat.morphisms:
                    if g.tgt == d:
                        d_action[(g.name, c, mname)] = \
                            cat.compose(m, g).name
    return FiniteProfunctor(f"hom({cat.name})", cat, cat, table,
                            c_action, d_action)


def representable(functor: FiniteFunctor, name: str = "") -> FiniteProfunctor:
    """For H: C -> D the table (d, c) -> D(d, Hc)."""
    C, D = functor.src, functor.tgt
    table = {(d, c): tuple(m.name for m in D.hom(d, functor.on_obj(c)))
             for d in D.objects for c in C.objects}
    c_action = {}
    d_action = {}
    for d in D.objects:
        for c in C.objects:
            for mname in table[(d, c)]:
                m = D.morphism(mname)
                for f in C.morphisms:
                    if f.src == c:
                        c_action[(f.name, d, mname)] = \
                            D.compose(functor.on_mor(f), m).name
                for g in D.morphisms:
                    if g.tgt == d:
                        d_action[(g.name, c, mname)] = \
                            D.compose(m, g).name
    return FiniteProfunctor(name or f"rep({functor.src.name})",
                            C, D, table, c_action, d_action)


def constant_profunctor(src: FiniteCategory, tgt: FiniteCategory,
                        labels: Sequence, name: str = "const") -> FiniteProfunctor:
    """Every entry the same set, every morphism acting as the identity."""
    table = {(d, c): tuple(labels)
             for d in tgt.objects for c in src.objects}
    c_action = {(f.name, d, x): x for f in src.morphisms
                for d in tgt.objects for x in labels}
    d_action = {(g.name, c, x): x for g in tgt.morphisms
                for c in src.objects for x in labels}
    return FiniteProfunctor(name, src, tgt, table, c_action, d_action)


def relabel_profunctor(p: FiniteProfunctor, tag: str) -> FiniteProfunctor:
    """The same profunctor with every element wrapped; used to exercise
    isomorphism search on distinct but isomorphic tables."""
    wrap = lambda x: (tag, x)
    table = {k: tuple(wrap(x) for x in v) for k, v in p.table.items()}
    c_action = {(f, d, wrap(x)): wrap(y)
                for (f, d, x), y in p.c_action.items()}
    d_action = {(g, c, wrap(x)): wrap(y)
                for (g, c, x), y in p.d_action.items()}
    return FiniteProfunctor(f"{p.name}[{tag}]", p.src, p.tgt, table,
                            c_action, d_action)


def compose_prof(g: FiniteProfunctor, f: FiniteProfunctor,
                 name: str = "") -> FiniteProfunctor:
    """Coend composite of f: C -> D then g: D -> E.

    Elements over (e, c) are classes of pairs (d, y in g(e, d), x in
    f(d, c)) under the relation identifying the two ways a middle
    morphism can act; classes are labelled by their least member.
    """
    if f.tgt is not g.src and f.tgt != g.src:
        raise StructuralError("middle categories differ")
    C, D, E = f.src, f.tgt, g.tgt
    dsets: dict = {}
    for e in E.objects:
        for c in C.objects:
            ds = DisjointSet()
            for d in D.objects:
                for y in g.elements(e, d):
                    for x in f.elements(d, c):
                        ds.add((d, y, x))
            for h in D.morphisms:
                # h: d -> d'; (h acting into g) vs (h acting into f)
                d, d2 = h.src, h.tgt
                for y in g.elements(e, d):
                    for x in f.elements(d2, c):
                        ds.union((d2, g.act_c(h, e, y), x),
                                 (d, y, f.act_d(h, c, x)))
            dsets[(e, c)] = ds

    table = {k: tuple(sorted(ds.classes(), key=_label_key))
             for k, ds in dsets.items()}

    c_action = {}
    for e in E.objects:
        for c in C.objects:
            for rep in table[(e, c)]:
                d, y, x = rep
                for h in C.morphisms:
                    if h.src != c:
                        continue
                    moved = (d, y, f.act_c(h, d, x))
                    c_action[(h.name, e, rep)] = \
                        dsets[(e, h.tgt)].find(moved)
    d_action = {}
    for e in E.objects:
        for c in C.objects:
            for rep in table[(e, c)]:
                d, y, x = rep
                for h in E.morphisms:
                    if h.tgt != e:
                        continue
                    moved = (d, g.act_d(h, d, y), x)
                    d_action[(h.name, c, rep)] = \
                        dsets[(h.src, c)].find(moved)
    return FiniteProfunctor(name or f"{g.name}*{f.name}", C, E, table,
                            c_action, d_action)


def prof_iso(p: FiniteProfunctor, q: FiniteProfunctor) -> Optional[dict]:
    """Search for a natural family of bijections between two tables.

    Returns a dict (d, c) -> {p-element: q-element} or None.  Complete for
    tables whose entries are small; entries are solved in a fixed order
    with naturality pruning against already-solved neighbours.
    """
    if p.src != q.src and p.src is not q.src:
        return None
    cells = sorted(set(p.table) | set(q.table), key=_label_key)
    for cell in cells:
        if len(p.elements(*cell)) != len(q.elements(*cell)):
            return None
    assign: dict = {}

    def consistent(cell) -> bool:
        d, c = cell
        beta = assign[cell]
        for f in p.src.morphisms:
            if f.src != c:
                continue
            other = (d, f.tgt)
            if other not in assign:
                continue
            for x, qx in beta.items():
                if assign[other][p.act_c(f, d, x)] != q.act_c(f, d, qx):
                    return False
        for f in p.src.morphisms:
            if f.tgt != c:
                continue
            other = (d, f.src)
            if other in assign:
                for x, qx in assign[other].items():
                    if beta.get(p.act_c(f, d, x)) != q.act_c(f, d, qx):
                        return False
        for g in p.tgt.morphisms:
            if g.tgt != d:
                continue
            other = (g.src, c)
            if other not in assign:
                continue
            for x, qx in beta.items():
                if assign[other][p.act_d(g, c, x)] != q.act_d(g, c, qx):
                    return False
        for g in p.tgt.morphisms:
            if g.src != d:
                continue
            other = (g.tgt, c)
            if other in assign:
                for x, qx in assign[other].items():
                    if beta.get(p.act_d(g, c, x)) != q.act_d(g, c, qx):
                        return False
        return True

    def solve(i: int) -> bool:
        if i == len(cells):
            return True
        cell = cells[i]
        pe = p.elements(*cell)
        qe = q.elements(*cell)
        for perm in itertools.permutations(qe):
            assign[cell] = dict(zip(pe, perm))
            if consistent(cell) and solve(i + 1):
                return True
        del assign[cell]
        return False

    return dict(assign) if solve(0) else None


# ---------------------------------------------------------------------------
# bimodules in spans, and their monads


class BimoduleRep:
    """Arrows from one category's objects to another's, with compatible
    composition actions on both sides."""

    def __init__(self, name: str, src_cat: FiniteCategory,
                 tgt_cat: FiniteCategory, elements: dict,
                 pre_action: dict, post_action: dict, validate: bool = True):
        """``elements[(x, y)]`` are the arrows x -> y (x in src_cat);
        ``pre_action[(e, f.name)]`` precomposes with f: x' -> x;
        ``post_action[(g.name, e)]`` postcomposes with g: y -> y'."""
        self.name = name
        self.src_cat = src_cat
        self.tgt_cat = tgt_cat
        self.elements = {k: tuple(v) for k, v in elements.items()}
        self.pre_action = dict(pre_action)
        self.post_action = dict(post_action)
        if validate:
            self._validate()

    def at(self, x, y) -> tuple:
        return self.elements.get((x, y), ())

    def all_elements(self):
        for (x, y), es in sorted(self.elements.items(), key=_label_key):
            for e in es:
                yield x, y, e

    def pre(self, e, f: Morphism):
        return self.pre_action[(e, f.name)]

    def post(self, g: Morphism, e):
        return self.post_action[(g.name, e)]

    def _validate(self):
        for x, y, e in self.all_elements():
            for f in self.src_cat.morphisms:
                if f.tgt != x:
                    continue
                if self.pre(e, f) not in self.at(f.src, y):
                    raise StructuralError(f"{self.name}: pre-action escapes")
            for g in self.tgt_cat.morphisms:
                if g.src != y:
                    continue
                if self.post(g, e) not in self.at(x, g.tgt):
                    raise StructuralError(f"{self.name}: post-action escapes")
            if self.pre(e, self.src_cat.identity(x)) != e:
                raise StructuralError(f"{self.name}: pre-identity acts")
            if self.post(self.tgt_cat.identity(y), e) != e:
                raise StructuralError(f"{self.name}: post-identity acts")
        for g2, g1 in self.src_cat.composable_pairs():
            for x, y, e in self.all_elements():
                if x != g2.tgt:
                    continue
                if self.pre(self.pre(e, g2), g1) != \
                        self.pre(e, self.src_cat.compose(g2, g1)):
                    raise StructuralError(
                        f"{self.name}: pre-action not associative")
        for g2, g1 in self.tgt_cat.composable_pairs():
            for x, y, e in self.all_elements():
                if y != g1.src:
                    continue
                if self.post(g2, self.post(g1, e)) != \
                        self.post(self.tgt_cat.compose(g2, g1), e):
                    raise StructuralError(
                        f"{self.name}: post-action not associative")
        for x, y, e in self.all_elements():
            for f in self.src_cat.morphisms:
                if f.tgt != x:
                    continue
                for g in self.tgt_cat.morphisms:
                    if g.src != y:
                        continue
                    if self.post(g, self.pre(e, f)) != \
                            self.pre(self.post(g, e), f):
                        raise StructuralError(
                            f"{self.name}: actions do not commute")


def profunctor_to_bimodule(p: FiniteProfunctor,
                           name: str = "") -> BimoduleRep:
    """Arrow form: an element of p(d, c) becomes an arrow d -> c with
    precomposition given by the contravariant action."""
    elements: dict = {}
    for (d, c), es in p.table.items():
        elements[(d, c)] = tuple((d, c, x) for x in es)
    pre = {}
    post = {}
    for (d, c), es in p.table.items():
        for x in es:
            e = (d, c, x)
            for g in p.tgt.morphisms:
                if g.tgt == d:
                    pre[(e, g.name)] = (g.src, c, p.act_d(g, c, x))
            for f in p.src.morphisms:
                if f.src == c:
                    post[(f.name, e)] = (d, f.tgt, p.act_c(f, d, x))
    return BimoduleRep(name or f"bimod({p.name})", p.tgt, p.src,
                       elements, pre, post)


def bimodule_to_profunctor(b: BimoduleRep, name: str = "") -> FiniteProfunctor:
    table = {}
    for (x, y), es in b.elements.items():
        table[(x, y)] = tuple(es)
    c_action = {}
    d_action = {}
    for x, y, e in b.all_elements():
        for f in b.tgt_cat.morphisms:
            if f.src == y:
                c_action[(f.name, x, e)] = b.post(f, e)
        for g in b.src_cat.morphisms:
            if g.tgt == x:
                d_action[(g.name, y, e)] = b.pre(e, g)
    return FiniteProfunctor(name or f"prof({b.name})", b.tgt_cat, b.src_cat,
                            table, c_action, d_action)


class BimoduleMonad:
    """A bimodule from a category to itself with a unit and an arrow-wise
    multiplication; exactly the data of an identity-on-objects functor out
    of the base."""

    def __init__(self, name: str, base: FiniteCategory, module: BimoduleRep,
                 unit: dict, mult: Callable, validate: bool = True):
        """``unit[f.name]`` embeds a base arrow; ``mult(e1, e2)`` composes
        arrows e1: x -> y then e2: y -> z of the module."""
        self.name = name
        self.base = base
        self.module = module
        self.unit = dict(unit)
        self.mult = mult
        if validate:
            self._validate()

    def _composable(self):
        for (x, y), es in self.module.elements.items():
            for (y2, z), es2 in self.module.elements.items():
                if y != y2:
                    continue
                for e1 in es:
                    for e2 in es2:
                        yield x, y, z, e1, e2

    def _validate(self):
        for f in self.base.morphisms:
            e = self.unit[f.name]
            if e not in self.module.at(f.src, f.tgt):
                raise StructuralError(f"{self.name}: unit escapes the module")
        # unit is a bimodule map: compatible with both actions
        for g, f in self.base.composable_pairs():
            gf = self.base.compose(g, f)
            if self.module.pre(self.unit[g.name], f) != self.unit[gf.name]:
                raise StructuralError(f"{self.name}: unit breaks pre-action")
            if self.module.post(g, self.unit[f.name]) != self.unit[gf.name]:
                raise StructuralError(f"{self.name}: unit breaks post-action")
        for x, y, z, e1, e2 in self._composable():
            m = self.mult(e1, e2)
            if m not in self.module.at(x, z):
                raise StructuralError(f"{self.name}: mult escapes the module")
        # unit laws
        for (x, y), es in self.module.elements.items():
            for e in es:
                if self.mult(self.unit[self.base.identity(x).name], e) != e:
                    raise StructuralError(f"{self.name}: left unit fails")
                if self.mult(e, self.unit[self.base.identity(y).name]) != e:
                    raise StructuralError(f"{self.name}: right unit fails")
        # associativity
        for x, y, z, e1, e2 in self._composable():
            for (z2, w), es3 in self.module.elements.items():
                if z2 != z:
                    continue
                for e3 in es3:
                    if self.mult(self.mult(e1, e2), e3) != \
                            self.mult(e1, self.mult(e2, e3)):
                        raise StructuralError(
                            f"{self.name}: mult not associative")
        # mult balances over the middle action
        for (x, y1), es in self.module.elements.items():
            for f in self.base.morphisms:
                if f.src != y1:
                    continue
                y2 = f.tgt
                for (y3, z), es2 in self.module.elements.items():
                    if y3 != y2:
                        continue
                    for e1 in es:
                        for e2 in es2:
                            if self.mult(self.module.post(f, e1), e2) != \
                                    self.mult(e1, self.module.pre(e2, f)):
                                raise StructuralError(
                                    f"{self.name}: mult not balanced")


def monad_to_functor(m: BimoduleMonad):
    """Present the monad as a category on the same objects plus the
    identity-on-objects functor from the base; both validated.

    String element labels are kept as morphism names, so rebuilding the
    monad of an identity-on-objects functor round-trips on the nose.
    """
    base = m.base
    elements = list(m.module.all_elements())
    labels = [e for _, _, e in elements]
    keep = all(isinstance(e, str) for e in labels) and \
        len(set(labels)) == len(labels)
    names: dict = {}
    morphisms = []
    for x, y, e in elements:
        nm = e if keep else f"e{len(names)}"
        names[e] = nm
        morphisms.append(Morphism(nm, x, y))
    comp = {}
    for (x, y), es in m.module.elements.items():
        for (y2, z), es2 in m.module.elements.items():
            if y != y2:
                continue
            for e1 in es:
                for e2 in es2:
                    comp[(names[e2], names[e1])] = names[m.mult(e1, e2)]
    idents = {x: names[m.unit[base.identity(x).name]] for x in base.objects}
    cat = FiniteCategory(f"cat({m.name})", base.objects, morphisms, idents,
                         comp)
    functor = FiniteFunctor(
        base, cat, {o: o for o in base.objects},
        {f.name: names[m.unit[f.name]] for f in base.morphisms})
    return cat, functor, names


def functor_to_monad(functor: FiniteFunctor, name: str = "") -> BimoduleMonad:
    """The inverse construction from an identity-on-objects functor."""
    base, cat = functor.src, functor.tgt
    if any(functor.on_obj(o) != o for o in base.objects):
        raise StructuralError("functor must be the identity on objects")
    elements: dict = {}
    for x in base.objects:
        for y in base.objects:
            elements[(x, y)] = tuple(m.name for m in cat.hom(x, y))
    pre = {}
    post = {}
    for (x, y), es in elements.items():
        for e in es:
            for f in base.morphisms:
                if f.tgt == x:
                    pre[(e, f.name)] = cat.compose(
                        cat.morphism(e), functor.on_mor(f)).name
            for g in base.morphisms:
                if g.src == y:
                    post[(g.name, e)] = cat.compose(
                        functor.on_mor(g), cat.morphism(e)).name
    module = BimoduleRep(f"homs({cat.name})", base, base, elements, pre, post)
    unit = {f.name: functor.on_mor(f).name for f in base.morphisms}
    mult = lambda e1, e2: cat.compose(cat.morphism(e2), cat.morphism(e1)).name
    return BimoduleMonad(name or f"monad({cat.name})", base, module, unit,
                         mult)
