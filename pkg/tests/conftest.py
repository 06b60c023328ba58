import itertools

import pytest

from lawvere.builtin import (ABELIAN_GROUP, MONOID, build_combo, build_word,
                             combo_of, word_atoms)
from lawvere.distlaw import (DistributiveLawSpec, ps_monoid_theory,
                             ring_theory, split_layer)
from lawvere.terms import sort_key


@pytest.fixture(scope="session")
def ring():
    return ring_theory()


@pytest.fixture(scope="session")
def ps_monoid():
    return ps_monoid_theory()


def make_dropping_mutant(mult_theory, additive_theory,
                         name="dropping-mutant") -> DistributiveLawSpec:
    """Swaps the layers without expanding products: only the first summand
    of each factor survives once a word has two or more letters.  Unit
    diagrams still pass; the multiplication squares do not."""
    from lawvere.distlaw import multiplicative_over_additive_law
    true_law = multiplicative_over_additive_law(mult_theory, additive_theory)
    mul = mult_theory.op("mul")
    one = mult_theory.op("one") if mult_theory.has_op("one") else None
    add = additive_theory.op("add")
    neg = additive_theory.op("neg")
    zero = additive_theory.op("zero")

    def rewrite(t):
        skel, leaves = split_layer(t, mult_theory.op_set)
        slots = [v.index for v in word_atoms(skel, mul, one)]
        if len(slots) <= 1:
            return true_law.rewrite(t)
        combos = [sorted(combo_of(leaves[i], add, neg, zero).items(),
                         key=lambda kv: sort_key(kv[0])) for i in slots]
        acc = {}
        if all(combos):
            coeff = 1
            chain = []
            for entry in combos:
                atom, c = entry[0]
                coeff *= c
                chain.extend(word_atoms(atom, mul, one))
            key = build_word(chain, mul, one)
            acc[key] = coeff
        acc = {k: v for k, v in acc.items() if v}
        return build_combo(acc, add, neg, zero)

    return DistributiveLawSpec(name, mult_theory, additive_theory, rewrite)


def make_ring_mutant() -> DistributiveLawSpec:
    return make_dropping_mutant(MONOID, ABELIAN_GROUP, name="ring-mutant")


@pytest.fixture(scope="session")
def ring_mutant():
    return make_ring_mutant()


def words_over(k: int, max_len: int):
    """Independent word-enumeration oracle."""
    out = []
    for length in range(max_len + 1):
        out.extend(itertools.product(range(k), repeat=length))
    return out


def eval_ring_term(t, env):
    """Independent integer-arithmetic interpretation of ring-signature
    terms ('mul'/'one'/'add'/'neg'/'zero'/'point' by name)."""
    from lawvere.terms import Var
    if isinstance(t, Var):
        return env[t.index]
    name = t.op.name
    vals = [eval_ring_term(a, env) for a in t.args]
    if name == "mul":
        return vals[0] * vals[1]
    if name in ("one", "point"):
        return 1
    if name == "add":
        return vals[0] + vals[1]
    if name == "neg":
        return -vals[0]
    if name == "zero":
        return 0
    raise AssertionError(f"no interpretation for {name}")
