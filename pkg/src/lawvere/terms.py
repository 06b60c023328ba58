"""Term syntax over finite signatures, with positional variables.

Conventions used throughout the package:

* Variables are positional: ``Var(i)`` stands for the i-th input.  The
  ambient variable count k is not stored on the node; it travels with the
  surrounding morphism, enumerator or CLI request, and every entry point
  validates indices against it.
* A term is *pure* for a theory when every operation node belongs to that
  theory's signature.  Layer-level helpers elsewhere treat subterms headed
  by foreign operations as opaque atoms, so the same normalizers serve both
  plain and layered theories.
* ``term_key`` is the total order behind every canonical sort; canonical
  forms must not depend on the order subterms were encountered.

All values are immutable after construction and safe to share.
"""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, Union

# canonical forms are right-nested chains, so structural recursion depth
# grows with combination length; the default limit is too tight for that
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class StructuralError(ValueError):
    """Ill-formed input: arity mismatch, unknown symbol, bad layering."""


@dataclass(frozen=True)
class OperationSymbol:
    name: str
    arity: int
    theory: str

    def __post_init__(self):
        if self.arity < 0:
            raise StructuralError(f"negative arity for {self.name}")

    def __repr__(self):
        return f"{self.name}/{self.arity}@{self.theory}"


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise StructuralError("variable index must be >= 0")


@dataclass(frozen=True)
class App:
    op: OperationSymbol
    args: tuple

    def __post_init__(self):
        if len(self.args) != self.op.arity:
            raise StructuralError(
                f"{self.op!r} applied to {len(self.args)} arguments")


Term = Union[Var, App]


def term_size(t: Term) -> int:
    """Node count of the syntax tree; the uniform truncation metric."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_key(t: Term):
    """Structural sort key; Var sorts before App, then by symbol and args."""
    if isinstance(t, Var):
        return (0, t.index)
    return (1, t.op.name, t.op.theory, tuple(term_key(a) for a in t.args))


def sort_key(t: Term):
    return (term_size(t), term_key(t))


def max_var(t: Term) -> int:
    """Largest variable index used, or -1 for a closed term."""
    if isinstance(t, Var):
        return t.index
    return max((max_var(a) for a in t.args), default=-1)


def vars_used(t: Term) -> set:
    if isinstance(t, Var):
        return {t.index}
    out: set = set()
    for a in t.args:
        out |= vars_used(a)
    return out


def substitute(t: Term, sigma: Sequence[Term]) -> Term:
    """Simultaneously replace ``Var(i)`` by ``sigma[i]``.

    The result is not normalized.  Raises ``StructuralError`` when the term
    uses a variable outside the tuple.
    """
    if isinstance(t, Var):
        if t.index >= len(sigma):
            raise StructuralError(
                f"variable {t.index} outside substitution of length {len(sigma)}")
        return sigma[t.index]
    return App(t.op, tuple(substitute(a, sigma) for a in t.args))


def rename(t: Term, table: Sequence[int]) -> Term:
    """Substitute variables by variables: index i goes to table[i]."""
    return substitute(t, tuple(Var(j) for j in table))


def ops_used(t: Term) -> set:
    if isinstance(t, Var):
        return set()
    out = {t.op}
    for a in t.args:
        out |= ops_used(a)
    return out


@dataclass(frozen=True)
class TheorySpec:
    """An algebraic theory presented by a signature and a normalizer.

    ``normalizer`` maps any term to the canonical representative of its
    equivalence class; it must be idempotent and a congruence.  It is
    written to normalize only the layer built from this theory's own
    operations, leaving foreign-headed subterms untouched, which is what
    makes composite theories stackable.

    ``atom_enumerator(atoms, bound)`` lists every normal layer form over
    the given distinct atom subterms whose node count stays within
    ``bound``; over ``atoms = (Var(0), ..., Var(k-1))`` this is exactly
    the set of normal forms in k variables.
    """
    name: str
    signature: tuple
    normalizer: Callable[[Term], Term]
    atom_enumerator: Callable[[Sequence[Term], int], list]
    axioms: str = ""

    @property
    def op_set(self) -> frozenset:
        return frozenset(self.signature)

    def op(self, name: str) -> OperationSymbol:
        for o in self.signature:
            if o.name == name:
                return o
        raise StructuralError(f"theory {self.name} has no operation {name!r}")

    def has_op(self, name: str) -> bool:
        return any(o.name == name for o in self.signature)

    def validate_ops(self, t: Term):
        bad = ops_used(t) - self.op_set
        if bad:
            raise StructuralError(
                f"operations {sorted(map(repr, bad))} unknown to theory {self.name}")

    def normalize(self, t: Term) -> Term:
        self.validate_ops(t)
        return self.normalizer(t)

    def is_normal(self, t: Term) -> bool:
        return self.normalize(t) == t

    def enumerate_normal(self, k: int, size_bound: int) -> list:
        """All normal forms in k variables of size <= size_bound, sorted."""
        atoms = tuple(Var(i) for i in range(k))
        return sorted(self.atom_enumerator(atoms, size_bound), key=sort_key)

    def __repr__(self):
        return f"TheorySpec({self.name})"


def all_raw_terms(signature: Sequence[OperationSymbol], k: int,
                  size_bound: int) -> Iterator[Term]:
    """Every well-formed term over the signature, by size then key.

    Brute-force oracle support; sizes grow fast, keep bounds small.
    """
    by_size: dict = {}

    def of_size(s: int) -> list:
        if s in by_size:
            return by_size[s]
        out = []
        if s == 1:
            out.extend(Var(i) for i in range(k))
            out.extend(App(op, ()) for op in signature if op.arity == 0)
        else:
            for op in signature:
                r = op.arity
                if r == 0 or r > s - 1:
                    continue
                for cut in _compositions(s - 1, r):
                    for args in itertools.product(*(of_size(c) for c in cut)):
                        out.append(App(op, args))
        by_size[s] = out
        return out

    for s in range(1, size_bound + 1):
        yield from sorted(of_size(s), key=term_key)


def _compositions(total: int, parts: int):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_force_normal_forms(spec: TheorySpec, k: int, size_bound: int) -> list:
    """Independent slow path: filter raw terms down to the self-normal ones."""
    out = [t for t in all_raw_terms(spec.signature, k, size_bound)
           if spec.normalize(t) == t]
    return sorted(out, key=sort_key)
