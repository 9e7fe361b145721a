"""
Torsion pairs over a category with a complete list of atoms.

A subcategory is the additive closure of a set of atoms and is stored as a
frozenset of atom names.  Validation is done atom by atom: trace and the
quotient by it commute with finite direct sums, so if every atom M sits in
0 -> t(M) -> M -> M/t(M) -> 0 with the ends in the right classes, every
object does.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import reps
from .errors import BudgetExceeded, InputError
from .reps import AtomList, Representation

DEFAULT_ENUMERATION_BOUND = 20


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDETERMINED = "undetermined"


@dataclass
class Verdict:
    truth: Truth
    witness: str = ""

    def __bool__(self):
        return self.truth is Truth.TRUE

    @property
    def determined(self) -> bool:
        return self.truth is not Truth.UNDETERMINED

    @classmethod
    def true(cls, witness=""):
        return cls(Truth.TRUE, witness)

    @classmethod
    def false(cls, witness=""):
        return cls(Truth.FALSE, witness)

    def __str__(self):
        return self.truth.value + (f" ({self.witness})" if self.witness else "")


@dataclass(frozen=True)
class TorsionPair:
    torsion: frozenset
    torsionfree: frozenset

    @classmethod
    def of(cls, x, y) -> "TorsionPair":
        return cls(frozenset(x), frozenset(y))

    def names(self, atoms: AtomList):
        return atoms.order(self.torsion), atoms.order(self.torsionfree)

    def describe(self, atoms: AtomList) -> str:
        x, y = self.names(atoms)
        return f"({add_label(x)}, {add_label(y)})"


@dataclass(frozen=True)
class TtfTriple:
    x: frozenset
    y: frozenset
    z: frozenset

    def describe(self, atoms: AtomList) -> str:
        return "(" + ", ".join(add_label(atoms.order(s)) for s in (self.x, self.y, self.z)) + ")"


def add_label(names) -> str:
    names = list(names)
    if not names:
        return "0"
    return "add(" + " + ".join(names) + ")"


def subcategory(atoms: AtomList, names) -> frozenset:
    return frozenset(atoms.order(names))


def everything(atoms: AtomList) -> frozenset:
    return frozenset(atoms.names)


def _nonzero_hom(atoms: AtomList, a: str, b: str) -> bool:
    return atoms.hom_table[atoms.index[a], atoms.index[b]] > 0


def perp_right(atoms: AtomList, s) -> frozenset:
    """Atoms receiving no nonzero map from s."""
    s = subcategory(atoms, s)
    return frozenset(n for n in atoms.names if not any(_nonzero_hom(atoms, x, n) for x in s))


def perp_left(atoms: AtomList, s) -> frozenset:
    """Atoms admitting no nonzero map into s."""
    s = subcategory(atoms, s)
    return frozenset(n for n in atoms.names if not any(_nonzero_hom(atoms, n, y) for y in s))


def _describe_morphism(h: reps.RepMorphism) -> str:
    return "{" + ", ".join(f"{v}: {m.tolist()}" for v, m in h.maps.items() if m.rows and m.cols) + "}"


def torsion_sequence(atoms: AtomList, x, m: Representation):
    """0 -> t(M) -> M -> M/t(M) -> 0 where t(M) is the trace of add(x) in M."""
    inc = reps.trace(atoms, x, m)
    _, proj = reps.cokernel(inc)
    return inc, proj


def is_torsion_pair(atoms: AtomList, x, y) -> Verdict:
    x, y = subcategory(atoms, x), subcategory(atoms, y)
    for a in atoms.order(x):
        for b in atoms.order(y):
            basis = reps.hom_basis(atoms[a], atoms[b])
            if basis:
                return Verdict.false(f"Hom({a}, {b}) != 0, e.g. {_describe_morphism(basis[0])}")
    for name, m in atoms:
        inc, proj = torsion_sequence(atoms, x, m)
        t_part = atoms.decompose(inc.source)
        if not set(t_part) <= x:
            return Verdict.false(f"trace of {add_label(atoms.order(x))} in {name} is "
                                 f"{_multiset(t_part)}, not in the torsion class")
        f_part = atoms.decompose(proj.target)
        if not set(f_part) <= y:
            return Verdict.false(f"{name}/t({name}) = {_multiset(f_part)} is not in the torsion-free class")
    if perp_left(atoms, y) != x or perp_right(atoms, x) != y:
        return Verdict.false("classes are not mutual Hom-perpendiculars")
    return Verdict.true(f"certificate: t(M) in add X and M/t(M) in add Y for all {len(atoms)} atoms")


def _multiset(counts) -> str:
    if not counts:
        return "0"
    return " + ".join(n if c == 1 else f"{c}{n}" for n, c in counts.items())


def enumerate_torsion_pairs(atoms: AtomList, bound: int = DEFAULT_ENUMERATION_BOUND) -> list:
    """Every torsion pair, as (left perp of Y, Y = right perp of X) over all atom subsets X."""
    n = len(atoms)
    if n > bound:
        raise InputError(f"{n} atoms exceeds the enumeration bound {bound}")
    nz = atoms.hom_table > 0
    out_mask = [sum(1 << j for j in range(n) if nz[i, j]) for i in range(n)]
    full = (1 << n) - 1
    candidates = set()
    for xmask in range(1 << n):
        reach = 0
        for i in range(n):
            if xmask >> i & 1:
                reach |= out_mask[i]
        ymask = full & ~reach
        closed = sum(1 << i for i in range(n) if not out_mask[i] & ymask)
        candidates.add((closed, ymask))
    pairs = []
    for xmask, ymask in candidates:
        x = frozenset(atoms.names[i] for i in range(n) if xmask >> i & 1)
        y = frozenset(atoms.names[i] for i in range(n) if ymask >> i & 1)
        if is_torsion_pair(atoms, x, y):
            pairs.append(TorsionPair(x, y))
    return sorted(pairs, key=lambda tp: _sort_key(atoms, tp))


def _sort_key(atoms, tp):
    idx = sorted(atoms.index[n] for n in tp.torsion)
    return (len(idx), idx)


def is_hereditary(atoms: AtomList, tp: TorsionPair, budget: int = reps.DEFAULT_SUBOBJECT_BUDGET) -> Verdict:
    """Torsion class closed under subobjects (checked on subobjects of its atoms)."""
    try:
        for name in atoms.order(tp.torsion):
            for inc in reps.subobject_embeddings(atoms[name], budget):
                parts = atoms.decompose(inc.source)
                if not set(parts) <= tp.torsion:
                    return Verdict.false(f"{name} has subobject {_multiset(parts)} outside the torsion class")
    except BudgetExceeded as e:
        return Verdict(Truth.UNDETERMINED, f"budget: {e}")
    return Verdict.true()


def is_cohereditary(atoms: AtomList, tp: TorsionPair, budget: int = reps.DEFAULT_SUBOBJECT_BUDGET) -> Verdict:
    """Torsion-free class closed under quotients (checked on quotients of its atoms)."""
    try:
        for name in atoms.order(tp.torsionfree):
            for inc in reps.subobject_embeddings(atoms[name], budget):
                quo = reps.cokernel(inc)[0]
                parts = atoms.decompose(quo)
                if not set(parts) <= tp.torsionfree:
                    return Verdict.false(f"{name} has quotient {_multiset(parts)} outside the torsion-free class")
    except BudgetExceeded as e:
        return Verdict(Truth.UNDETERMINED, f"budget: {e}")
    return Verdict.true()


def is_tilting(atoms: AtomList, tp: TorsionPair) -> Verdict:
    """Every atom embeds into an object of the torsion class, i.e. its reject vanishes."""
    for name, m in atoms:
        r = reps.reject(atoms, tp.torsion, m)
        if not r.source.is_zero():
            return Verdict.false(f"{name} does not embed in {add_label(atoms.order(tp.torsion))}")
    return Verdict.true()


def is_cotilting(atoms: AtomList, tp: TorsionPair) -> Verdict:
    """Every atom is a quotient of an object of the torsion-free class."""
    for name, m in atoms:
        t = reps.trace(atoms, tp.torsionfree, m)
        if t.source.total_dim != m.total_dim:
            return Verdict.false(f"{name} is not a quotient of an object in "
                                 f"{add_label(atoms.order(tp.torsionfree))}")
    return Verdict.true()


PREDICATES = {
    "hereditary": is_hereditary,
    "cohereditary": is_cohereditary,
    "tilting": is_tilting,
    "cotilting": is_cotilting,
}


def is_ttf(atoms: AtomList, x, y, z) -> Verdict:
    first = is_torsion_pair(atoms, x, y)
    if not first:
        return Verdict.false(f"(X, Y) is not a torsion pair: {first.witness}")
    second = is_torsion_pair(atoms, y, z)
    if not second:
        return Verdict.false(f"(Y, Z) is not a torsion pair: {second.witness}")
    return Verdict.true()


def validated_pair(atoms: AtomList, x, y) -> TorsionPair:
    v = is_torsion_pair(atoms, x, y)
    if not v:
        raise InputError(f"not a torsion pair: {v.witness}")
    return TorsionPair(subcategory(atoms, x), subcategory(atoms, y))
