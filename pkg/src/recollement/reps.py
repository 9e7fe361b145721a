"""
Bound quiver algebras and their finite-dimensional representations.

A representation assigns F_p^d to each vertex and a (dim target x dim source)
matrix to each arrow.  A path ``(a, b)`` means "a, then b" and acts as
``map_b @ map_a``.  Everything in this module is a pure function of immutable
values.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import sympy

from . import linalg as la
from .errors import AtomListIncomplete, BudgetExceeded, InputError, InvariantError, RelationViolation
from .linalg import Matrix

DEFAULT_SUBOBJECT_BUDGET = 10**6


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise InputError(f"arrow {a.name} references an unknown vertex")

    @cached_property
    def arrow(self):
        return {a.name: a for a in self.arrows}


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, e.g. ((1, ('alpha', 'beta')), (-1, ('gamma', 'delta')))."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), tuple(path)) for c, path in self.terms))
        if not self.terms:
            raise InputError("empty relation")

    def __str__(self):
        parts = []
        for c, path in self.terms:
            word = "".join(reversed(path))
            parts.append(("+ " if c >= 0 else "- ") + (f"{abs(c)}" if abs(c) != 1 else "") + word)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


def _check_relation(quiver: Quiver, rel: Relation):
    ends = set()
    for _, path in rel.terms:
        if not path:
            raise InputError("relations must use paths of positive length")
        for a in path:
            if a not in quiver.arrow:
                raise InputError(f"relation uses unknown arrow {a}")
        for a, b in zip(path, path[1:]):
            if quiver.arrow[a].target != quiver.arrow[b].source:
                raise InputError(f"path {path} is not composable")
        ends.add((quiver.arrow[path[0]].source, quiver.arrow[path[-1]].target))
    if len(ends) != 1:
        raise InputError(f"paths of relation {rel} are not parallel")


@dataclass(frozen=True)
class Algebra:
    name: str
    quiver: Quiver
    relations: tuple = ()
    p: int = 2

    def __post_init__(self):
        la.check_prime(self.p)
        object.__setattr__(self, "relations", tuple(
            r if isinstance(r, Relation) else Relation(r) for r in self.relations))
        for r in self.relations:
            _check_relation(self.quiver, r)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def zero(self) -> "Representation":
        return Representation(self, {v: 0 for v in self.vertices}, {})


class Representation:
    """Finite-dimensional representation of a bound quiver."""

    def __init__(self, algebra: Algebra, dims, maps=None, name: str | None = None, validate: bool = True):
        self.algebra = algebra
        self.name = name
        p = algebra.p
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise InputError("negative dimension")
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            raise InputError(f"unknown vertices {sorted(unknown)}")
        maps = dict(maps or {})
        unknown = set(maps) - set(algebra.quiver.arrow)
        if unknown:
            raise InputError(f"unknown arrows {sorted(unknown)}")
        self.maps = {}
        for a in algebra.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(*shape, p)
            elif not isinstance(m, Matrix):
                m = Matrix(m, p, shape=shape)
            if m.shape != shape:
                raise InputError(f"arrow {a.name}: expected shape {shape}, got {m.shape}")
            if m.p != p:
                raise InputError(f"arrow {a.name}: matrix over F_{m.p}, algebra over F_{p}")
            self.maps[a.name] = m
        if validate:
            validate_representation(self)

    @property
    def p(self):
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def renamed(self, name):
        return Representation(self.algebra, self.dims, self.maps, name=name, validate=False)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.algebra == other.algebra and self.dims == other.dims
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.algebra.name, self.dim_vector()))

    def __repr__(self):
        label = self.name or "Rep"
        return f"{label}{self.dim_vector()}"


def evaluate_path(rep: Representation, path) -> Matrix:
    arrows = rep.algebra.quiver.arrow
    out = Matrix.identity(rep.dims[arrows[path[0]].source], rep.p)
    for a in path:
        out = rep.maps[a] @ out
    return out


def validate_representation(rep: Representation, relations=None) -> None:
    """Raise RelationViolation naming the first relation that does not vanish on `rep`."""
    relations = rep.algebra.relations if relations is None else relations
    arrows = rep.algebra.quiver.arrow
    for rel in relations:
        path0 = rel.terms[0][1]
        shape = (rep.dims[arrows[path0[-1]].target], rep.dims[arrows[path0[0]].source])
        total = Matrix.zeros(*shape, rep.p)
        for c, path in rel.terms:
            total = total + evaluate_path(rep, path).scale(c)
        if not total.is_zero():
            raise RelationViolation(rel, f"relation {rel} evaluates to {total.tolist()}")


class RepMorphism:
    """Vertex-wise family of matrices commuting with the arrow maps."""

    def __init__(self, source: Representation, target: Representation, maps, validate: bool = True):
        if source.algebra != target.algebra:
            raise InputError("morphism between representations of different algebras")
        self.source = source
        self.target = target
        p = source.p
        self.maps = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            m = maps.get(v)
            if m is None:
                m = Matrix.zeros(*shape, p)
            elif not isinstance(m, Matrix):
                m = Matrix(m, p, shape=shape)
            if m.shape != shape:
                raise InputError(f"vertex {v}: expected shape {shape}, got {m.shape}")
            self.maps[v] = m
        if validate:
            for a in source.algebra.arrows:
                lhs = self.maps[a.target] @ source.maps[a.name]
                rhs = target.maps[a.name] @ self.maps[a.source]
                if lhs != rhs:
                    raise InputError(f"morphism does not commute with arrow {a.name}")

    @classmethod
    def identity(cls, rep: Representation) -> "RepMorphism":
        return cls(rep, rep, {v: Matrix.identity(d, rep.p) for v, d in rep.dims.items()}, validate=False)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "RepMorphism":
        return cls(source, target, {}, validate=False)

    @property
    def algebra(self):
        return self.source.algebra

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        # self after other
        if other.target.dims != self.source.dims:
            raise InputError("morphisms are not composable")
        return RepMorphism(other.source, self.target,
                           {v: self.maps[v] @ other.maps[v] for v in self.maps}, validate=False)

    def _combine(self, other, op):
        if self.source.dims != other.source.dims or self.target.dims != other.target.dims:
            raise InputError("morphisms have different source or target")
        return RepMorphism(self.source, self.target,
                           {v: op(self.maps[v], other.maps[v]) for v in self.maps}, validate=False)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __neg__(self):
        return RepMorphism(self.source, self.target, {v: -m for v, m in self.maps.items()}, validate=False)

    def scale(self, c: int) -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: m.scale(c) for v, m in self.maps.items()}, validate=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())

    def rank_vector(self) -> tuple:
        return tuple(la.rank(self.maps[v]) for v in self.algebra.vertices)

    def __eq__(self, other):
        if not isinstance(other, RepMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.maps == other.maps

    __hash__ = None

    def __repr__(self):
        return f"RepMorphism({self.source!r} -> {self.target!r})"


def is_mono(f: RepMorphism) -> bool:
    return all(la.is_injective(m) for m in f.maps.values())


def is_epi(f: RepMorphism) -> bool:
    return all(la.is_surjective(m) for m in f.maps.values())


def is_iso(f: RepMorphism) -> bool:
    return is_mono(f) and is_epi(f)


def dim_vector(rep: Representation) -> tuple:
    return rep.dim_vector()


# -- Hom spaces ---------------------------------------------------------------

def _hom_system(m: Representation, n: Representation):
    p = m.p
    verts = m.algebra.vertices
    offsets, size = {}, 0
    for v in verts:
        offsets[v] = size
        size += n.dims[v] * m.dims[v]
    blocks = []
    for a in m.algebra.arrows:
        v, w = a.source, a.target
        rows = n.dims[w] * m.dims[v]
        if rows == 0:
            continue
        block = np.zeros((rows, size), dtype=np.int64)
        # phi_w @ M_a  -  N_a @ phi_v, row-major vectorisation
        if n.dims[w] * m.dims[w]:
            left = la.kron(Matrix.identity(n.dims[w], p), m.maps[a.name].T)
            block[:, offsets[w]:offsets[w] + left.cols] += left.a
        if n.dims[v] * m.dims[v]:
            right = la.kron(n.maps[a.name], Matrix.identity(m.dims[v], p))
            block[:, offsets[v]:offsets[v] + right.cols] -= right.a
        blocks.append(block % p)
    if blocks:
        system = Matrix(np.vstack(blocks), p)
    else:
        system = Matrix.zeros(0, size, p)
    return system, offsets


def _unpack(m, n, vec, offsets):
    maps = {}
    for v in m.algebra.vertices:
        r, c = n.dims[v], m.dims[v]
        chunk = vec[offsets[v]:offsets[v] + r * c]
        maps[v] = Matrix._wrap(np.array(chunk, dtype=np.int64).reshape(r, c), m.p)
    return RepMorphism(m, n, maps, validate=False)


def hom_basis(m: Representation, n: Representation) -> list:
    """Basis of Hom(m, n), deterministic (free-variable order of the RREF)."""
    if m.algebra != n.algebra:
        raise InputError("representations of different algebras")
    system, offsets = _hom_system(m, n)
    ns = la.nullspace_basis(system)
    return [_unpack(m, n, ns.a[:, k], offsets) for k in range(ns.cols)]


def hom_dim(m: Representation, n: Representation) -> int:
    system, _ = _hom_system(m, n)
    return system.cols - la.rank(system)


def linear_combination(basis, coeffs, source=None, target=None) -> RepMorphism:
    if not basis:
        return RepMorphism.zero(source, target)
    out = basis[0].scale(int(coeffs[0]))
    for b, c in zip(basis[1:], coeffs[1:]):
        out = out + b.scale(int(c))
    return out


def random_morphism(m: Representation, n: Representation, rng: np.random.Generator) -> RepMorphism:
    basis = hom_basis(m, n)
    coeffs = rng.integers(0, m.p, size=len(basis))
    return linear_combination(basis, coeffs, m, n)


# -- abelian structure --------------------------------------------------------

def subrepresentation(m: Representation, bases, name=None):
    """The subrepresentation spanned by per-vertex column bases, with its inclusion.

    The bases must be arrow-stable; the induced arrow maps are recovered by solving.
    """
    dims = {v: bases[v].cols for v in m.algebra.vertices}
    maps = {}
    for a in m.algebra.arrows:
        image = m.maps[a.name] @ bases[a.source]
        x = la.solve(bases[a.target], image)
        if x is None:
            raise InvariantError(f"subspace family is not stable under arrow {a.name}")
        maps[a.name] = x
    sub = Representation(m.algebra, dims, maps, name=name, validate=False)
    return sub, RepMorphism(sub, m, dict(bases), validate=False)


def quotient_representation(m: Representation, bases, name=None):
    """m modulo an arrow-stable subspace family, with the projection."""
    proj, sections = {}, {}
    for v in m.algebra.vertices:
        q = la.quotient_map(bases[v], m.dims[v])
        proj[v] = q
        sections[v] = la.solve(q, Matrix.identity(q.rows, m.p))
    dims = {v: proj[v].rows for v in m.algebra.vertices}
    maps = {a.name: proj[a.target] @ m.maps[a.name] @ sections[a.source] for a in m.algebra.arrows}
    quo = Representation(m.algebra, dims, maps, name=name, validate=False)
    return quo, RepMorphism(m, quo, proj, validate=False)


def kernel(f: RepMorphism):
    bases = {v: la.nullspace_basis(f.maps[v]) for v in f.algebra.vertices}
    return subrepresentation(f.source, bases)


def cokernel(f: RepMorphism):
    bases = {v: la.column_space_basis(f.maps[v]) for v in f.algebra.vertices}
    return quotient_representation(f.target, bases)


def image(f: RepMorphism):
    """Image as the kernel of the cokernel projection: (I, inclusion into target)."""
    _, proj = cokernel(f)
    return kernel(proj)


def factor_through_mono(g: RepMorphism, mono: RepMorphism) -> RepMorphism | None:
    """h with mono @ h == g, if it exists."""
    maps = {}
    for v in g.algebra.vertices:
        x = la.solve(mono.maps[v], g.maps[v])
        if x is None:
            return None
        maps[v] = x
    return RepMorphism(g.source, mono.source, maps, validate=False)


def factor_through_epi(g: RepMorphism, epi: RepMorphism) -> RepMorphism | None:
    """h with h @ epi == g, if it exists."""
    maps = {}
    for v in g.algebra.vertices:
        x = la.solve(epi.maps[v].T, g.maps[v].T)
        if x is None:
            return None
        maps[v] = x.T
    return RepMorphism(epi.target, g.target, maps, validate=False)


def image_factorization(f: RepMorphism):
    """(I, e, m) with f == m @ e, e epi and m mono."""
    im, inc = image(f)
    e = factor_through_mono(f, inc)
    if e is None:
        raise InvariantError("morphism does not factor through its image")
    return im, e, inc


def direct_sum(reps, algebra: Algebra | None = None):
    """Blockwise direct sum with canonical injections and projections."""
    reps = list(reps)
    if not reps:
        if algebra is None:
            raise InputError("empty direct sum needs an algebra")
        z = algebra.zero()
        return z, [], []
    alg = reps[0].algebra
    p = alg.p
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    maps = {a.name: la.block_diag([r.maps[a.name] for r in reps], p) for a in alg.arrows}
    name = " + ".join(r.name or "?" for r in reps) if all(r.name for r in reps) else None
    total = Representation(alg, dims, maps, name=name, validate=False)
    injections, projections = [], []
    starts = {v: 0 for v in alg.vertices}
    for r in reps:
        inj, proj = {}, {}
        for v in alg.vertices:
            e = np.zeros((dims[v], r.dims[v]), dtype=np.int64)
            s = starts[v]
            e[s:s + r.dims[v], :] = np.eye(r.dims[v], dtype=np.int64)
            inj[v] = Matrix._wrap(e, p)
            proj[v] = Matrix._wrap(e.T.copy(), p)
            starts[v] += r.dims[v]
        injections.append(RepMorphism(r, total, inj, validate=False))
        projections.append(RepMorphism(total, r, proj, validate=False))
    return total, injections, projections


def direct_sum_rep(reps, algebra=None) -> Representation:
    return direct_sum(reps, algebra)[0]


def pullback(f: RepMorphism, g: RepMorphism):
    """Pullback of A -f-> C <-g- B: (P, p_A, p_B) with f @ p_A == g @ p_B."""
    if f.target.dims != g.target.dims:
        raise InputError("pullback needs a shared codomain")
    s, _, projs = direct_sum([f.source, g.source])
    diff = f @ projs[0] - g @ projs[1]
    pb, inc = kernel(diff)
    return pb, projs[0] @ inc, projs[1] @ inc


def pushout(f: RepMorphism, g: RepMorphism):
    """Pushout of B <-f- A -g-> C: (Q, q_B, q_C) with q_B @ f == q_C @ g."""
    if f.source.dims != g.source.dims:
        raise InputError("pushout needs a shared domain")
    s, injs, _ = direct_sum([f.target, g.target])
    diff = injs[0] @ f - injs[1] @ g
    po, proj = cokernel(diff)
    return po, proj @ injs[0], proj @ injs[1]


def exactness_failure(maps, right: bool = True) -> str | None:
    """Check 0 -> A0 -> A1 -> ... -> An -> 0 for maps[i]: A_i -> A_{i+1}.

    With ``right=False`` the final ``-> 0`` is dropped (left exactness only).
    Returns None when exact, else a short description of the first failing position.
    """
    if not maps:
        return None
    if not is_mono(maps[0]):
        return "position 0: first map is not a monomorphism"
    for i, (f, g) in enumerate(zip(maps, maps[1:]), start=1):
        if not (g @ f).is_zero():
            return f"position {i}: composite is nonzero"
        for v in f.algebra.vertices:
            ker_dim = g.maps[v].cols - la.rank(g.maps[v])
            if ker_dim != la.rank(f.maps[v]):
                return f"position {i}: kernel and image differ at vertex {v}"
    if right and not is_epi(maps[-1]):
        return f"position {len(maps)}: last map is not an epimorphism"
    return None


# -- subobjects ---------------------------------------------------------------

def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, p: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def subspaces(n: int, p: int):
    """All subspaces of F_p^n as column bases in reduced echelon form."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            slots = [(j, c) for j, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = np.zeros((k, n), dtype=np.int64)
                for j, pc in enumerate(pivots):
                    rows[j, pc] = 1
                for (j, c), val in zip(slots, values):
                    rows[j, c] = val
                yield Matrix._wrap(rows.T.copy(), p)


def _stable(m, a, bases):
    image = m.maps[a.name] @ bases[a.source]
    target = bases[a.target]
    both = la.hstack([target, image], target.rows, m.p)
    return la.rank(both) == target.cols


def subobject_embeddings(m: Representation, guard: int = DEFAULT_SUBOBJECT_BUDGET) -> list:
    """Inclusions of all subrepresentations of m (including 0 and m)."""
    verts = m.algebra.vertices
    needed = math.prod(count_subspaces(m.dims[v], m.p) for v in verts)
    if needed > guard:
        raise BudgetExceeded(needed, guard)
    options = {v: list(subspaces(m.dims[v], m.p)) for v in verts}
    # arrows become checkable once both endpoints are chosen
    position = {v: i for i, v in enumerate(verts)}
    ready = {v: [] for v in verts}
    for a in m.algebra.arrows:
        later = max(a.source, a.target, key=position.get)
        ready[later].append(a)

    out = []

    def extend(i, chosen):
        if i == len(verts):
            out.append(subrepresentation(m, dict(chosen))[1])
            return
        v = verts[i]
        for basis in options[v]:
            chosen[v] = basis
            if all(_stable(m, a, chosen) for a in ready[v]):
                extend(i + 1, chosen)
        del chosen[v]

    extend(0, {})
    return out


# -- atoms, fingerprints and decomposition ------------------------------------

class AtomList:
    """Declared indecomposables with their Hom table.

    ``hom_table[i][j] = dim Hom(atom_i, atom_j)``.  Row i of the fingerprint
    matrix is ``fingerprint(atom_i)``, i.e. the fingerprint matrix is the
    transpose of the Hom table, and ``fingerprint(M) = F^T c`` for
    ``M = sum c_i atom_i``.
    """

    def __init__(self, algebra: Algebra, atoms, strict: bool = True):
        self.algebra = algebra
        atoms = list(atoms.items()) if isinstance(atoms, dict) else list(atoms)
        self.names = tuple(name for name, _ in atoms)
        if len(set(self.names)) != len(self.names):
            raise InputError("duplicate atom names")
        self.reps = tuple(rep.renamed(name) for name, rep in atoms)
        for r in self.reps:
            if r.algebra != algebra:
                raise InputError(f"atom {r.name} lives over a different algebra")
        self.index = {name: i for i, name in enumerate(self.names)}
        n = len(self.reps)
        self.hom_table = np.array([[hom_dim(a, b) for b in self.reps] for a in self.reps],
                                  dtype=np.int64).reshape(n, n)
        self.fingerprint_matrix = self.hom_table.T.copy()
        self._solver = None
        if n:
            h = sympy.Matrix(self.hom_table.tolist())
            if h.det() != 0:
                inv = h.inv()
                denom = sympy.ilcm(*[sympy.fraction(x)[1] for x in inv]) if n else 1
                self._solver = (np.array((inv * denom).tolist(), dtype=object), int(denom))
        else:
            self._solver = (np.zeros((0, 0), dtype=object), 1)
        if strict and self._solver is None:
            raise InputError("fingerprint matrix is singular: atoms are not a complete set of "
                             "pairwise non-isomorphic indecomposables")

    @property
    def certified(self) -> bool:
        return self._solver is not None

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(zip(self.names, self.reps))

    def __getitem__(self, name) -> Representation:
        return self.reps[self.index[name]]

    def order(self, names) -> list:
        """Names sorted by atom-list position."""
        try:
            return sorted(set(names), key=self.index.__getitem__)
        except KeyError as e:
            raise InputError(f"unknown atom {e.args[0]!r}") from None

    def fingerprint(self, m: Representation) -> np.ndarray:
        return np.array([hom_dim(a, m) for a in self.reps], dtype=np.int64)

    def decompose(self, m: Representation) -> Counter:
        """Multiplicity of each atom as a direct summand of m."""
        if self._solver is None:
            raise AtomListIncomplete("fingerprint matrix is singular; decomposition is not unique")
        inv, denom = self._solver
        fp = self.fingerprint(m)
        scaled = inv.dot(fp.astype(object)) if len(fp) else np.zeros(0, dtype=object)
        counts = Counter()
        for name, s in zip(self.names, scaled):
            if s % denom != 0 or s < 0:
                raise AtomListIncomplete(
                    f"atom list incomplete for this object: fingerprint {fp.tolist()} "
                    f"has no nonnegative integral solution")
            if s:
                counts[name] = int(s // denom)
        dims = np.zeros(len(m.algebra.vertices), dtype=np.int64)
        for name, c in counts.items():
            dims += c * np.array(self[name].dim_vector())
        if tuple(dims.tolist()) != m.dim_vector():
            raise AtomListIncomplete(
                f"atom list incomplete for this object: dimension vector {m.dim_vector()} "
                f"does not match decomposition {dict(counts)}")
        return counts

    def support(self, m: Representation) -> set:
        return set(self.decompose(m))

    def in_add(self, m: Representation, names) -> bool:
        return self.support(m) <= set(names)

    def sum_of(self, names) -> Representation:
        return direct_sum_rep([self[n] for n in names], self.algebra)


def trace(atoms: AtomList, names, m: Representation) -> RepMorphism:
    """Inclusion of the sum of images of all maps from the named atoms into m."""
    p = m.p
    cols = {v: [] for v in m.algebra.vertices}
    for name in atoms.order(names):
        for h in hom_basis(atoms[name], m):
            for v in m.algebra.vertices:
                cols[v].append(h.maps[v])
    bases = {v: la.column_space_basis(la.hstack(cols[v], m.dims[v], p)) for v in cols}
    return subrepresentation(m, bases)[1]


def reject(atoms: AtomList, names, m: Representation) -> RepMorphism:
    """Inclusion of the intersection of kernels of all maps from m to the named atoms."""
    p = m.p
    rows = {v: [] for v in m.algebra.vertices}
    for name in atoms.order(names):
        for h in hom_basis(m, atoms[name]):
            for v in m.algebra.vertices:
                rows[v].append(h.maps[v])
    bases = {v: la.nullspace_basis(la.vstack(rows[v], m.dims[v], p)) for v in rows}
    return subrepresentation(m, bases)[1]


def random_sum(atoms: AtomList, rng: np.random.Generator, max_terms: int = 3, min_terms: int = 1):
    k = int(rng.integers(min_terms, max_terms + 1))
    names = [atoms.names[int(i)] for i in rng.integers(0, len(atoms), size=k)]
    return names, atoms.sum_of(names)
