"""
JSON file formats for algebras, atom lists, recollement instances and pairs.

Algebra::

    {"name": "kA2", "prime": 2, "vertices": ["1", "2"],
     "arrows": [{"name": "a", "source": "1", "target": "2"}],
     "relations": [[[1, ["alpha", "beta"]], [-1, ["gamma", "delta"]]]]}

A relation is a list of ``[coefficient, path]`` terms; a path lists arrows in
traversal order.  Matrices are row-major integer arrays of shape
(dim target, dim source), reduced mod p on load.

Atom list::

    {"algebra": "kA2.json",
     "atoms": [{"name": "P(1)", "dims": {"1": 1, "2": 1}, "maps": {"a": [[1]]}}]}

Instance::

    {"name": "t2_kA2", "mode": "regular", "algebra": "kA2.json", "atoms": "kA2_atoms.json",
     "lambda_atoms": [{"name": "(P(1)|S(2))", "x": ["P(1)"], "y": ["S(2)"],
                       "f": {"2": [[1]]}}]}

``x`` and ``y`` list base atoms whose direct sum forms the component; ``f``
gives per-vertex matrices of the structure map (omitted vertices are zero).

Pair file::

    {"x": ["S(2)"], "y": ["S(1)"]}
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import InputError
from .reps import Algebra, AtomList, Quiver, Relation, Representation, RepMorphism, direct_sum_rep
from .recollement import RecollementInstance, TriModule, tensor

DATA_ENV = "RECOLLEMENT_DATA"


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).parent / "data"


def resolve(name_or_path, suffix=".json", base: Path | None = None) -> Path:
    """A file path, or a bare name looked up in `base` (default: the data directory)."""
    p = Path(name_or_path)
    if p.is_file():
        return p
    root = base if base is not None else data_dir()
    for cand in (root / p, root / (str(p) + suffix)):
        if cand.is_file():
            return cand
    raise InputError(f"cannot find {name_or_path!r} (looked in {root})")


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None


def algebra_from_dict(d: dict, prime: int | None = None) -> Algebra:
    try:
        quiver = Quiver(tuple(str(v) for v in d["vertices"]),
                        tuple((a["name"], str(a["source"]), str(a["target"])) for a in d.get("arrows", [])))
        rels = tuple(Relation(tuple((int(c), tuple(path)) for c, path in r)) for r in d.get("relations", []))
        return Algebra(d["name"], quiver, rels, int(prime if prime is not None else d.get("prime", 2)))
    except KeyError as e:
        raise InputError(f"algebra description lacks field {e.args[0]!r}") from None


def algebra_to_dict(alg: Algebra) -> dict:
    return {
        "name": alg.name,
        "prime": alg.p,
        "vertices": list(alg.vertices),
        "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in alg.arrows],
        "relations": [[[c, list(path)] for c, path in r.terms] for r in alg.relations],
    }


def rep_from_dict(d: dict, algebra: Algebra) -> Representation:
    dims = {str(v): int(n) for v, n in d.get("dims", {}).items()}
    return Representation(algebra, dims, d.get("maps", {}), name=d.get("name"))


def rep_to_dict(rep: Representation) -> dict:
    return {
        "name": rep.name,
        "dims": {v: rep.dims[v] for v in rep.algebra.vertices},
        "maps": {a: m.tolist() for a, m in rep.maps.items()},
    }


def load_algebra(path, prime=None) -> Algebra:
    return algebra_from_dict(read_json(resolve(path)), prime)


def load_atoms(path, algebra: Algebra | None = None, prime=None, strict=True) -> AtomList:
    path = resolve(path)
    d = read_json(path)
    if algebra is None:
        algebra = load_algebra(resolve(d["algebra"], base=path.parent), prime)
    return AtomList(algebra, [(a["name"], rep_from_dict(a, algebra)) for a in d["atoms"]], strict=strict)


def load_algebra_with_atoms(name, prime=None) -> AtomList:
    """`kA2` -> the atom list `kA2_atoms.json` over the algebra `kA2.json`."""
    path = resolve(name)
    d = read_json(path)
    if "atoms" in d and "vertices" not in d:
        return load_atoms(path, prime=prime)
    algebra = algebra_from_dict(d, prime)
    atoms_file = d.get("atoms_file", f"{path.stem}_atoms.json")
    return load_atoms(resolve(atoms_file, base=path.parent), algebra)


def _component(spec, atoms: AtomList) -> Representation:
    if isinstance(spec, dict):
        return rep_from_dict(spec, atoms.algebra)
    names = [spec] if isinstance(spec, str) else list(spec)
    for n in names:
        if n not in atoms.index:
            raise InputError(f"unknown base atom {n!r}")
    return direct_sum_rep([atoms[n] for n in names], atoms.algebra)


def trimodule_from_dict(d: dict, atoms: AtomList, mode: str) -> TriModule:
    x = _component(d.get("x", []), atoms)
    y = _component(d.get("y", []), atoms)
    fmaps = d.get("f") or {}
    if fmaps and mode == "zero":
        raise InputError(f"{d.get('name')}: structure map given but M = 0")
    f = RepMorphism(tensor(y, mode), x, {str(v): m for v, m in fmaps.items()})
    return TriModule(x, y, f, mode, name=d.get("name"))


def load_instance(path, prime=None, strict=True) -> RecollementInstance:
    path = resolve(path)
    d = read_json(path)
    algebra = load_algebra(resolve(d["algebra"], base=path.parent), prime)
    base_atoms = load_atoms(resolve(d["atoms"], base=path.parent), algebra)
    mode = d.get("mode", "regular")
    tris = [(a["name"], trimodule_from_dict(a, base_atoms, mode)) for a in d["lambda_atoms"]]
    return RecollementInstance(base_atoms, mode, tris, name=d.get("name", path.stem), strict=strict)


def load_pair(path) -> tuple:
    """Pair file {"x": [...], "y": [...]}; bare names are also looked up in data/pairs."""
    try:
        path = resolve(path)
    except InputError:
        path = resolve(path, base=data_dir() / "pairs")
    d = read_json(path)
    try:
        return list(d["x"]), list(d["y"])
    except KeyError as e:
        raise InputError(f"pair file lacks field {e.args[0]!r}") from None
