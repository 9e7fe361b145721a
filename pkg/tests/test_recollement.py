import json
import shutil
from collections import Counter

import numpy as np
import pytest

from recollement import io, reps
from recollement.errors import InputError, PreconditionError
from recollement.recollement import FUNCTORS, TriModule
from recollement.reps import RepMorphism


def counts(atoms, m):
    return atoms.decompose(m)


# -- functors on objects ------------------------------------------------------

def test_functor_examples(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    assert counts(A, t2.i_upper(L["(P(1)|S(2))"])) == Counter({"S(1)": 1})
    jl = t2.j_lower(A["S(2)"])
    assert counts(L, jl.rep) == Counter({"(S(2)|S(2))": 1})
    assert reps.is_iso(jl.f)
    for name, c in A:
        assert t2.i_upper(t2.j_lower(c)).is_zero()
        assert t2.i_shriek(t2.j_rstar(c)).is_zero()


def test_functor_images_of_atoms(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    assert {n: dict(counts(L, t2.i_star(c).rep)) for n, c in A} == {
        "S(2)": {"(S(2)|0)": 1}, "P(1)": {"(P(1)|0)": 1}, "S(1)": {"(S(1)|0)": 1}}
    assert {n: dict(counts(L, t2.j_rstar(c).rep)) for n, c in A} == {
        "S(2)": {"(0|S(2))": 1}, "P(1)": {"(0|P(1))": 1}, "S(1)": {"(0|S(1))": 1}}
    assert {n: dict(counts(L, t2.j_lower(c).rep)) for n, c in A} == {
        "S(2)": {"(S(2)|S(2))": 1}, "P(1)": {"(P(1)|P(1))": 1}, "S(1)": {"(S(1)|S(1))": 1}}


def test_zero_mode_j_lower_equals_j_rstar(prod):
    for _, c in prod.base_atoms:
        assert reps.is_iso(prod.j_lower_to_rstar(c).rep)


@pytest.mark.parametrize("fid", sorted(FUNCTORS))
def test_functoriality(t2, fid):
    rng = np.random.default_rng(21)
    domain = t2.base_atoms if FUNCTORS[fid][1] == "A" else t2.lambda_atoms
    for _ in range(15):
        _, a = reps.random_sum(domain, rng, 2)
        _, b = reps.random_sum(domain, rng, 2)
        _, c = reps.random_sum(domain, rng, 2)
        f, g = reps.random_morphism(a, b, rng), reps.random_morphism(b, c, rng)
        assert t2.apply_map(fid, g @ f) == t2.apply_map(fid, g) @ t2.apply_map(fid, f)
        ident = t2.apply_map(fid, RepMorphism.identity(a))
        assert ident == RepMorphism.identity(ident.source)


# -- Hom, units, counits ------------------------------------------------------

def test_hom_tri_examples(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    assert t2.hom_tri_dim(t2.tri_atoms["(S(2)|0)"], t2.tri_atoms["(0|S(1))"]) == 0
    assert t2.hom_tri_dim(t2.tri_atoms["(P(1)|P(1))"], t2.tri_atoms["(P(1)|P(1))"]) == 1
    for cn, c in A:
        for bn, b in L:
            assert t2.hom_tri_dim(t2.j_lower(c), b) == reps.hom_dim(c, t2.j_upper(b))
    h = t2.hom_tri(t2.tri_atoms["(P(1)|0)"], t2.tri_atoms["(P(1)|S(2))"])
    assert len(h) == 1 and reps.is_mono(h[0].a)


def test_counit_unit_examples(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    for _, c in A:
        assert reps.is_iso(t2.counit_eps(t2.j_lower(c)).rep)
    eta = t2.unit_eta(t2.tri_atoms["(S(1)|0)"]).rep
    assert eta.target.is_zero()
    eps = t2.counit_eps(t2.tri_atoms["(P(1)|S(2))"]).rep
    assert reps.kernel(eps)[0].is_zero()
    assert counts(L, reps.cokernel(eps)[0]) == Counter({"(S(1)|0)": 1})


# -- canonical sequences ------------------------------------------------------

def test_canonical_sequences_examples(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    first, second, a, a2 = t2.canonical_sequences(t2.tri_atoms["(P(1)|S(2))"])
    assert a.is_zero()
    assert counts(L, first[2].target) == Counter({"(S(1)|0)": 1})
    b = t2.tri_atoms["(0|S(2))"]
    first, second, a, a2 = t2.canonical_sequences(b)
    assert second[0].source.is_zero() and reps.is_iso(second[1]) and second[2].target.is_zero()
    b = t2.tri_atoms["(P(1)|0)"]
    first, second, a, a2 = t2.canonical_sequences(b)
    assert first[0].source.is_zero() and first[1].source.is_zero() and reps.is_iso(first[2])


def test_canonical_sequences_random_sums(t2):
    rng = np.random.default_rng(30)
    for _ in range(30):
        _, b = reps.random_sum(t2.lambda_atoms, rng, 3)
        t2.canonical_sequences(b)


def test_canonical_end_terms_regular(t2):
    # A = ker f and A' = 0 here; recorded but not part of any contract
    for name, b in t2.tri_atoms.items():
        _, _, a, a2 = t2.canonical_sequences(b)
        assert a.dims == reps.kernel(b.f)[0].dims
        assert a2.is_zero()


def test_j_lower_to_rstar_sequence(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    seq = t2.j_lower_to_rstar_sequence(A["S(2)"])
    assert [dict(counts(L, m.source)) for m in seq] == [{"(S(2)|0)": 1}, {"(S(2)|S(2))": 1}, {"(0|S(2))": 1}]
    assert seq[2].target.is_zero()
    for _, c in A:
        t2.j_lower_to_rstar_sequence(c)


def test_split_sequences_regular(t2):
    for name, b in t2.tri_atoms.items():
        seqs = t2.split_sequences(b)
        assert list(seqs) == [2]
    with pytest.raises(PreconditionError) as err:
        t2.split_sequences(t2.tri_atoms["(P(1)|S(2))"], which=[1])
    assert str(err.value) == "i^* not exact" and err.value.functor == "i_upper"


def test_split_sequences_zero_mode(prod):
    for name, b in prod.tri_atoms.items():
        seqs = prod.split_sequences(b)
        assert sorted(seqs) == [1, 2]
        first, second, _, _ = prod.canonical_sequences(b)
        assert reps.is_mono(first[1]) and reps.is_epi(second[1])


# -- exactness ----------------------------------------------------------------

def test_structural_exactness(t2, prod):
    assert [f for f in FUNCTORS if not t2.structurally_exact(f)] == ["i_upper"]
    assert all(prod.structurally_exact(f) for f in FUNCTORS)
    with pytest.raises(InputError):
        t2.structurally_exact("nope")


def test_deterministic_i_upper_witness(t2):
    A, L = t2.base_atoms, t2.lambda_atoms
    inc, proj = t2.sequence_from_atoms("(P(1)|0)", "(P(1)|S(2))")
    assert counts(L, proj.target) == Counter({"(0|S(2))": 1})
    assert reps.exactness_failure([inc, proj]) is None
    image = t2.apply_map("i_upper", inc)
    assert counts(A, image.source) == Counter({"P(1)": 1})
    assert counts(A, image.target) == Counter({"S(1)": 1})
    assert not reps.is_mono(image)
    assert "position 0" in t2.exactness_on("i_upper", inc, proj)
    for fid in ("i_shriek", "j_upper"):
        assert t2.exactness_on(fid, inc, proj) is None


def test_probes_short(t2, prod):
    for fid in FUNCTORS:
        if fid != "i_upper":
            assert t2.probe_exactness(fid, trials=60, seed=3) is None
        assert prod.probe_exactness(fid, trials=60, seed=3) is None
    found = t2.probe_exactness("i_upper", trials=200, seed=3)
    assert found is not None and found.functor == "i_upper"


def test_probe_is_seed_deterministic(t2):
    a = t2.probe_exactness("i_upper", trials=200, seed=5)
    b = t2.probe_exactness("i_upper", trials=200, seed=5)
    assert a == b


def test_random_ses_exact(t2):
    rng = np.random.default_rng(0)
    for domain in "AB":
        for _ in range(20):
            inc, proj, _ = t2.random_ses(domain, rng)
            assert reps.exactness_failure([inc, proj]) is None


# -- axioms -------------------------------------------------------------------

def test_axioms_regular(t2):
    rep = t2.verify_recollement_axioms()
    assert rep.ok, rep.lines()
    names = [c.name for c in rep.checks]
    assert "Im i_* = Ker j^*" in names and len([n for n in names if n.startswith("adjoint")]) == 4


def test_axioms_zero_mode(prod):
    rep = prod.verify_recollement_axioms()
    assert rep.ok, rep.lines()
    assert "i^* = i^! (M = 0)" in [c.name for c in rep.checks]


def _corrupt(tmp_path):
    data = io.data_dir()
    for f in ("kA2.json", "kA2_atoms.json"):
        shutil.copy(data / f, tmp_path / f)
    d = json.loads((data / "t2_kA2.json").read_text())
    for atom in d["lambda_atoms"]:
        if atom["name"] == "(P(1)|S(2))":
            atom.pop("f")
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(d))
    return path


def test_fault_injection_dropped_structure_map(tmp_path):
    path = _corrupt(tmp_path)
    with pytest.raises(InputError):
        io.load_instance(path)
    broken = io.load_instance(path, strict=False)
    rep = broken.verify_recollement_axioms()
    failed = [c.name for c in rep.failures()]
    assert "Im i_* = Ker j^*" in failed


def test_mode_mismatch_rejected(t2):
    x = t2.base_atoms["S(2)"]
    with pytest.raises(InputError):
        TriModule(x, x, None, "weird")
    with pytest.raises(InputError):
        TriModule(x, x, RepMorphism.identity(x), "zero")
