"""
Gluing torsion pairs along a recollement, and restricting them back.

Given pairs (X', Y') in mod A and (X'', Y'') in mod C, the glued pair in the
middle category is

    X = {B : i^*B in X' and j^*B in X''}
    Y = {B : i^!B in Y' and j^*B in Y''}

Membership is decided atom by atom through decomposition of the functor
images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import reps
from . import torsion as tt
from .errors import InputError, InvariantError, PreconditionError
from .recollement import RecollementInstance, Report, display
from .torsion import TorsionPair, TtfTriple, Verdict


def _members(R: RecollementInstance, conditions) -> frozenset:
    """Lambda-atoms B with functor(B) in add(names) for every (functor_id, names) condition."""
    A = R.base_atoms
    out = []
    for name, b in R.lambda_atoms:
        if all(A.in_add(R.apply(fid, b), names) for fid, names in conditions):
            out.append(name)
    return frozenset(out)


def glue(tpA: TorsionPair, tpC: TorsionPair, R: RecollementInstance) -> TorsionPair:
    """(X, Y) with X = {B : i^*B in X', j^*B in X''} and Y = {B : i^!B in Y', j^*B in Y''}."""
    return _glue(tpA, tpC, R)


@lru_cache(maxsize=4096)
def _glue(tpA: TorsionPair, tpC: TorsionPair, R: RecollementInstance) -> TorsionPair:
    # instances and pairs are immutable, so results can be shared
    A = R.base_atoms
    for side, tp in (("A-side", tpA), ("C-side", tpC)):
        v = tt.is_torsion_pair(A, tp.torsion, tp.torsionfree)
        if not v:
            raise InputError(f"{side} input is not a torsion pair: {v.witness}")
    x = _members(R, [("i_upper", tpA.torsion), ("j_upper", tpC.torsion)])
    y = _members(R, [("i_shriek", tpA.torsionfree), ("j_upper", tpC.torsionfree)])
    L = R.lambda_atoms
    v = tt.is_torsion_pair(L, x, y)
    if not v:
        raise InvariantError(f"glued classes do not form a torsion pair: {v.witness}")
    if tt.perp_right(L, x) != y:
        raise InvariantError("glued torsion-free class is not the right perpendicular of the torsion class")
    return TorsionPair(x, y)


def _image_class(R: RecollementInstance, functor_id: str, names) -> frozenset:
    out = set()
    for n in names:
        out |= R.base_atoms.support(R.apply(functor_id, R.lambda_atoms[n]))
    return frozenset(out)


def restrict_to_A(tpB: TorsionPair, R: RecollementInstance) -> TorsionPair:
    """(i^*(X), i^!(Y)); always a torsion pair in mod A."""
    pair = TorsionPair(_image_class(R, "i_upper", tpB.torsion), _image_class(R, "i_shriek", tpB.torsionfree))
    v = tt.is_torsion_pair(R.base_atoms, pair.torsion, pair.torsionfree)
    if not v:
        raise InvariantError(f"restriction to mod A is not a torsion pair: {v.witness}")
    return pair


@dataclass
class Restriction:
    candidate: TorsionPair
    condition: bool
    is_pair: Verdict
    witness: str = ""


def restrict_to_C(tpB: TorsionPair, R: RecollementInstance) -> Restriction:
    """(j^*(X), j^*(Y)) together with the test j_* j^*(Y) in Y, which holds iff it is a torsion pair."""
    L = R.lambda_atoms
    cand = TorsionPair(_image_class(R, "j_upper", tpB.torsion), _image_class(R, "j_upper", tpB.torsionfree))
    witness = ""
    for n in L.order(tpB.torsionfree):
        obj = R.j_rstar(R.j_upper(L[n])).rep
        parts = L.decompose(obj)
        if not set(parts) <= tpB.torsionfree:
            outside = L.order(set(parts) - tpB.torsionfree)
            witness = f"j_* j^*{n} contains {', '.join(outside)}, which is not in Y"
            break
    condition = not witness
    verdict = tt.is_torsion_pair(R.base_atoms, cand.torsion, cand.torsionfree)
    if condition != bool(verdict):
        raise InvariantError("j_* j^*(Y) in Y disagrees with the torsion-pair test of the restriction")
    return Restriction(cand, condition, verdict, witness)


def _contained(R, outer_id, inner_id, names, target) -> tuple:
    """Whether outer(inner(B)) lies in add(target) for all B in names, with the first failure."""
    L = R.lambda_atoms
    for n in L.order(names):
        obj = R.apply(outer_id, R.apply(inner_id, L[n]))
        parts = L.decompose(obj)
        if not set(parts) <= target:
            return False, n
    return True, None


def closure_equivalences(tpB: TorsionPair, R: RecollementInstance) -> Report:
    """The two equivalences between closure of Y and closure of X under the recollement idempotents."""
    rep = Report("closure equivalences")
    X, Y = tpB.torsion, tpB.torsionfree
    results = {}
    for key, outer, inner, names, target in (
        ("j_*j^*(Y) in Y", "j_rstar", "j_upper", Y, Y),
        ("j_!j^*(X) in X", "j_lower", "j_upper", X, X),
        ("i_*i^!(Y) in Y", "i_star", "i_shriek", Y, Y),
        ("i_*i^*(X) in X", "i_star", "i_upper", X, X),
    ):
        ok, bad = _contained(R, outer, inner, names, target)
        results[key] = ok
        rep.add(key, True, f"{ok}" + (f", fails at {bad}" if bad else ""))
    rep.add("j_*j^*(Y) in Y <=> j_!j^*(X) in X", results["j_*j^*(Y) in Y"] == results["j_!j^*(X) in X"])
    rep.add("i_*i^!(Y) in Y <=> i_*i^*(X) in X", results["i_*i^!(Y) in Y"] == results["i_*i^*(X) in X"])
    rep.data["containments"] = results
    return rep


def reconstruct(tpB: TorsionPair, R: RecollementInstance) -> TorsionPair:
    """Rebuild a pair from its restrictions by the gluing membership formulas."""
    tpA = restrict_to_A(tpB, R)
    res = restrict_to_C(tpB, R)
    x = _members(R, [("i_upper", tpA.torsion), ("j_upper", res.candidate.torsion)])
    y = _members(R, [("i_shriek", tpA.torsionfree), ("j_upper", res.candidate.torsionfree)])
    return TorsionPair(x, y)


def roundtrip_check(tpA: TorsionPair, tpC: TorsionPair, R: RecollementInstance) -> Report:
    rep = Report("glue / restrict round trip")
    glued = glue(tpA, tpC, R)
    back_a = restrict_to_A(glued, R)
    rep.add("(i^*(X), i^!(Y)) = (X', Y')", back_a == tpA, back_a.describe(R.base_atoms))
    res = restrict_to_C(glued, R)
    rep.add("j_*j^*(Y) in Y", res.condition, res.witness)
    rep.add("(j^*(X), j^*(Y)) = (X'', Y'')", res.candidate == tpC, res.candidate.describe(R.base_atoms))
    rebuilt = reconstruct(glued, R)
    rep.add("membership formulas rebuild the glued pair", rebuilt == glued)
    rep.data["glued"] = glued
    return rep


# -- closure clauses ----------------------------------------------------------

CLAUSES = {
    # clause: (predicate, functors that must be exact)
    "cohereditary": ("cohereditary", ("i_shriek",)),
    "hereditary": ("hereditary", ("i_upper",)),
    "tilting": ("tilting", ("i_shriek", "j_lower")),
    "cotilting": ("cotilting", ("i_upper", "j_rstar")),
}


@dataclass
class ClauseResult:
    clause: str
    status: str  # "holds", "violated", "vacuous", "undetermined", "skipped"
    detail: str = ""
    unverified: bool = False

    def line(self):
        tag = " (unverified hypothesis)" if self.unverified else ""
        return f"{self.clause}: {self.status}{tag}" + (f"  [{self.detail}]" if self.detail else "")


def check_glue_clause(clause: str, tpA: TorsionPair, tpC: TorsionPair, R: RecollementInstance,
                      force: bool = False, budget: int = reps.DEFAULT_SUBOBJECT_BUDGET) -> ClauseResult:
    """If both inputs have the property and the exactness hypotheses hold, so does the glued pair.

    Raises PreconditionError naming the first non-exact functor unless `force`.
    """
    pred_name, needed = CLAUSES[clause]
    unverified = any(not R.structurally_exact(f) for f in needed)
    R.require_exact(*needed, force=force)
    pred = tt.PREDICATES[pred_name]
    kw = {"budget": budget} if pred_name in ("hereditary", "cohereditary") else {}
    ina = pred(R.base_atoms, tpA, **kw)
    inc = pred(R.base_atoms, tpC, **kw)
    if not (ina.determined and inc.determined):
        return ClauseResult(clause, "undetermined", "input predicate over budget", unverified)
    if not (ina and inc):
        which = "A-side" if not ina else "C-side"
        return ClauseResult(clause, "vacuous", f"{which} input is not {pred_name}", unverified)
    glued = glue(tpA, tpC, R)
    out = pred(R.lambda_atoms, glued, **kw)
    if not out.determined:
        return ClauseResult(clause, "undetermined", out.witness, unverified)
    return ClauseResult(clause, "holds" if out else "violated", out.witness, unverified)


def check_glue_closure_properties(tpA, tpC, R, force=False, budget=reps.DEFAULT_SUBOBJECT_BUDGET) -> list:
    out = []
    for clause in CLAUSES:
        try:
            out.append(check_glue_clause(clause, tpA, tpC, R, force=force, budget=budget))
        except PreconditionError as e:
            out.append(ClauseResult(clause, "skipped", str(e)))
    return out


def glue_ttf(ttfA: TtfTriple, ttfC: TtfTriple, R: RecollementInstance, force: bool = False) -> TtfTriple:
    """Glue two TTF-triples; needs i^* and i^! exact."""
    R.require_exact("i_upper", "i_shriek", force=force)
    first = glue(TorsionPair(ttfA.x, ttfA.y), TorsionPair(ttfC.x, ttfC.y), R)
    z = _members(R, [("i_upper", ttfA.z), ("j_upper", ttfC.z)])
    # torsion class of the second glued pair, computed with i^* rather than i^!
    y2 = _members(R, [("i_upper", ttfA.y), ("j_upper", ttfC.y)])
    if y2 != first.torsionfree:
        raise InvariantError("middle class differs when computed with i^* and with i^!")
    v = tt.is_ttf(R.lambda_atoms, first.torsion, first.torsionfree, z)
    if not v:
        raise InvariantError(f"glued triple is not a TTF-triple: {v.witness}")
    return TtfTriple(first.torsion, first.torsionfree, z)


# -- constructive decomposition -----------------------------------------------

@dataclass
class GluedDecomposition:
    inclusion: reps.RepMorphism   # X_B -> B
    projection: reps.RepMorphism  # B -> Y_B
    torsion_part: dict = field(default_factory=dict)
    torsionfree_part: dict = field(default_factory=dict)
    stages: dict = field(default_factory=dict)


def glued_decomposition_constructive(B, tpA: TorsionPair, tpC: TorsionPair,
                                     R: RecollementInstance) -> GluedDecomposition:
    """0 -> X_B -> B -> Y_B -> 0 built by the pullback/pushout route through B's canonical sequences."""
    b = R.tri(B)
    A, L = R.base_atoms, R.lambda_atoms
    brep = b.rep
    stages = {}

    def check(label, ok):
        if not ok:
            raise InvariantError(f"construction failed at {label}")

    # Im eta_B inside j_* j^* B
    eta = R.unit_eta(b).rep
    im_eta, eta_epi, eta_mono = reps.image_factorization(eta)
    stages["Im eta_B"] = im_eta

    # C-side torsion sequence 0 -> X'' -> j^*B -h-> Y'' -> 0
    jb = b.y
    xc_inc, h = tt.torsion_sequence(A, tpC.torsion, jb)
    jx = R.j_rstar_map(xc_inc).rep                  # j_*(X'') -> j_* j^* B
    jh = R.j_rstar_map(h).rep                       # j_* j^* B -> j_*(Y'')
    check("0 -> j_*(X'') -> j_*j^*B -> j_*(Y'')", reps.exactness_failure([jx, jh], right=False) is None)

    # K = Im eta_B x_{j_*j^*B} j_*(X'')
    K, k_to_jx, f = reps.pullback(jx, eta_mono)
    check("pullback defining K (f mono)", reps.is_mono(f))
    coker_f, coker_f_proj = reps.cokernel(f)
    stages["K"], stages["Coker f"] = K, coker_f

    # M = B x_{Im eta_B} K
    M, m_to_b, m_to_k = reps.pullback(eta_epi, f)
    check("pullback defining M (M -> B mono)", reps.is_mono(m_to_b))
    check("0 -> M -> B -> Coker f -> 0", reps.exactness_failure([m_to_b, coker_f_proj @ eta_epi]) is None)
    stages["M"] = M

    # A-side torsion sequence of i^*(M), pulled back along M -> i_* i^* M
    unit_m = R.unit_i_upper(M).rep                 # M -> i_* i^* M
    ia = R.i_upper(M)
    xa_inc, ya_proj = tt.torsion_sequence(A, tpA.torsion, ia)
    ix = R.i_star_map(xa_inc).rep                  # i_*(X') -> i_* i^* M
    X, x_to_ix, x_to_m = reps.pullback(ix, unit_m)
    check("pullback defining X (X -> M mono)", reps.is_mono(x_to_m))
    stages["X"] = X

    # Y = pushout of B <- M -> i_*(Y')
    m_to_iy = R.i_star_map(ya_proj).rep @ unit_m
    Y, b_to_y, iy_to_y = reps.pushout(m_to_b, m_to_iy)
    stages["Y"] = Y

    inclusion = m_to_b @ x_to_m
    failure = reps.exactness_failure([inclusion, b_to_y])
    check(f"0 -> X -> B -> Y -> 0 ({failure})", failure is None)

    glued = glue(tpA, tpC, R)
    xparts, yparts = L.decompose(X), L.decompose(Y)
    check("X_B in the glued torsion class", set(xparts) <= glued.torsion)
    check("Y_B in the glued torsion-free class", set(yparts) <= glued.torsionfree)
    return GluedDecomposition(inclusion, b_to_y, dict(xparts), dict(yparts), stages)


def trace_decomposition(B, tpB: TorsionPair, R: RecollementInstance):
    """Multisets of the torsion subobject and torsion-free quotient of B computed by trace."""
    b = R.tri(B).rep
    L = R.lambda_atoms
    inc, proj = tt.torsion_sequence(L, tpB.torsion, b)
    return dict(L.decompose(inc.source)), dict(L.decompose(proj.target))
