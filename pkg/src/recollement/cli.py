"""Command-line interface.

Exit codes: 0 pass/true, 1 false or counterexample, 2 undetermined (budget),
3 input error.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from dataclasses import dataclass

from . import io, reps
from . import gluing as gl
from . import torsion as tt
from .errors import BudgetExceeded, InputError, PreconditionError, RecollementError
from .linalg import check_prime
from .recollement import FUNCTORS, display
from .torsion import Truth, TorsionPair, TtfTriple

EXIT_TRUE, EXIT_FALSE, EXIT_UNDETERMINED, EXIT_INPUT = 0, 1, 2, 3


@dataclass
class WorkspaceConfig:
    prime: int | None = None
    budget_subobjects: int = reps.DEFAULT_SUBOBJECT_BUDGET
    trials: int = 1000
    seed: int = 0
    algebra: str = "kA2"
    instance: str | None = None

    def __post_init__(self):
        if self.prime is not None:
            check_prime(self.prime)
        if self.budget_subobjects <= 0 or self.trials <= 0:
            raise InputError("budgets must be positive")


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc = {}
        self.text = []

    def line(self, s=""):
        self.text.append(s)

    def set(self, **kw):
        self.doc.update(kw)

    def emit(self, stream=None):
        stream = stream or sys.stdout
        if self.as_json:
            stream.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")
        else:
            stream.write("\n".join(self.text) + "\n")


def _names(s: str | None) -> list:
    if not s:
        return []
    return [n.strip() for n in s.split(",") if n.strip()]


def _pair_json(tp: TorsionPair, atoms) -> dict:
    x, y = tp.names(atoms)
    return {"x": x, "y": y}


def pair_from_json(d: dict) -> TorsionPair:
    return TorsionPair.of(d["x"], d["y"])


def _verdict_code(v) -> int:
    return {Truth.TRUE: EXIT_TRUE, Truth.FALSE: EXIT_FALSE, Truth.UNDETERMINED: EXIT_UNDETERMINED}[v.truth]


def _category(cfg: WorkspaceConfig):
    if cfg.instance:
        return io.load_instance(cfg.instance, cfg.prime).lambda_atoms
    return io.load_algebra_with_atoms(cfg.algebra, cfg.prime)


def _instance(cfg: WorkspaceConfig):
    return io.load_instance(cfg.instance or "t2_kA2", cfg.prime)


def _object(atoms, spec: str):
    names = [n.strip() for n in spec.split("+") if n.strip() and n.strip() != "0"]
    for n in names:
        if n not in atoms.index:
            raise InputError(f"unknown atom {n!r}")
    return atoms.sum_of(names)


def _pair_arg(args, atoms, prefix=""):
    path = getattr(args, f"{prefix}pair", None)
    if path:
        x, y = io.load_pair(path)
    else:
        x, y = _names(getattr(args, f"{prefix}x")), _names(getattr(args, f"{prefix}y"))
    return TorsionPair(tt.subcategory(atoms, x), tt.subcategory(atoms, y))


# -- commands -----------------------------------------------------------------

def cmd_atoms(cfg, args, out):
    atoms = _category(cfg)
    out.line(f"{len(atoms)} atoms over {atoms.algebra.name} (F_{atoms.algebra.p})")
    out.line(f"vertices: {', '.join(atoms.algebra.vertices)}")
    width = max((len(n) for n in atoms.names), default=4)
    for n, r in atoms:
        out.line(f"  {n:<{width}}  dim {r.dim_vector()}")
    out.line("Hom table (row -> column):")
    for n, row in zip(atoms.names, atoms.hom_table.tolist()):
        out.line(f"  {n:<{width}}  " + " ".join(str(v) for v in row))
    out.line(f"verdict: {'true' if atoms.certified else 'false'} (fingerprint matrix invertible)")
    out.set(algebra=atoms.algebra.name, atoms=list(atoms.names),
            dim_vectors={n: list(r.dim_vector()) for n, r in atoms},
            hom_table=atoms.hom_table.tolist(), certified=atoms.certified)
    return EXIT_TRUE if atoms.certified else EXIT_FALSE


def cmd_hom(cfg, args, out):
    atoms = _category(cfg)
    m, n = _object(atoms, args.m), _object(atoms, args.n)
    basis = reps.hom_basis(m, n)
    out.line(f"dim Hom({args.m}, {args.n}) = {len(basis)}")
    for k, h in enumerate(basis):
        out.line(f"  basis[{k}]: " + ", ".join(f"{v}: {mat.tolist()}" for v, mat in h.maps.items()
                                               if mat.rows and mat.cols))
    out.set(dim=len(basis), basis=[{v: mat.tolist() for v, mat in h.maps.items()} for h in basis])
    return EXIT_TRUE


def cmd_decompose(cfg, args, out):
    if args.functor:
        R = _instance(cfg)
        fid = args.functor
        src = R.base_atoms if FUNCTORS[fid][1] == "A" else R.lambda_atoms
        tgt = R.base_atoms if FUNCTORS[fid][2] == "A" else R.lambda_atoms
        obj = R.apply(fid, _object(src, args.object))
        label = f"{display(fid)}({args.object})"
        atoms = tgt
    else:
        atoms = _category(cfg)
        obj = io.rep_from_dict(io.read_json(args.file), atoms.algebra) if args.file else _object(atoms, args.object)
        label = args.object or args.file
    counts = atoms.decompose(obj)
    summary = " + ".join(n if c == 1 else f"{c}*{n}" for n, c in counts.items()) or "0"
    out.line(f"{label} = {summary}")
    out.set(object=label, decomposition=dict(counts))
    return EXIT_TRUE


def cmd_enumerate(cfg, args, out):
    atoms = _category(cfg)
    pairs = tt.enumerate_torsion_pairs(atoms, bound=args.bound)
    out.line(f"{len(pairs)} torsion pairs over {atoms.algebra.name}")
    for k, tp in enumerate(pairs):
        out.line(f"  [{k}] {tp.describe(atoms)}")
    out.set(count=len(pairs), pairs=[_pair_json(tp, atoms) for tp in pairs])
    return EXIT_TRUE


def cmd_check_pair(cfg, args, out):
    atoms = _category(cfg)
    tp = _pair_arg(args, atoms)
    v = tt.is_torsion_pair(atoms, tp.torsion, tp.torsionfree)
    out.line(f"pair {tp.describe(atoms)}")
    out.line(f"verdict: {v}")
    out.set(pair=_pair_json(tp, atoms), verdict=v.truth.value, witness=v.witness)
    return _verdict_code(v)


def cmd_predicates(cfg, args, out):
    atoms = _category(cfg)
    tp = _pair_arg(args, atoms)
    v = tt.is_torsion_pair(atoms, tp.torsion, tp.torsionfree)
    if not v:
        raise InputError(f"not a torsion pair: {v.witness}")
    out.line(f"pair {tp.describe(atoms)}")
    results = {}
    for name, pred in tt.PREDICATES.items():
        kw = {"budget": cfg.budget_subobjects} if name in ("hereditary", "cohereditary") else {}
        r = pred(atoms, tp, **kw)
        results[name] = r
        out.line(f"  {name}: {r}")
    out.set(pair=_pair_json(tp, atoms), **{k: r.truth.value for k, r in results.items()})
    if any(r.truth is Truth.UNDETERMINED for r in results.values()):
        return EXIT_UNDETERMINED
    return EXIT_TRUE


def cmd_glue(cfg, args, out):
    R = _instance(cfg)
    A, L = R.base_atoms, R.lambda_atoms
    tpA = tt.validated_pair(A, *_pair_arg(args, A, "a_").names(A))
    tpC = tt.validated_pair(A, *_pair_arg(args, A, "c_").names(A))
    glued = gl.glue(tpA, tpC, R)
    out.line(f"A-side {tpA.describe(A)}")
    out.line(f"C-side {tpC.describe(A)}")
    out.line(f"glued  {glued.describe(L)}")
    out.set(a=_pair_json(tpA, A), c=_pair_json(tpC, A), glued=_pair_json(glued, L))
    code = EXIT_TRUE
    if args.closure:
        results = gl.check_glue_closure_properties(tpA, tpC, R, force=args.force, budget=cfg.budget_subobjects)
        for r in results:
            out.line(f"  {r.line()}")
        out.set(closure={r.clause: {"status": r.status, "detail": r.detail, "unverified": r.unverified}
                         for r in results})
        if any(r.status == "violated" for r in results):
            code = EXIT_FALSE
        elif any(r.status == "undetermined" for r in results):
            code = EXIT_UNDETERMINED
    if args.ttf:
        ttfA = TtfTriple(*(tt.subcategory(A, _names(s)) for s in args.ttf[:3]))
        ttfC = TtfTriple(*(tt.subcategory(A, _names(s)) for s in args.ttf[3:]))
        triple = gl.glue_ttf(ttfA, ttfC, R, force=args.force)
        out.line(f"glued TTF-triple {triple.describe(L)}")
        out.set(ttf=[L.order(s) for s in (triple.x, triple.y, triple.z)])
    return code


def cmd_restrict(cfg, args, out):
    R = _instance(cfg)
    A, L = R.base_atoms, R.lambda_atoms
    tpB = tt.validated_pair(L, *_pair_arg(args, L).names(L))
    ra = gl.restrict_to_A(tpB, R)
    rc = gl.restrict_to_C(tpB, R)
    out.line(f"pair   {tpB.describe(L)}")
    out.line(f"(i^*(X), i^!(Y)) = {ra.describe(A)}  torsion pair: true")
    out.line(f"(j^*(X), j^*(Y)) = {rc.candidate.describe(A)}  torsion pair: {rc.is_pair}")
    out.line(f"j_*j^*(Y) in Y: {str(rc.condition).lower()}" + (f"  ({rc.witness})" if rc.witness else ""))
    out.set(a=_pair_json(ra, A), c=_pair_json(rc.candidate, A), condition=rc.condition,
            c_is_pair=bool(rc.is_pair), witness=rc.witness)
    return EXIT_TRUE if rc.condition else EXIT_FALSE


def cmd_verify(cfg, args, out):
    R = io.load_instance(cfg.instance or "t2_kA2", cfg.prime, strict=not args.no_certificate)
    rep = R.verify_recollement_axioms()
    out.line(rep.title)
    for l in rep.lines():
        out.line(f"  {l}")
    out.line(f"verdict: {'true' if rep.ok else 'false'}")
    out.set(checks=[{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks], ok=rep.ok)
    return EXIT_TRUE if rep.ok else EXIT_FALSE


def cmd_probe(cfg, args, out):
    R = _instance(cfg)
    fids = [args.functor] if args.functor else list(FUNCTORS)
    code = EXIT_TRUE
    results = {}
    for fid in fids:
        c = R.probe_exactness(fid, cfg.trials, cfg.seed)
        if c is None:
            out.line(f"{display(fid)}: no counterexample in {cfg.trials} trials (seed {cfg.seed})")
            results[fid] = None
        else:
            out.line(f"{display(fid)}: counterexample at trial {c.trial}: {c}")
            results[fid] = {"trial": c.trial, "sequence": c.sequence, "position": c.position}
            code = EXIT_FALSE
    out.set(trials=cfg.trials, seed=cfg.seed, counterexamples=results)
    return code


def cmd_closure_equivalences(cfg, args, out):
    R = _instance(cfg)
    L = R.lambda_atoms
    tpB = tt.validated_pair(L, *_pair_arg(args, L).names(L))
    rep = gl.closure_equivalences(tpB, R)
    out.line(f"pair {tpB.describe(L)}")
    for l in rep.lines():
        out.line(f"  {l}")
    out.set(containments=rep.data["containments"], ok=rep.ok)
    return EXIT_TRUE if rep.ok else EXIT_FALSE


def cmd_roundtrip(cfg, args, out):
    R = _instance(cfg)
    A, L = R.base_atoms, R.lambda_atoms
    pairs = tt.enumerate_torsion_pairs(A)
    ok = True
    rows = []
    for tpA in pairs:
        for tpC in pairs:
            rep = gl.roundtrip_check(tpA, tpC, R)
            ok &= rep.ok
            rows.append({"a": _pair_json(tpA, A), "c": _pair_json(tpC, A), "ok": rep.ok})
            if not rep.ok:
                out.line(f"FAIL {tpA.describe(A)} x {tpC.describe(A)}: "
                         + "; ".join(c.name for c in rep.failures()))
    out.line(f"restrict(glue) = identity on {len(rows)} combinations: {'true' if ok else 'false'}")
    rebuilt_ok, checked = True, 0
    for tpB in tt.enumerate_torsion_pairs(L):
        if gl.restrict_to_C(tpB, R).condition:
            checked += 1
            rebuilt_ok &= gl.reconstruct(tpB, R) == tpB
    out.line(f"reconstruction from restrictions on {checked} condition-satisfying pairs: "
             f"{'true' if rebuilt_ok else 'false'}")
    out.set(combinations=rows, roundtrip=ok, reconstruction=rebuilt_ok, reconstruction_checked=checked)
    return EXIT_TRUE if ok and rebuilt_ok else EXIT_FALSE


def worked_example_report(prime=None) -> tuple:
    """Run the worked-example scenario; returns (text lines, list of failed golden checks)."""
    scen = io.read_json(io.resolve("worked_example.json", base=io.data_dir() / "pairs"))
    R = io.load_instance(scen["instance"], prime)
    A, L = R.base_atoms, R.lambda_atoms
    lines, failed = [], []

    def golden(label, ok):
        lines.append(f"{'ok  ' if ok else 'FAIL'} {label}")
        if not ok:
            failed.append(label)

    lines.append(f"instance {R.name}: {len(L)} Lambda-atoms")
    lines.append("  " + ", ".join(L.names))
    golden("atom inventory matches the AR quiver", list(L.names) == scen["atoms"] and L.certified)
    for key in ("glue_first", "glue_second"):
        g = scen[key]
        tpA, tpC = pair_from_json(g["a"]), pair_from_json(g["c"])
        glued = gl.glue(tpA, tpC, R)
        lines.append(f"glue {tpA.describe(A)} with {tpC.describe(A)}")
        lines.append(f"  = {glued.describe(L)}")
        golden(f"{key} equals the expected pair", glued == pair_from_json(g["expected"]))
    r = scen["restrict"]
    tpB = pair_from_json(r["pair"])
    golden("restriction input is a torsion pair", bool(tt.is_torsion_pair(L, tpB.torsion, tpB.torsionfree)))
    ra = gl.restrict_to_A(tpB, R)
    rc = gl.restrict_to_C(tpB, R)
    lines.append(f"restrict {tpB.describe(L)}")
    lines.append(f"  (i^*(X), i^!(Y)) = {ra.describe(A)}")
    lines.append(f"  (j^*(X), j^*(Y)) = {rc.candidate.describe(A)}")
    lines.append(f"  j_*j^*(Y) in Y: {str(rc.condition).lower()} ({rc.witness})")
    golden("(i^*(X), i^!(Y)) equals the expected pair", ra == pair_from_json(r["expected_a"]))
    golden("(j^*(X), j^*(Y)) equals the expected candidate", rc.candidate == pair_from_json(r["expected_c"]))
    golden("condition j_*j^*(Y) in Y fails", rc.condition is r["condition"])
    golden("candidate is not a torsion pair", bool(rc.is_pair) is r["condition"])
    return lines, failed


def cmd_worked_example(cfg, args, out):
    lines, failed = worked_example_report(cfg.prime)
    expected_path = io.data_dir() / "expected" / "worked_example.txt"
    code = EXIT_TRUE
    if expected_path.is_file():
        expected = expected_path.read_text(encoding="utf-8").splitlines()
        if expected != lines:
            failed.append("output differs from shipped expected output")
            lines += list(difflib.unified_diff(expected, lines, "expected", "actual", lineterm=""))
    else:
        failed.append(f"missing {expected_path}")
    for l in lines:
        out.line(l)
    if failed:
        out.line(f"GOLDEN CHECKS FAILED: {len(failed)}")
        code = EXIT_FALSE
    else:
        out.line("ALL GOLDEN CHECKS PASS")
    out.set(lines=lines, failed=failed, ok=not failed)
    return code


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="kA2", help="algebra name or file (default: kA2)")
    common.add_argument("--instance", help="recollement instance name or file")
    common.add_argument("--prime", type=int, help="override the field characteristic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-subobjects", type=int, default=reps.DEFAULT_SUBOBJECT_BUDGET)
    common.add_argument("--trials", type=int, default=1000)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="recollement", description="Torsion pairs in recollements of module categories.")
    sub = ap.add_subparsers(dest="command", required=True)

    def pair_opts(p, prefix="", label=""):
        dash = prefix.replace("_", "-")
        p.add_argument(f"--{dash}x", help=f"{label}torsion class, comma-separated atom names")
        p.add_argument(f"--{dash}y", help=f"{label}torsion-free class, comma-separated atom names")
        p.add_argument(f"--{dash}pair", help=f"{label}pair file")

    sub.add_parser("atoms", parents=[common], help="list atoms and their Hom table").set_defaults(fn=cmd_atoms)

    p = sub.add_parser("hom", parents=[common], help="basis of Hom between sums of atoms")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.set_defaults(fn=cmd_hom)

    p = sub.add_parser("decompose", parents=[common], help="decompose an object into atoms")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--object", help="'+'-separated atom names")
    g.add_argument("--file", help="representation JSON file")
    p.add_argument("--functor", choices=sorted(FUNCTORS), help="apply a recollement functor first")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("enumerate", parents=[common], help="all torsion pairs")
    p.add_argument("--bound", type=int, default=tt.DEFAULT_ENUMERATION_BOUND)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("check-pair", parents=[common], help="is (X, Y) a torsion pair")
    pair_opts(p)
    p.set_defaults(fn=cmd_check_pair)

    p = sub.add_parser("predicates", parents=[common], help="hereditary / cohereditary / tilting / cotilting")
    pair_opts(p)
    p.set_defaults(fn=cmd_predicates)

    p = sub.add_parser("glue", parents=[common], help="glue pairs from mod A and mod C")
    pair_opts(p, "a_", "A-side ")
    pair_opts(p, "c_", "C-side ")
    p.add_argument("--closure", action="store_true", help="check the closure clauses")
    p.add_argument("--ttf", nargs=6, metavar="CLASS",
                   help="glue TTF-triples: X' Y' Z' X'' Y'' Z'' (comma-separated names, '' for empty)")
    p.add_argument("--force", action="store_true", help="diagnostics: ignore exactness hypotheses")
    p.set_defaults(fn=cmd_glue)

    p = sub.add_parser("restrict", parents=[common], help="restrict a pair of mod Lambda to mod A and mod C")
    pair_opts(p)
    p.set_defaults(fn=cmd_restrict)

    p = sub.add_parser("verify-recollement", parents=[common], help="check the recollement axioms")
    p.add_argument("--no-certificate", action="store_true", help="load atom lists with a singular fingerprint matrix")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("probe", parents=[common], help="random exactness probes")
    p.add_argument("--functor", choices=sorted(FUNCTORS))
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("lemma34", parents=[common], help="closure equivalences for a pair of mod Lambda")
    pair_opts(p)
    p.set_defaults(fn=cmd_closure_equivalences)

    sub.add_parser("roundtrip", parents=[common], help="restrict(glue) over all pairs of mod A").set_defaults(fn=cmd_roundtrip)
    sub.add_parser("example-3-6", parents=[common], help="run the worked example and diff against golden output").set_defaults(fn=cmd_worked_example)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = Output(args.json)
    try:
        cfg = WorkspaceConfig(args.prime, args.budget_subobjects, args.trials, args.seed, args.algebra, args.instance)
        code = args.fn(cfg, args, out)
    except BudgetExceeded as e:
        out.line(f"undetermined: {e}")
        out.set(error=str(e), verdict="undetermined")
        out.emit()
        return EXIT_UNDETERMINED
    except PreconditionError as e:
        out.line(f"precondition failed: {e}")
        out.set(error=str(e), functor=e.functor)
        out.emit()
        return EXIT_INPUT
    except (InputError, RecollementError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
