"""Named check suites over models, DSL documents, groups and R-matrices."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from . import models
from .braided import RMatrix, braided_hopf_check, dqua_check, ybe_check, ybe_residual
from .dsl import parse
from .finhopf import FinHopf, check_pairing_duality, dual_findim, find_isomorphism, hopf_axiom_reports, same_structure
from .freealg import Element, overlap_confluence
from .groups import (
    Bicrossproduct,
    FinGroup,
    bicrossproduct,
    builtin_groups,
    extension_reports,
    fourier_report,
    function_hopf,
    group_from_json,
    group_hopf,
)
from .hopf import HopfSpec, hopf_axioms
from .reports import CheckReport, timed
from .scalars import ONE

CHECKS = ("hopf-axioms", "braided-hopf", "confluence", "ybe", "dqua", "duality", "fourier", "flow", "regime")
DEFAULT_DEGREES = {"hopf-axioms": 4, "braided-hopf": 3, "dqua": 2, "confluence": 3}


class UnknownCheck(KeyError):
    pass


@dataclass
class Target:
    name: str
    kind: str  # hopf | braided | frt | rmatrix | group | finhopf | bicross
    hopf: Optional[HopfSpec] = None
    bichar: object = None
    R: Optional[RMatrix] = None
    group: Optional[FinGroup] = None
    fin: Optional[FinHopf] = None
    bicross: Optional[Bicrossproduct] = None
    degrees: dict = field(default_factory=dict)
    listed: list = field(default_factory=list)  # (check, degree) from a DSL file

    @property
    def P(self):
        return self.hopf.P if self.hopf is not None else None

    @property
    def is_planck(self):
        P = self.P
        return P is not None and {"x", "p", "lam"} <= set(P.gens) and P.params is not None and "m" in P.params

    def applicable(self):
        out = []
        if self.kind == "hopf":
            out.append("hopf-axioms")
        if self.kind == "braided":
            out.append("braided-hopf")
        if self.P is not None:
            out.append("confluence")
        if self.R is not None:
            out.append("ybe")
        if self.bichar is not None:
            out.append("dqua")
        if self.kind in ("group", "finhopf", "bicross"):
            out += ["hopf-axioms", "duality"]
        if self.kind == "group":
            out.append("fourier")
        if self.is_planck:
            out += ["flow", "regime"]
        return [c for c in CHECKS if c in out]

    def degree(self, check):
        return self.degrees.get(check, DEFAULT_DEGREES.get(check))


# -- target resolution -------------------------------------------------------------------------

_MODEL_DEGREES = {
    "planck1d": {"hopf-axioms": 4, "confluence": 4},
    "bicso3": {"hopf-axioms": 3, "confluence": 3},
    "qplane": {"braided-hopf": 3},
    "qplane_flip": {"braided-hopf": 2},
    "frt_sl2": {"dqua": 2, "hopf-axioms": 2},
    "braided_matrices_sl2": {"braided-hopf": 2},
}

_RMATRICES = {
    "rmatrix_sl2": RMatrix.standard_sl2,
    "rmatrix_identity": RMatrix.identity,
    "rmatrix_flip": RMatrix.flip,
}


def target_names():
    return sorted(set(models.model_registry()) | set(_RMATRICES) | set(builtin_groups()))


def _from_object(name, obj):
    deg = dict(_MODEL_DEGREES.get(name, {}))
    if isinstance(obj, HopfSpec):
        kind = "braided" if obj.is_braided else "hopf"
        R = RMatrix.standard_sl2() if name == "braided_matrices_sl2" else None
        return Target(name, kind, hopf=obj, R=R, degrees=deg)
    if isinstance(obj, models.FRTBialgebra):
        return Target(name, "hopf", hopf=obj.hopf, bichar=obj.bichar, R=obj.R, degrees=deg)
    if isinstance(obj, Bicrossproduct):
        return Target(name, "bicross", bicross=obj, fin=obj.hopf)
    if isinstance(obj, FinHopf):
        return Target(name, "finhopf", fin=obj)
    raise TypeError(f"cannot check {type(obj).__name__}")


def resolve(spec):
    """Targets for a registry name, group name, R-matrix name, .dsl file or JSON file."""
    if spec.endswith(".dsl") or (os.path.exists(spec) and not spec.endswith(".json")):
        with open(spec, encoding="utf-8") as fh:
            return targets_from_document(parse(fh.read()))
    if spec.endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            data = json.load(fh)
        if isinstance(data, list):
            return [Target(os.path.basename(spec), "rmatrix", R=RMatrix.from_json(data, name=os.path.basename(spec)))]
        G = group_from_json(data, name=os.path.basename(spec))
        return [Target(G.name, "group", group=G)]
    if spec in _RMATRICES:
        return [Target(spec, "rmatrix", R=_RMATRICES[spec]())]
    groups = builtin_groups()
    if spec in groups:
        return [Target(spec, "group", group=groups[spec])]
    return [_from_object(spec, models.lookup(spec))]


def targets_from_document(doc):
    out = []
    for name in doc.algebras:
        listed = [(c, d) for m, c, d in doc.checks if m == name]
        degrees = {c: d for c, d in listed if d is not None}
        if name not in doc.coproducts:
            H = HopfSpec(doc.presentation(name), {g: Element.zero() for g in doc.algebras[name].gens},
                         {g: 0 for g in doc.algebras[name].gens}, name=name)
            out.append(Target(name, "presentation", hopf=H, degrees=degrees, listed=listed))
            continue
        H = doc.hopf(name)
        bichar = doc.bicharacter(name) if name in doc.bicharacters else None
        kind = "braided" if H.is_braided else "hopf"
        out.append(Target(name, kind, hopf=H, bichar=bichar, degrees=degrees, listed=listed))
    return out


# -- individual checks -------------------------------------------------------------------------


def _confluence(t: Target, degree):
    P = t.P
    d = max(degree or 0, P.max_rule_degree())
    rep = CheckReport(t.name, "confluence", d)
    with timed(rep):
        res = overlap_confluence(P, d)
        rep.notes.append(f"{len(res.pairs)} critical pairs")
        for cp in res.violations:
            rep.fail(cp.kind, ".".join(map(str, cp.word)), P.format(cp.residual))
    return [rep]


def _ybe(t: Target, degree):
    rep = CheckReport(t.name, "ybe")
    with timed(rep):
        if not ybe_check(t.R):
            for idx, c in sorted(ybe_residual(t.R).items())[:20]:
                rep.fail("entry", idx, c)
            if not rep.violations:
                rep.fail("entry", "?", "R12 R13 R23 != R23 R13 R12")
    return [rep]


def _hopf_axioms(t: Target, degree):
    if t.kind == "hopf":
        reps = hopf_axioms(t.hopf, degree)
    elif t.kind == "group":
        reps = hopf_axiom_reports(function_hopf(t.group)) + hopf_axiom_reports(group_hopf(t.group))
    elif t.kind == "bicross":
        reps = hopf_axiom_reports(t.fin) + extension_reports(t.bicross)
    else:
        reps = hopf_axiom_reports(t.fin)
    for r in reps:
        r.model = t.name if t.kind != "group" else r.model
        if t.kind in ("hopf",):
            r.degree_bound = degree
    return reps


def _braided(t: Target, degree):
    reps = braided_hopf_check(t.hopf, degree)
    for r in reps:
        r.check = f"braided-hopf/{r.check}"
    return reps


def _dqua(t: Target, degree):
    return [dqua_check(t.P, t.bichar, degree, name=t.name)]


def isomorphism_report(A: FinHopf, B: FinHopf, model, check="duality", label=None):
    rep = CheckReport(model, check)
    with timed(rep):
        perm = find_isomorphism(A, B)
        if perm is None:
            rep.fail("isomorphism", label or f"{A.name} ~ {B.name}", "no basis relabelling matches")
        else:
            rep.notes.append(f"{A.name} ~ {B.name}: " + ", ".join(f"{A.labels[i]}->{B.labels[j]}" for i, j in enumerate(perm)))
    return rep


def _duality(t: Target, degree):
    reps = []
    fins = [function_hopf(t.group), group_hopf(t.group)] if t.kind == "group" else [t.fin]
    for H in fins:
        D = dual_findim(H)
        r = CheckReport(H.name, "duality/involution")
        with timed(r):
            if not same_structure(dual_findim(D), H):
                r.fail("structure", H.name, "double dual differs")
        reps.append(r)
        reps.append(check_pairing_duality(H, D, CheckReport(H.name, "duality/pairing")))
    if t.kind == "group":
        reps.append(isomorphism_report(dual_findim(fins[1]), fins[0], t.name, "duality/group-vs-functions"))
    if t.kind == "bicross":
        swapped = bicrossproduct(t.bicross.mp.swapped())
        reps.append(isomorphism_report(dual_findim(t.fin), swapped.hopf, t.name, "duality/swapped-bicrossproduct"))
    return reps


def _fourier(t: Target, degree):
    return [fourier_report(t.group)]


def _flow(t: Target, degree):
    M = t.hopf
    P = M.P
    rep = CheckReport(t.name, "flow")
    x, p, lam = Element.gen("x"), Element.gen("p"), Element.gen("lam")
    one = Element.one()
    with timed(rep):
        H = models.free_fall_hamiltonian()
        f = models.heisenberg_flow(M, H, x)
        half = ONE / (2 * models.MASS)
        expect_q = P.normal_form((p * (one - lam) + (one - lam) * p).scale(half))
        expect_c = P.normal_form((p - lam * p).scale(ONE / models.MASS))
        if f.quantum != expect_q:
            rep.fail("word", "quantum xdot", P.format(f.quantum - expect_q))
        if f.classical != expect_c:
            rep.fail("word", "classical xdot", P.format(f.classical - expect_c))
        rep.notes.append(f"xdot = {P.format(f.quantum)}")
        rep.notes.append(f"classical: {P.format(f.classical)}")
        words = [w for w in P.normal_words(2) if w]
        for Hw in (H, p):
            for a in words:
                for b in words:
                    ea, eb = Element.word(a), Element.word(b)
                    lhs = models.heisenberg_flow(M, Hw, P.mul(ea, eb)).quantum
                    fa = models.heisenberg_flow(M, Hw, ea).quantum
                    fb = models.heisenberg_flow(M, Hw, eb).quantum
                    res = lhs - P.mul(fa, eb) - P.mul(ea, fb)
                    if res:
                        rep.fail("pair", f"({'.'.join(a)}, {'.'.join(b)})", P.format(res))
    return [rep]


REGIME_CASES = [((4, 4, 1, 1), "gravitational"), ((1, 1, 100, 1), "quantum"), ((2, 3, 6, 1), "boundary")]


def _regime(t: Target, degree):
    rep = CheckReport(t.name, "regime")
    with timed(rep):
        for args, want in REGIME_CASES:
            got = models.regime_report(*args)
            rep.notes.append(f"m, M, hbar, G = {args}: mM = {got.mM}, m_P^2 = {got.planck_mass_sq}, {got.regime}")
            if got.regime != want:
                rep.fail("case", args, f"{got.regime} != {want}")
        rep.notes.append(models.BLACK_HOLE_NOTE)
    return [rep]


_RUNNERS = {
    "hopf-axioms": _hopf_axioms,
    "braided-hopf": _braided,
    "confluence": _confluence,
    "ybe": _ybe,
    "dqua": _dqua,
    "duality": _duality,
    "fourier": _fourier,
    "flow": _flow,
    "regime": _regime,
}


def run_suite(target, checks=("all",), degree=None):
    """Run named checks; ``target`` is a Target, a list of Targets or a name/path."""
    if isinstance(target, str):
        targets = resolve(target)
    elif isinstance(target, Target):
        targets = [target]
    else:
        targets = list(target)
    if isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]
    for c in checks:
        if c != "all" and c not in _RUNNERS:
            raise UnknownCheck(c)
    reports = []
    for t in targets:
        if list(checks) == ["all"]:
            wanted = [c for c, _ in t.listed] if t.listed else t.applicable()
        else:
            wanted = list(checks)
        for c in wanted:
            if c == "all":
                continue
            if c not in t.applicable():
                r = CheckReport(t.name, c, skipped=True)
                r.notes.append(f"not applicable to a {t.kind} target")
                reports.append(r)
                continue
            d = degree if degree is not None else t.degree(c)
            reports.extend(_RUNNERS[c](t, d))
    return reports


def exit_code(reports):
    return 1 if any(not r.ok for r in reports) else 0
