import io
import json

import pytest

from qgeo.cli import main
from qgeo.reports import CheckReport, export_report
from qgeo.suite import CHECKS, UnknownCheck, exit_code, resolve, run_suite, target_names


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


# -- suite --------------------------------------------------------------------------------


def test_planck_hopf_axioms_pass():
    reps = run_suite("planck1d", ["hopf-axioms"], 4)
    assert reps and all(r.ok for r in reps) and exit_code(reps) == 0


def test_qplane_flip_fails_on_yx():
    reps = run_suite("qplane_flip", ["braided-hopf"], 2)
    bad = [v for r in reps for v in r.violations]
    assert exit_code(reps) == 1 and any("y.x" in v.label for v in bad)


def test_identity_r_passes_ybe():
    reps = run_suite("rmatrix_identity", ["ybe"])
    assert [r.status for r in reps] == ["pass"]


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_suite("planck1d", ["no-such-check"])


def test_inapplicable_check_is_skipped():
    reps = run_suite("C2", ["flow"])
    assert [r.status for r in reps] == ["skipped"] and exit_code(reps) == 0


def test_targets_listed():
    names = target_names()
    assert {"planck1d", "S3", "rmatrix_sl2"} <= set(names)
    assert set(CHECKS) >= {"confluence", "ybe", "hopf-axioms", "braided-hopf", "dqua", "flow", "regime"}


def test_json_target_file(tmp_path):
    f = tmp_path / "c3.json"
    f.write_text(json.dumps({"perm_gens": [["(1 2 3)"]]}))
    (t,) = resolve(str(f))
    assert t.group.order == 3


# -- export -------------------------------------------------------------------------------


def test_export_empty():
    assert export_report([], "json") == b"[]"


def test_export_pass_object():
    (d,) = json.loads(export_report([CheckReport("m", "c", 2)], "json"))
    assert d["status"] == "pass" and d["violations"] == [] and d["degree_bound"] == 2


def test_export_failing_residual():
    reps = run_suite("qplane_flip", ["braided-hopf"], 2)
    data = json.loads(export_report(reps, "json"))
    bad = [v for d in data for v in d["violations"]]
    assert any(v["residual"] == "(-q + 1) * x|y + (-q + 1) * y|x" for v in bad)


def test_export_is_deterministic():
    a = export_report(run_suite("S3", ["all"]), "json", with_time=False)
    b = export_report(run_suite("S3", ["all"]), "json", with_time=False)
    assert a == b


def test_export_text_and_bad_format():
    assert export_report([], "text") == b""
    assert b"[PASS] m :: c" in export_report([CheckReport("m", "c")], "text")
    with pytest.raises(ValueError):
        export_report([], "xml")


# -- command line -------------------------------------------------------------------------


def test_cli_check_exit_codes():
    assert run("check", "rmatrix_sl2", "--suite", "ybe")[0] == 0
    code, out = run("check", "qplane_flip", "--suite", "braided-hopf", "--degree", "2", "--format", "json")
    assert code == 1 and json.loads(out)
    assert run("check", "nope")[0] == 2
    assert run("check", "planck1d", "--suite", "nope")[0] == 2
    assert run("bogus-command")[0] == 2


def test_cli_check_dsl_file(tmp_path):
    f = tmp_path / "bad.dsl"
    f.write_text("algebra a {\n  gens x;\n  rule x.x -> ;\n}\n")
    assert run("check", str(f))[0] == 2
    good = tmp_path / "plane.dsl"
    good.write_text("params q;\nalgebra p {\n  gens x, y;\n  rule y.x -> q * x.y;\n}\n")
    code, out = run("check", str(good), "--suite", "confluence")
    assert code == 0 and "PASS" in out


def test_cli_nf_and_commutator():
    assert run("nf", "qplane", "y.x") == (0, "q * x.y\n")
    code, out = run("commutator", "bicso3", "e1", "e2")
    assert (code, out) == (0, "i*hbar * e3\n")
    assert run("nf", "qplane", "y.z")[0] == 2


def test_cli_fourier_and_factorise():
    code, out = run("fourier", "C2", "1,0")
    assert code == 0 and json.loads(out) == {"e": "1"}
    code, out = run("fourier", "S3", '{"(1 2 3)": "q", "()": "1/2"}')
    assert code == 0 and json.loads(out) == {"()": "1/2", "(1 2 3)": "q"}
    code, out = run("factorise", "S3")
    rows = json.loads(out)
    assert code == 0 and len(rows) == len({json.dumps(r, sort_keys=True) for r in rows})
    assert run("fourier", "C2", "1,2,3")[0] == 2


def test_cli_regime():
    code, out = run("regime", "--m", "4", "--M", "4", "--hbar", "1", "--G", "1", "--format", "json")
    (d,) = json.loads(out)
    assert code == 0 and "regime: gravitational" in d["notes"]


def test_cli_list():
    code, out = run("list")
    assert code == 0 and "planck1d" in out.split()
