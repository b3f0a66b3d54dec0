"""Command-line jobs, report schema and determinism."""

import json
import subprocess
import sys

import jsonschema
import pytest

from arcsections.cli import JobError, JobSpec, main, run, strip_timings, validate_report

from conftest import EX71, FOUR_LINES, SUSPENSION


def job(**kw):
    return JobSpec.from_dict(kw)


@pytest.fixture(scope="module")
def ex71_report():
    return run(job(surface=EX71, projection="z", tasks=["analyze"]))


def test_ex71_job(ex71_report):
    report, code = ex71_report
    assert code == 0
    validate_report(report)
    assert report["verdict"]["exists_irreducible"] == "no"
    assert report["discriminant"]["polynomial"] == "-y^6 + x^4"
    types = sorted(tuple(c["cycle_types"][1]) for c in report["verdict"]["crossings"])
    assert types == sorted([(2, 2), (2, 1, 1), (2, 1, 1), (3, 1)])
    assert any(c["P1"] == "()" and c["P2"] == "(1,4)(2,3)" for c in report["verdict"]["crossings"])
    assert len(report["resolution"]["charts"]) == 7


def test_section_job():
    report, code = run(job(surface=FOUR_LINES, projection="z", tasks=["section"], arc=["t-t^3", "t+t^3"]))
    assert code == 0
    validate_report(report)
    assert report["tasks"]["section"]["section"]["branch_count"] == 3


def test_generic_job():
    report, code = run(job(surface=SUSPENSION, projection="z", tasks=["generic"]))
    assert code == 0
    validate_report(report)
    g = report["tasks"]["generic"]
    assert g["permutation"] == "(1,2)" and g["transitive"]
    assert g["section"]["irreducible"]


def test_all_tasks_validate():
    report, code = run(job(surface=EX71, projection=[0, 0, 1], seed=3, braids=True,
                           tasks=["analyze", "tangent-cone", "generic", "reduce-witness",
                                  "cone-discriminant", "screen-branches"]))
    assert code == 0
    validate_report(report)
    assert all("braids" in c for c in report["verdict"]["crossings"])


def test_report_roundtrip_is_deterministic(ex71_report):
    report, _ = ex71_report
    again, _ = run(JobSpec.from_dict(report["job"]))
    assert strip_timings(again) == strip_timings(report)


def test_invalid_surface_exit_code():
    report, code = run(job(surface="z^2 + w", tasks=["analyze"]))
    assert code == 2
    assert report["errors"][0]["stage"] == "input"
    validate_report(report)


def test_projection_not_finite_exit_code():
    _, code = run(job(surface="x*z+y^2", tasks=["analyze"]))
    assert code == 2


def test_arc_off_origin_is_invalid_input():
    report, code = run(job(surface=SUSPENSION, tasks=["section"], arc=["1+t", "t"]))
    assert code == 2
    assert report["errors"][0]["stage"] == "section"
    validate_report(report)


@pytest.mark.parametrize("data", [
    {"surface": EX71, "tasks": []},
    {"surface": EX71, "tasks": ["bogus"]},
    {"surface": EX71, "tasks": ["section"]},
    {"surface": EX71, "tasks": ["analyze"], "arc": ["t", "t"]},
    {"tasks": ["analyze"]},
])
def test_jobspec_validation(data):
    with pytest.raises(JobError):
        JobSpec.from_dict(data)


def test_uncertified_exit_code():
    # too small a step cap cannot certify any loop
    report, code = run(job(surface=EX71, tasks=["generic"], precision={"step_cap": 16}))
    assert code == 3
    assert report["errors"]


def test_schema_rejects_bad_verdict(ex71_report):
    report, _ = ex71_report
    bad = json.loads(json.dumps(report))
    bad["verdict"]["exists_irreducible"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(bad)


def test_main_writes_files(tmp_path):
    jf = tmp_path / "job.json"
    jf.write_text(json.dumps({"surface": EX71, "tasks": ["analyze"]}))
    out = tmp_path / "report.json"
    svg = tmp_path / "svg"
    code = main(["--in", str(jf), "--out", str(out), "--svg", str(svg), "--seed", "2", "--no-prune"])
    assert code == 0
    report = json.loads(out.read_text())
    validate_report(report)
    assert report["job"]["seed"] == 2 and report["job"]["prune"] is False
    assert (svg / "dual_graph.svg").read_text().startswith("<svg")
    assert len(list(svg.glob("X*_B*.svg"))) == 8


def test_console_entry_point_stdin():
    proc = subprocess.run([sys.executable, "-m", "arcsections.cli"], input=json.dumps(
        {"surface": SUSPENSION, "tasks": ["section"], "arc": ["t^3", "t^2"]}),
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["tasks"]["section"]["section"]["branch_count"] == 2


def test_bad_json_exit_code(tmp_path):
    jf = tmp_path / "job.json"
    jf.write_text("{not json")
    assert main(["--in", str(jf), "--out", str(tmp_path / "r.json")]) == 2
