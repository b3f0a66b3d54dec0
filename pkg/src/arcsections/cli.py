"""Command-line front end: read a job, run the requested tasks, write a JSON report.

Exit codes: 0 when every task completed (whatever the verdict), 2 on invalid
input, 3 when some certification failed and the verdict is unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .decide import (
    Arc,
    ArcMeetsDiscriminant,
    ProjectionError,
    WitnessValidationError,
    analyze,
    arc_section,
    cone_discriminant_check,
    generic_report,
    screen_discriminant_branches,
    setup_projection,
    straight_arc,
    tangent_cone_screen,
    totally_reducible_arc,
)
from .germ import GermError
from .monodromy.tracking import KERNEL, MAX_STEPS, TrackingError, tracking_settings
from .polyarith import ParseError, parse_poly, squarefree_decomposition
from .resolve import DEFAULT_DEPTH_CAP, ResolutionError, resolve_embedded

TASKS = ("analyze", "tangent-cone", "generic", "section", "reduce-witness",
         "cone-discriminant", "screen-branches")
EXIT_OK, EXIT_INVALID, EXIT_UNCERTIFIED = 0, 2, 3


class JobError(ValueError):
    pass


@dataclass
class JobSpec:
    surface: str
    projection: str | list = "z"
    tasks: list[str] = field(default_factory=lambda: ["analyze"])
    arc: list[str] | None = None
    working_digits: int = 30
    step_cap: int = MAX_STEPS
    depth_cap: int = DEFAULT_DEPTH_CAP
    seed: int = 0
    prune: bool = True
    braids: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "JobSpec":
        if not isinstance(data, dict):
            raise JobError("a job must be a JSON object")
        if "surface" not in data:
            raise JobError("missing field 'surface'")
        prec = data.get("precision") or {}
        tasks = data.get("tasks", ["analyze"])
        if isinstance(tasks, str):
            tasks = [tasks]
        job = cls(
            surface=str(data["surface"]),
            projection=data.get("projection", "z"),
            tasks=list(tasks),
            arc=list(data["arc"]) if data.get("arc") is not None else None,
            working_digits=int(prec.get("working_digits", 30)),
            step_cap=int(prec.get("step_cap", MAX_STEPS)),
            depth_cap=int(prec.get("depth_cap", DEFAULT_DEPTH_CAP)),
            seed=int(data.get("seed", 0)),
            prune=bool(data.get("prune", True)),
            braids=bool(data.get("braids", False)),
        )
        job.validate()
        return job

    def validate(self) -> None:
        if not self.tasks:
            raise JobError("no tasks requested")
        bad = [t for t in self.tasks if t not in TASKS]
        if bad:
            raise JobError(f"unknown task(s) {bad}; expected a subset of {list(TASKS)}")
        if ("section" in self.tasks) != (self.arc is not None):
            raise JobError("an arc is required exactly when the 'section' task is requested")
        if self.arc is not None and len(self.arc) != 2:
            raise JobError("the arc must be a pair of expressions in t")
        if self.working_digits < 15 or self.step_cap < 16 or self.depth_cap < 1:
            raise JobError("precision settings out of range")

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "projection": self.projection,
            "tasks": list(self.tasks),
            "arc": list(self.arc) if self.arc is not None else None,
            "precision": {"working_digits": self.working_digits, "step_cap": self.step_cap,
                          "depth_cap": self.depth_cap},
            "seed": self.seed,
            "prune": self.prune,
            "braids": self.braids,
        }


def _discriminant_dict(setup) -> dict:
    delta = setup.delta
    pieces = squarefree_decomposition(delta, "y") if delta.degree("y") > 0 else []
    return {
        "polynomial": delta.to_str(),
        "unit": str(setup.delta_unit),
        "squarefree_pieces": [{"factor": f.to_str(), "multiplicity": k} for f, k in pieces],
    }


def _section_task(setup, job: JobSpec) -> dict:
    x = parse_poly(job.arc[0], ("t",))
    y = parse_poly(job.arc[1], ("t",))
    arc = Arc.exact(x, y, "user", "t")
    return {"arc": arc.to_dict(), "section": arc_section(setup, arc).to_dict()}


def _generic_task(setup, job: JobSpec) -> dict:
    rep = generic_report(setup, None, job.seed)
    sec = arc_section(setup, straight_arc(rep.direction), with_branches=False)
    out = rep.to_dict()
    out["section"] = sec.to_dict()
    return out


def _reduce_task(setup, job: JobSpec) -> dict:
    arc, sec = totally_reducible_arc(setup, job.seed)
    return {"arc": arc.to_dict(), "section": sec.to_dict()}


def run(job: JobSpec, svg_dir: str | Path | None = None) -> tuple[dict, int]:
    """Run ``job``; returns the report and the exit code."""
    report: dict = {"version": __version__, "job": job.to_dict(), "kernel": KERNEL,
                    "setup": None, "discriminant": None, "tasks": {}, "resolution": None,
                    "verdict": None, "errors": [], "timings": {}}
    errors = report["errors"]
    try:
        F = parse_poly(job.surface, ("x", "y", "z"))
        setup = setup_projection(F, job.projection)
    except (ParseError, ProjectionError, ValueError) as exc:
        errors.append({"stage": "input", "message": str(exc)})
        return report, EXIT_INVALID
    report["setup"] = setup.to_dict()
    code = EXIT_OK
    with tracking_settings(job.working_digits, job.step_cap):
        t0 = time.perf_counter()
        try:
            report["discriminant"] = _discriminant_dict(setup)
        except ProjectionError as exc:
            errors.append({"stage": "discriminant", "message": str(exc)})
            return report, EXIT_INVALID
        report["timings"]["discriminant"] = time.perf_counter() - t0
        tree = None
        for task in job.tasks:
            t0 = time.perf_counter()
            try:
                if task == "analyze":
                    verdict = analyze(setup, job.seed, prune=job.prune, braids=job.braids,
                                      depth_cap=job.depth_cap)
                    report["verdict"] = verdict.to_dict()
                    report["tasks"]["analyze"] = {"exists_irreducible": verdict.exists_irreducible}
                    tree = verdict.tree
                    errors.extend(verdict.errors)
                    if verdict.exists_irreducible == "unknown":
                        code = EXIT_UNCERTIFIED
                elif task == "tangent-cone":
                    report["tasks"][task] = tangent_cone_screen(setup.F).to_dict()
                    if not report["tasks"][task]["certified"]:
                        code = EXIT_UNCERTIFIED
                elif task == "generic":
                    report["tasks"][task] = _generic_task(setup, job)
                elif task == "section":
                    report["tasks"][task] = _section_task(setup, job)
                elif task == "reduce-witness":
                    report["tasks"][task] = _reduce_task(setup, job)
                elif task == "cone-discriminant":
                    report["tasks"][task] = cone_discriminant_check(setup).to_dict()
                elif task == "screen-branches":
                    report["tasks"][task] = [b.to_dict() for b in screen_discriminant_branches(setup)]
            except (ParseError, ArcMeetsDiscriminant) as exc:
                errors.append({"stage": task, "message": str(exc)})
                if code == EXIT_OK:
                    code = EXIT_INVALID
            except (TrackingError, GermError, ResolutionError, WitnessValidationError) as exc:
                errors.append({"stage": task, "message": str(exc)})
                code = EXIT_UNCERTIFIED
            except ValueError as exc:
                errors.append({"stage": task, "message": str(exc)})
                if code == EXIT_OK:
                    code = EXIT_INVALID
            report["timings"][task] = time.perf_counter() - t0
        if svg_dir is not None:
            from .svg import write_svgs
            if tree is None:
                try:
                    tree = resolve_embedded(setup.delta, job.depth_cap)
                except ResolutionError as exc:
                    errors.append({"stage": "svg", "message": str(exc)})
            if tree is not None:
                report["svg"] = write_svgs(Path(svg_dir), setup, tree)
    if tree is not None:
        report["resolution"] = tree.to_dict()
    return report, code


def load_schema() -> dict:
    text = resources.files("arcsections").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` does not match the schema."""
    import jsonschema
    jsonschema.validate(report, load_schema())


def strip_timings(report: dict) -> dict:
    """The report without wall-clock data, for determinism comparisons."""
    return {k: v for k, v in report.items() if k != "timings"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arcsections",
                                 description="Decide irreducible arc-sections of surface germs.")
    ap.add_argument("--in", dest="inp", default="-", help="job JSON file ('-' for stdin)")
    ap.add_argument("--out", default="-", help="report JSON file ('-' for stdout)")
    ap.add_argument("--svg", metavar="DIR", help="write SVG figures into DIR")
    ap.add_argument("--seed", type=int, help="override the job seed")
    ap.add_argument("--precision-digits", type=int, help="override the working digits")
    ap.add_argument("--no-prune", action="store_true", help="disable branch-section pruning")
    ap.add_argument("--braids", action="store_true", help="also compute braid words at crossings")
    ap.add_argument("--surface", help="surface equation (instead of a job file)")
    ap.add_argument("--projection", default=None, help="axis name or 'p1,p2,p3'")
    ap.add_argument("--task", action="append", choices=TASKS, help="task to run (repeatable)")
    ap.add_argument("--arc", nargs=2, metavar=("X", "Y"), help="arc components in t")
    return ap


def _read_job(args) -> dict:
    if args.surface is not None:
        data: dict = {"surface": args.surface}
    else:
        text = sys.stdin.read() if args.inp == "-" else Path(args.inp).read_text()
        data = json.loads(text)
    if args.projection is not None:
        data["projection"] = args.projection
    if args.task:
        data["tasks"] = args.task
    if args.arc:
        data["arc"] = args.arc
    if args.seed is not None:
        data["seed"] = args.seed
    if args.precision_digits is not None:
        data.setdefault("precision", {})["working_digits"] = args.precision_digits
    if args.no_prune:
        data["prune"] = False
    if args.braids:
        data["braids"] = True
    return data


def _emit(report: dict, out: str) -> None:
    text = json.dumps(report, indent=2, sort_keys=False)
    if out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec.from_dict(_read_job(args))
    except (OSError, json.JSONDecodeError, JobError, TypeError, ValueError) as exc:
        report = {"version": __version__, "job": None, "kernel": KERNEL, "setup": None,
                  "discriminant": None, "tasks": {}, "resolution": None, "verdict": None,
                  "errors": [{"stage": "job", "message": str(exc)}], "timings": {}}
        _emit(report, args.out)
        return EXIT_INVALID
    report, code = run(job, args.svg)
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
