"""Command-line front end.

    trigineq certify --family P_DIFF --n 1..100 --interval 0..2pi/3
    trigineq lemmas --n 21..24
    trigineq sharpness --claim TH5_2_9
    trigineq series --m 1..3 --omega -1,0,1/2 --order 64
    trigineq scan --family U14 --m 2 --n 5
    trigineq all

Exit code 0 when every check passes, 1 when any fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from . import series_am as sa
from . import verifier as vf
from .report import fmt, jsonable, rat_json
from .trig_sums import NEEDS_M, TAGS, FamilyId, validate

SCHEMA_VERSION = "1"
COMMANDS = ("certify", "lemmas", "sharpness", "series", "scan", "all")
PRESETS = {"0..pi": (Fraction(0), Fraction(1)), "0..2pi/3": (Fraction(0), Fraction(2, 3)),
           "0..2pi": (Fraction(0), Fraction(2))}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    m_range: list[int] = field(default_factory=lambda: [1])
    n_range: list[int] = field(default_factory=lambda: [1])
    j_range: list[int] = field(default_factory=lambda: [1])
    interval: str | None = None
    bound: str | None = None
    method: str = "auto"
    claim: str = "all"
    depth: int = 8
    omegas: list[str] = field(default_factory=lambda: ["-1", "0", "1"])
    order: int = 64
    samples: int = 0
    precision_bits: int = 128
    grid_points: int = 2048
    output_path: str | None = None
    format: str = "json"
    jobs: int = 1
    timings: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.m_range or not self.n_range:
            raise UsageError("ranges must be nonempty")
        if self.precision_bits < 64:
            raise UsageError("precision bits must be ≥ 64")
        if self.grid_points < 16:
            raise UsageError("grid points must be ≥ 16")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.command in ("certify", "scan"):
            if self.family is None:
                raise UsageError("--family is required")
            if self.family not in TAGS:
                raise UsageError(f"unknown family tag {self.family!r}")
            if self.family in NEEDS_M and min(self.m_range) < 1:
                raise UsageError("m must be ≥ 1")
        if self.command == "sharpness":
            if self.claim != "all" and self.claim not in vf.CLAIMS:
                raise UsageError(f"unknown sharpness claim {self.claim!r}")
            if self.depth < 8:
                raise UsageError("depth must be ≥ 8")
        if self.command == "series":
            if min(self.m_range) < 1:
                raise UsageError("m must be ≥ 1")
            if self.order < 8:
                raise UsageError("order must be ≥ 8")
            for w in self.omegas:
                if abs(parse_rat(w)) > 1:
                    raise UsageError("omega must lie in [-1, 1]")
            if self.samples and self.samples < 100:
                raise UsageError("superadditivity samples must be 0 or ≥ 100")


@dataclass
class ReportEnvelope:
    schema_version: str
    tool_version: str
    config: dict
    results: list
    summary: dict
    wall_time: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportEnvelope":
        return cls(**json.loads(text))


# -- parsing --------------------------------------------------------------------

def parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}") from exc


def parse_range(text: str) -> list[int]:
    """'5', '1..100' or '1,3,5'."""
    try:
        out: list[int] = []
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"malformed range {text!r}") from exc
    if not out:
        raise UsageError(f"malformed range {text!r}")
    return out


def parse_angle(text: str) -> Fraction:
    """'0', 'pi', '2pi/3', 'pi/2', '3pi/4' -> multiple of pi."""
    t = text.strip().replace(" ", "")
    if t == "0":
        return Fraction(0)
    if "pi" not in t:
        raise UsageError(f"angle {text!r} must be 0 or a rational multiple of pi")
    head, _, tail = t.partition("pi")
    try:
        num = Fraction(head) if head not in ("", "+") else Fraction(1)
        if head == "-":
            num = Fraction(-1)
        den = Fraction(tail[1:]) if tail.startswith("/") else Fraction(1)
        if tail and not tail.startswith("/"):
            raise ValueError
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed angle {text!r}") from exc
    return num / den


def parse_interval(text: str) -> tuple[Fraction, Fraction]:
    if text in PRESETS:
        return PRESETS[text]
    if ".." not in text:
        raise UsageError(f"malformed interval {text!r}")
    a, b = (parse_angle(p) for p in text.split("..", 1))
    if not a < b:
        raise UsageError(f"interval {text!r} needs a < b")
    return a, b


# -- tasks ------------------------------------------------------------------------

def _families(cfg: RunConfig) -> list[FamilyId]:
    tag = cfg.family
    ms = cfg.m_range if tag in NEEDS_M else [None]
    js = cfg.j_range if tag == "TAU_SIGNED" else [None]
    fams = sorted({FamilyId(tag, m, n, j) for m in ms for n in cfg.n_range for j in js},
                  key=lambda f: (f.tag, f.m or 0, f.n, f.j or 0))
    for f in fams:
        try:
            validate(f)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return fams


def _task(args):
    kind, payload, bits, grid = args
    os.environ["TRIGINEQ_PRECISION_BITS"] = str(bits)
    if kind == "certify":
        f, bound, interval, method = payload
        cert = vf.certify_positive(f, bound, interval, method=method, grid_points=grid, precision_bits=bits)
        return [cert.to_dict()]
    if kind == "lemmas":
        n, = payload
        reps = vf.run_lemma_checks(n, precision_bits=bits)
        if n >= 21:
            reps.append(vf.theorem5_case_partition(n, precision_bits=bits))
        return [r.to_dict() for r in reps]
    if kind == "fejer":
        m, n = payload
        return [vf.lemma1_report(m, n).to_dict(), vf.lemma2_transfer(m, n, grid=16, bits=bits).to_dict()]
    if kind == "sharpness":
        claim, depth = payload
        return [vf.check_sharpness(claim, depth, bits).to_dict()]
    if kind == "series":
        m, omega, order, samples = payload
        return [series_result(m, omega, order, samples, bits)]
    raise ValueError(kind)  # pragma: no cover


def series_result(m: int, omega: Fraction, order: int, samples: int, bits: int) -> dict:
    p = sa.WParams(m, omega)
    w = sa.w_coefficients(p, order)
    verdict = sa.check_coefficients(w)
    residual = sa.reconstruction_residual(p, order)
    recon_ok = all(c == 0 for c in residual.coeffs)
    out = {"kind": "series", "m": m, "omega": rat_json(omega), "order": order,
           "absolute_monotonicity": verdict.to_dict(), "reconstruction_exact": recon_ok,
           "coefficients": [rat_json(c) for c in w.coeffs], "growth": _growth(w)}
    passed = verdict.passed and recon_ok
    if samples:
        sup = sa.check_superadditive(p, samples, precision_bits=max(bits, 192))
        out["superadditivity"] = sup.to_dict()
        passed = passed and sup.passed
    out["passed"] = passed
    return out


def _growth(w: sa.PowerSeries) -> dict:
    """Empirical log-log slope of the coefficients between orders N/2 and N; no asymptotic claim."""
    N = w.N
    lo, hi = w[N // 2], w[N]
    slope = None
    if lo > 0 and hi > 0:
        slope = fmt((mpmath.log(_mpq(hi)) - mpmath.log(_mpq(lo))) / (mpmath.log(N) - mpmath.log(N // 2)), 8)
    return {"last_coefficient": fmt(_mpq(hi), 12), "loglog_slope": slope}


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _plan(cfg: RunConfig) -> list[tuple]:
    bits, grid = cfg.precision_bits, cfg.grid_points
    tasks = []
    if cfg.command in ("certify", "scan"):
        interval = parse_interval(cfg.interval) if cfg.interval else None
        bound = parse_rat(cfg.bound) if cfg.bound is not None else None
        method = "grid" if cfg.command == "scan" else cfg.method
        for f in _families(cfg):
            tasks.append(("certify", (f, bound, interval, method), bits, grid))
    elif cfg.command == "lemmas":
        for n in cfg.n_range:
            tasks.append(("lemmas", (n,), bits, grid))
        for m in cfg.m_range:
            tasks.append(("fejer", (m, min(cfg.n_range)), bits, grid))
    elif cfg.command == "sharpness":
        claims = vf.CLAIMS if cfg.claim == "all" else (cfg.claim,)
        tasks += [("sharpness", (c, cfg.depth), bits, grid) for c in claims]
    elif cfg.command == "series":
        for m in cfg.m_range:
            for w in sorted({parse_rat(w) for w in cfg.omegas}):
                tasks.append(("series", (m, w, cfg.order, cfg.samples), bits, grid))
    elif cfg.command == "all":
        for tag in ("B12", "U14", "V15", "C16", "D17"):
            for m in range(1, 4):
                for n in range(1, 11):
                    tasks.append(("certify", (FamilyId(tag, m, n), None, None, "auto"), bits, grid))
        for n in range(1, 31):
            tasks.append(("certify", (FamilyId("P_DIFF", None, n), None, None, "auto"), bits, grid))
        for n in range(1, 21):
            tasks.append(("certify", (FamilyId("THETA_DIFF", None, n), None, None, "auto"), bits, grid))
        tasks += [("lemmas", (n,), bits, grid) for n in (21, 22, 23)]
        tasks += [("fejer", (m, 5), bits, grid) for m in (1, 2, 3)]
        tasks += [("sharpness", (c, 8), bits, grid) for c in vf.CLAIMS]
        tasks += [("series", (m, Fraction(w), 64, 1000), bits, grid) for m in (1, 2, 3) for w in (-1, 0, 1)]
    return tasks


def run(cfg: RunConfig) -> tuple[ReportEnvelope, int]:
    cfg.validate()
    start = time.perf_counter()
    tasks = _plan(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_task, tasks))
    else:
        chunks = [_task(t) for t in tasks]
    results = [r for chunk in chunks for r in chunk]
    if not cfg.timings:
        for r in results:
            if "runtime_ms" in r:
                r["runtime_ms"] = 0
    passed = sum(1 for r in results if r.get("passed"))
    verdicts: dict[str, int] = {}
    for r in results:
        if r.get("kind") == "certificate":
            verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
    summary = {"total": len(results), "passed": passed, "failed": len(results) - passed, "verdicts": verdicts}
    echo = jsonable({k: v for k, v in asdict(cfg).items() if k not in ("output_path", "jobs")})
    env = ReportEnvelope(SCHEMA_VERSION, __version__, echo, results, summary,
                         round(time.perf_counter() - start, 3) if cfg.timings else None)
    return env, 0 if summary["failed"] == 0 else 1


# -- emit ---------------------------------------------------------------------------

CSV_COLUMNS = ("kind", "id", "m", "n", "check", "mode", "passed", "verdict", "root_count",
               "closed_root_count", "endpoint_roots", "value", "detail")


def _rat_text(d: dict) -> str:
    return d["num"] if d["den"] == "1" else f"{d['num']}/{d['den']}"


def _check_rows(r: dict):
    kind = r.get("kind")
    if kind == "certificate":
        yield {"kind": kind, "id": r["label"], "m": r["m"], "n": r["n"], "check": "positivity",
               "mode": r["method"], "passed": r["passed"], "verdict": r["verdict"],
               "root_count": r["root_count"], "closed_root_count": r["closed_root_count"],
               "endpoint_roots": ";".join(r["endpoint_roots"]), "value": r["min_value"] or "",
               "detail": f"bound={_rat_text(r['bound'])} interval={r['interval'][0]}..{r['interval'][1]}"}
    elif kind == "lemma":
        for c in r["checks"]:
            yield {"kind": kind, "id": r["lemma_id"], "m": r["m"], "n": r["n"], "check": c["name"],
                   "mode": c["mode"], "passed": c["passed"], "value": c["value"] or "", "detail": c["display"]}
    elif kind == "sharpness":
        for p in r["points"]:
            yield {"kind": kind, "id": r["claim_id"], "check": p["index"], "mode": "float",
                   "passed": r["passed"], "value": p["gap"], "detail": r["sequence_spec"]}
    elif kind == "series":
        yield {"kind": kind, "id": "W", "m": r["m"], "check": "absolute_monotonicity", "mode": "exact",
               "passed": r["absolute_monotonicity"]["passed"],
               "detail": f"omega={_rat_text(r['omega'])} order={r['order']}"}
        yield {"kind": kind, "id": "W", "m": r["m"], "check": "reconstruction", "mode": "exact",
               "passed": r["reconstruction_exact"]}
        if "superadditivity" in r:
            s = r["superadditivity"]
            yield {"kind": kind, "id": "W", "m": r["m"], "check": "superadditivity", "mode": "float",
                   "passed": s["passed"], "value": s["worst_slack"]}


def emit(report: ReportEnvelope, fmt: str = "json") -> bytes:
    if fmt == "json":
        return report.to_json().encode("utf-8")
    buf = io.StringIO()
    if report.config.get("command") == "series":
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["m", "omega", "order", "numerator", "denominator"])
        for r in report.results:
            omega = _rat_text(r["omega"])
            for k, c in enumerate(r["coefficients"]):
                writer.writerow([r["m"], omega, k, c["num"], c["den"]])
        return buf.getvalue().encode("utf-8")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\r\n", restval="")
    writer.writeheader()
    for r in report.results:
        for row in _check_rows(r):
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return buf.getvalue().encode("utf-8")


# -- argparse -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigineq", description="Exact verification of trigonometric sum inequalities")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--precision-bits", type=int, default=None,
                       help="float oracle precision (default: $TRIGINEQ_PRECISION_BITS or 128)")
        p.add_argument("--grid-points", type=int, default=2048)
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--timings", action="store_true", help="record wall-clock times (breaks byte-determinism)")

    for name in ("certify", "scan"):
        p = sub.add_parser(name, help="Sturm certificates" if name == "certify" else "grid scan only")
        p.add_argument("--family", required=True)
        p.add_argument("--m", default="1")
        p.add_argument("--n", default="1")
        p.add_argument("--j", default="1", help="tau variant for TAU_SIGNED")
        p.add_argument("--interval", default=None, help="0..pi, 0..2pi/3, 0..2pi or a..b in multiples of pi")
        p.add_argument("--bound", default=None)
        if name == "certify":
            p.add_argument("--method", choices=("auto", "sturm", "grid"), default="auto")
        common(p)
    p = sub.add_parser("lemmas", help="lemma bound checks, Fejér reports and the S_n case partition")
    p.add_argument("--n", default="21")
    p.add_argument("--m", default="1", help="m values for the Fejér reports")
    common(p)
    p = sub.add_parser("sharpness", help="sharpness of the constants")
    p.add_argument("--claim", default="all")
    p.add_argument("--depth", type=int, default=8)
    common(p)
    p = sub.add_parser("series", help="Taylor coefficients of W_{m,omega}")
    p.add_argument("--m", default="1")
    p.add_argument("--omega", default="-1,0,1")
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--samples", type=int, default=0, help="superadditivity samples (0 = skip)")
    common(p)
    p = sub.add_parser("all", help="default sweep over everything")
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    env_bits = os.environ.get("TRIGINEQ_PRECISION_BITS")
    bits = ns.precision_bits if ns.precision_bits is not None else int(env_bits) if env_bits else 128
    cfg = RunConfig(command=ns.command, precision_bits=bits, grid_points=ns.grid_points,
                    output_path=ns.output, format=ns.format, jobs=ns.jobs, timings=ns.timings)
    if ns.command in ("certify", "scan"):
        cfg.family = ns.family
        cfg.m_range, cfg.n_range, cfg.j_range = parse_range(ns.m), parse_range(ns.n), parse_range(ns.j)
        cfg.interval, cfg.bound = ns.interval, ns.bound
        cfg.method = getattr(ns, "method", "grid")
    elif ns.command == "lemmas":
        cfg.n_range, cfg.m_range = parse_range(ns.n), parse_range(ns.m)
    elif ns.command == "sharpness":
        cfg.claim, cfg.depth = ns.claim, ns.depth
    elif ns.command == "series":
        cfg.m_range = parse_range(ns.m)
        cfg.omegas = [w.strip() for w in ns.omega.split(",") if w.strip()]
        cfg.order, cfg.samples = ns.order, ns.samples
    if cfg.interval is not None:
        parse_interval(cfg.interval)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = config_from_args(ns)
        env, code = run(cfg)
    except (UsageError, ValueError) as exc:
        print(f"trigineq: error: {exc}", file=sys.stderr)
        return 2
    data = emit(env, cfg.format)
    if cfg.output_path:
        try:
            Path(cfg.output_path).write_bytes(data)
        except OSError as exc:
            print(f"trigineq: error: cannot write {cfg.output_path}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
