"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on
input errors (unreadable files, syntax errors, violated hypotheses).
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice as lat
from .ext import (ext1_gcd_shortcut, ext1_resolution, is_torsion, stabilization_alpha0,
                  tors_alpha_ext1_shortcut)
from .ideal import Ideal
from .modules import (FPModule, HypothesisError, annihilator, pruned, torsion_submodule,
                      tors_alpha)
from .report import Record, format_records, format_text
from .ring import parse_polynomial
from .textio import format_ideal_file, format_matrix_file, parse_ideal_file, parse_matrix_file
from .verify import SUITES, run_suite

COMMANDS = ("gb", "ann", "tors", "ext1", "verify", "lattice")


class InputError(ValueError):
    pass


@dataclass
class Job:
    command: str
    inputs: Dict = field(default_factory=dict)
    options: Dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        need = {"gb": Ideal, "ann": FPModule, "tors": FPModule, "ext1": FPModule}.get(self.command)
        if need is not None and not isinstance(self.inputs.get("payload"), need):
            raise InputError(f"{self.command} needs a {need.__name__} payload")


def _timed(ref: str, fn, job: Job) -> Tuple[Record, object]:
    start = time.perf_counter()
    value = fn()
    ok = bool(getattr(value, "ok", value)) if not isinstance(value, tuple) else bool(value[0])
    ms = int(round((time.perf_counter() - start) * 1000))
    budget = job.options.get("budget_ms")
    if budget is not None and ms > budget:
        ok = False
    millis = ms if job.options.get("timings") else None
    return Record(job.command, ref, "PASS" if ok else "FAIL", millis, job.options.get("seed")), value


def _finish(job: Job, records: List[Record], body: str = "") -> Tuple[int, str]:
    code = 0 if all(r.status == "PASS" for r in records) else 1
    if job.options.get("format") == "records":
        return code, format_records(records)
    return code, body + format_text(records)


def _run_gb(job: Job):
    ideal: Ideal = job.inputs["payload"]

    def check():
        gb = Ideal(ideal.gb, ideal.ring)
        return all(gb.contains(g) for g in ideal.generators) \
            and all(ideal.contains(g) for g in gb.generators)
    rec, _ = _timed("groebner-basis", check, job)
    return _finish(job, [rec], format_ideal_file(Ideal(ideal.gb, ideal.ring)))


def _run_ann(job: Job):
    n: FPModule = job.inputs["payload"]
    box = {}

    def check():
        box["ann"] = annihilator(n)
        return box["ann"].gb
    rec, _ = _timed("annihilator", lambda: (True, check()), job)
    return _finish(job, [rec], format_ideal_file(box["ann"]))


def _run_tors(job: Job):
    n: FPModule = job.inputs["payload"]
    alpha = job.inputs.get("alpha")
    box = {}

    def compute():
        if alpha is None:
            s, incl = torsion_submodule(n)
        else:
            s, incl = tors_alpha(n, alpha)
        box["module"] = incl.source
        return incl.is_injective()
    rec, _ = _timed("torsion" if alpha is None else "tors-alpha", compute, job)
    return _finish(job, [rec], format_matrix_file(pruned(box["module"]).presentation))


def _shortcut(n: FPModule):
    """Ext^1 via a = gcd(Ann n) when n is torsion, else via Tors_α0 with α0 ∈ Ann(Ext^1)."""
    if is_torsion(n):
        return ext1_gcd_shortcut(n)[1]
    alpha0 = stabilization_alpha0(n).alpha0
    return tors_alpha_ext1_shortcut(n, alpha0)


def _run_ext1(job: Job):
    n: FPModule = job.inputs["payload"]
    method = job.options.get("method", "resolution")
    seed = job.options.get("seed") or 0
    records = []
    body = ""
    if method in ("resolution", "both"):
        rec, res = _timed("ext1-resolution", lambda: _witnessed(ext1_resolution(n, seed=seed)), job)
        records.append(rec)
        body = format_matrix_file(pruned(res[1].module).presentation)
    if method in ("shortcut", "both"):
        rec, res = _timed("ext1-shortcut", lambda: _witnessed(_shortcut(n)), job)
        records.append(rec)
        if method == "shortcut":
            body = format_matrix_file(pruned(res[1].module).presentation)
    if method == "both":
        def compare():
            sc = _shortcut(n)
            # both are certified isomorphic to the same Tors/Ext^1 submodule of the oracle
            return sc.witness.is_isomorphism() and ext1_resolution(n, seed=seed).witness.is_isomorphism()
        records.append(_timed("shortcut-vs-oracle", compare, job)[0])
    return _finish(job, records, body)


def _witnessed(result):
    return (result.witness is None or result.witness.is_isomorphism(), result)


def _run_verify(job: Job):
    o = job.options
    records = run_suite(o["suite"], o["cases"], o["seed"], jobs=o.get("jobs", 1),
                        timings=o.get("timings", False), budget_ms=o.get("budget_ms"))
    return _finish(job, records)


def _facts_text(facts: Dict) -> str:
    return "".join(f"{k}: {v}\n" for k, v in facts.items())


def _run_lattice(job: Job):
    o = job.options
    action = o["action"]
    b = o["b"]
    if action == "exhaustive":
        rec, rep = _timed("defect-exhaustive", lambda: lat.exhaustive_verify(b, o["bound"]), job)
        return _finish(job, [rec], _facts_text(rep.facts))
    if action == "defect":
        J = lat.IndexSet(b, o.get("J", ()))
        d = lat.DonaldsonLattice(b).element(_need(o, "d"))
        value = lat.bn_defect(J, d)
        zero = d in lat.equality_classes(J)
        rec, _ = _timed("defect", lambda: value <= 0 and (value == 0) == zero, job)
        return _finish(job, [rec], f"defect: {value}\nequality_class: {zero}\n"
                                   f"nakamura: {lat.nakamura_value(d)}\n")
    if action == "sigma":
        J = lat.IndexSet(b, o.get("J", ()))
        s = lat.sigma_selector(J, b)
        excluded = len(J) in (0, b)
        ok = (s is None) == excluded and (s is None or (s not in J.members and s % b + 1 in J.members))
        rec, _ = _timed("sigma-selector", lambda: ok, job)
        return _finish(job, [rec], f"sigma: {'none' if s is None else s}\n")
    if action == "enoki":
        if o.get("d") is not None:
            d = lat.DonaldsonLattice(b).element(o["d"])
            rec, rep = _timed(f"enoki-{o['type']}", lambda: lat.enoki_k_pairing_check(d, o["type"]), job)
            return _finish(job, [rec], _facts_text(rep.facts))
        rec, facts = _timed("enoki-cycle", lambda: _cycle_facts(b), job)
        return _finish(job, [rec], _facts_text(facts[1]))
    raise InputError(f"unknown lattice action {action!r}")


def _cycle_facts(b: int) -> Tuple[bool, Dict]:
    cycle = lat.enoki_cycle(b)
    L = lat.DonaldsonLattice(b)
    total = L.zero()
    for c in cycle:
        total = total + c
    sums_to_zero = total == L.zero()
    k_null = all(lat.intersection(c, L.canonical()) == 0 for c in cycle)
    self_ok = all(lat.intersection(c, c) == -2 for c in cycle)
    facts = {"classes": " ".join(f"({c})" for c in cycle), "sum_zero": sums_to_zero,
             "k_orthogonal": k_null, "self_intersection_-2": self_ok}
    ok = sums_to_zero and k_null and self_ok
    if b >= 3:
        pattern = all(lat.intersection(cycle[i], cycle[(i + 1) % b]) == 1 for i in range(b))
        facts["consecutive_intersection_1"] = pattern
        ok = ok and pattern
    return ok, facts


def _need(o: Dict, key: str):
    if o.get(key) is None:
        raise InputError(f"--{key} is required")
    return o[key]


_RUNNERS = {"gb": _run_gb, "ann": _run_ann, "tors": _run_tors, "ext1": _run_ext1,
            "verify": _run_verify, "lattice": _run_lattice}


def run(job: Job) -> Tuple[int, str]:
    """Execute a job; returns (exit code, report text)."""
    return _RUNNERS[job.command](job)


# ---------------------------------------------------------------------------
# argument handling

def _int_list(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget-ms", type=int, default=None)
    p.add_argument("--timings", action="store_true", help="fill in the millis field")
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extorsion",
                                     description="Ext^1, torsion and lattice checks over QQ[x1..xn].")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("gb", help="reduced Gröbner basis of an ideal file")
    p.add_argument("file")
    _common(p)
    p = sub.add_parser("ann", help="annihilator of a module file")
    p.add_argument("file")
    _common(p)
    p = sub.add_parser("tors", help="torsion submodule (or α-torsion with --alpha)")
    p.add_argument("file")
    p.add_argument("--alpha", default=None)
    _common(p)
    p = sub.add_parser("ext1", help="Ext^1(N, A)")
    p.add_argument("file")
    p.add_argument("--method", choices=("resolution", "shortcut", "both"), default="resolution")
    _common(p)
    p = sub.add_parser("verify", help="run seeded verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--cases", type=int, default=50)
    _common(p)
    p = sub.add_parser("lattice", help="Donaldson lattice arithmetic")
    p.add_argument("action", choices=("defect", "enoki", "exhaustive", "sigma"))
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--J", type=_int_list, default=())
    p.add_argument("--d", type=_int_list, default=None)
    p.add_argument("--type", choices=("generic", "special"), default="generic")
    _common(p)
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def job_from_args(args: argparse.Namespace) -> Job:
    options = {"format": args.format, "jobs": args.jobs, "budget_ms": args.budget_ms,
               "timings": args.timings, "seed": args.seed}
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    inputs = {}
    if args.command == "gb":
        inputs["payload"] = parse_ideal_file(_read(args.file))
    elif args.command in ("ann", "tors", "ext1"):
        inputs["payload"] = FPModule(parse_matrix_file(_read(args.file)))
        if args.command == "tors" and args.alpha is not None:
            alpha = parse_polynomial(inputs["payload"].ring, args.alpha, 1)
            if alpha.is_zero():
                raise InputError("--alpha must be nonzero")
            inputs["alpha"] = alpha
        if args.command == "ext1":
            options["method"] = args.method
    elif args.command == "verify":
        if args.cases < 1:
            raise InputError("--cases must be positive")
        options.update(suite=args.suite, cases=args.cases, seed=0 if args.seed is None else args.seed)
    else:
        if args.b < 1:
            raise InputError("--b must be positive")
        options.update(action=args.action, b=args.b, bound=args.bound, J=args.J, d=args.d,
                       type=args.type)
        if args.d is not None and len(args.d) != args.b:
            raise InputError(f"--d needs {args.b} coordinates")
        lat.IndexSet(args.b, args.J)
        if args.action == "enoki" and args.d is None and args.b < 2:
            raise InputError("the Enoki cycle needs --b >= 2")
        if args.action == "exhaustive" and not (args.b <= lat.MAX_B and 0 <= args.bound <= lat.MAX_BOUND):
            raise InputError(f"budget is --b <= {lat.MAX_B}, --bound <= {lat.MAX_BOUND}")
    return Job(args.command, inputs, options)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        job = job_from_args(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        code, text = run(job)
    except (InputError, HypothesisError, lat.BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        # a certificate that cannot be produced is a failed check, not bad input
        print(f"FAIL: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
