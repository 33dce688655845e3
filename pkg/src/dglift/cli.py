"""Command dispatcher and report serialisation.

Commands operate on a problem file and emit a ReportDocument:

    dglift validate   problem.dgp
    dglift delta      problem.dgp --element "X*Y*y"
    dglift obstruction problem.dgp [--module N]
    dglift check-lift problem.dgp [--module N] [--witness]
    dglift homology   problem.dgp --bidegree 3,4
    dglift selftest   [--trials 25]

JSON output follows the fixed schema

    {version, problem, results: [...], timing_ms}

where each check-lift result is {module, decision, method, obstruction:
[{basis, value}], witness?, certificate?}.  Output is byte-identical
between runs apart from timing_ms.  Exit codes: 0 success, 1 mathematical
rejection (a construction check failed), 2 usage or parse error.  The
DGLIFT_VERBOSE environment variable adds progress notes on stderr and
changes nothing else.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .dsl import parse_algebra_element, parse_problem, print_problem
from .envelope import delta, diagonal_homology_dim
from .errors import ConstructionError, DGLiftError, ParseError
from .obstruction import check_lift, obstruction_values
from .selfcheck import ALL_SUITES


@dataclass
class ReportDocument:
    version: str
    problem: str               # pretty-printed problem echo ("" for selftest)
    results: list              # JSON-ready dicts, deterministic order
    timing_ms: int

    def to_dict(self):
        return {"version": self.version, "problem": self.problem,
                "results": self.results, "timing_ms": self.timing_ms}


def emit_report(doc: ReportDocument, fmt="json") -> str:
    if fmt == "json":
        return json.dumps(doc.to_dict(), ensure_ascii=False, indent=2) + "\n"
    if fmt == "text":
        return _emit_text(doc)
    raise ValueError("unknown format %r" % fmt)


def report_from_json(text) -> ReportDocument:
    data = json.loads(text)
    return ReportDocument(data["version"], data["problem"], data["results"],
                          data["timing_ms"])


def _emit_text(doc):
    lines = ["dglift %s" % doc.version]
    for entry in doc.results:
        if "decision" in entry:
            lines.append("module %s: %s (method: %s)"
                         % (entry["module"], entry["decision"], entry["method"]))
            lines.append("  obstruction:")
            for item in entry["obstruction"]:
                lines.append("    %s: %s" % (item["basis"], item["value"]))
            if "witness" in entry:
                lines.append("  witness:")
                for item in entry["witness"]:
                    lines.append("    %s: %s" % (item["basis"], item["value"]))
            if "certificate" in entry:
                cert = entry["certificate"]
                lines.append("  certificate (%s):" % cert["kind"])
                for key, value in cert.items():
                    if key in ("kind", "null_functional"):
                        continue
                    lines.append("    %s: %s" % (key, value))
                lines.append("    null functional:")
                for item in cert["null_functional"]:
                    lines.append("      %s: %s" % (item["row"], item["value"]))
        elif "delta" in entry:
            lines.append("delta(%s) = %s" % (entry["element"], entry["delta"]))
        elif "dimension" in entry:
            n, w = entry["bidegree"]
            lines.append("dim H_(%d,%d)(J) = %d" % (n, w, entry["dimension"]))
        elif "suite" in entry:
            lines.append("%s: %s (%d trials)"
                         % (entry["suite"], entry["status"], entry["trials"]))
        elif "object" in entry:
            lines.append("%s %s: %s" % (entry["object"], entry["name"],
                                        entry["status"]))
    lines.append("(%d ms)" % doc.timing_ms)
    return "\n".join(lines) + "\n"


def _tensor_entries(N, values):
    return [{"basis": lab, "value": str(values.get(lab, N.tensor_zero()))}
            for lab in N.labels]


def _module_names(problem, module):
    if module is not None:
        if module not in problem.modules:
            raise ParseError("no module named %r in the problem" % module)
        return [module]
    return list(problem.modules)


def run_command(command, problem, *, module=None, bidegree=None,
                witness=False, element=None, trials=None):
    """Execute one command against a parsed problem; returns a ReportDocument."""
    start = time.monotonic()
    results = []
    if command == "validate":
        # construction already ran every check; reaching here means valid
        results.append({"object": "ring", "name": problem.ring_name,
                        "status": "valid"})
        results.append({"object": "algebra", "name": problem.algebra_name,
                        "status": "valid"})
        for name in problem.modules:
            results.append({"object": "module", "name": name, "status": "valid"})
    elif command == "delta":
        if element is None:
            raise ParseError("delta needs --element <expression>")
        value = parse_algebra_element(problem, element)
        results.append({"element": element, "delta": str(delta(value))})
    elif command == "obstruction":
        for name in _module_names(problem, module):
            N = problem.modules[name]
            values = obstruction_values(N)
            results.append({"module": name,
                            "obstruction": _tensor_entries(N, values)})
    elif command == "check-lift":
        for name in _module_names(problem, module):
            N = problem.modules[name]
            report = check_lift(N)
            entry = {"module": name, "decision": report.decision,
                     "method": report.method,
                     "obstruction": _tensor_entries(N, report.obstruction)}
            if witness and report.witness is not None:
                entry["witness"] = _tensor_entries(N, report.witness)
            if report.certificate is not None:
                entry["certificate"] = report.certificate
            results.append(entry)
    elif command == "homology":
        if bidegree is None:
            raise ParseError("homology needs --bidegree n,w")
        n, w = bidegree
        dim = diagonal_homology_dim(problem.algebra, n, w)
        results.append({"bidegree": [n, w], "dimension": dim})
    elif command == "selftest":
        for name, fn in ALL_SUITES:
            count = fn() if trials is None else fn(trials=trials)
            results.append({"suite": name, "trials": count, "status": "pass"})
    else:
        raise ParseError("unknown command %r" % command)
    elapsed = int((time.monotonic() - start) * 1000)
    echo = print_problem(problem) if problem is not None else ""
    return ReportDocument(__version__, echo, results, elapsed)


def _parse_bidegree(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("--bidegree expects n,w")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("--bidegree expects integers")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dglift",
        description="Exact naive-lifting obstructions for DG modules over "
                    "free graded extensions.")
    sub = parser.add_subparsers(dest="command")
    commands = {
        "validate": "run all construction checks on a problem file",
        "delta": "apply the universal derivation to an algebra element",
        "obstruction": "print the obstruction map on each basis element",
        "check-lift": "decide naive liftability with witness or certificate",
        "homology": "dimension of the diagonal ideal's homology at a bidegree",
        "selftest": "run the randomised invariant suites",
    }
    for name, help_txt in commands.items():
        cmd = sub.add_parser(name, help=help_txt)
        if name != "selftest":
            cmd.add_argument("problem", help="problem description file")
        if name in ("obstruction", "check-lift"):
            cmd.add_argument("--module", help="restrict to one module")
        if name == "check-lift":
            cmd.add_argument("--witness", action="store_true",
                             help="include the lifting witness")
        if name == "homology":
            cmd.add_argument("--bidegree", required=True,
                             help="homological,internal degree pair n,w")
        if name == "delta":
            cmd.add_argument("--element", required=True,
                             help="algebra element expression")
        if name == "selftest":
            cmd.add_argument("--trials", type=int, default=None,
                             help="trials per suite (default: full runs)")
        cmd.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    verbose = bool(os.environ.get("DGLIFT_VERBOSE"))
    try:
        problem = None
        if args.command != "selftest":
            if verbose:
                print("reading %s" % args.problem, file=sys.stderr)
            try:
                with open(args.problem, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                print("dglift: %s" % exc, file=sys.stderr)
                return 2
            problem = parse_problem(text)
        if verbose:
            print("running %s" % args.command, file=sys.stderr)
        doc = run_command(
            args.command, problem,
            module=getattr(args, "module", None),
            bidegree=_parse_bidegree(args.bidegree)
            if getattr(args, "bidegree", None) else None,
            witness=getattr(args, "witness", False),
            element=getattr(args, "element", None),
            trials=getattr(args, "trials", None))
    except ParseError as exc:
        print("dglift: %s" % exc, file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print("dglift: %s" % exc, file=sys.stderr)
        return 1
    except DGLiftError as exc:
        print("dglift: %s" % exc, file=sys.stderr)
        return 1
    sys.stdout.write(emit_report(doc, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
