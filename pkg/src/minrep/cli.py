"""minrep command-line front end.

    minrep branch 4 4 --split 4,3,0,1
    minrep verify triangular --grid default
    minrep classify 4 4 --split 2,2,2,2
    minrep tabulate m --lambda 1/2:5/2 --lambda-p 1/2:9/2 --lambda-pp 1/2:5/2

Exit codes: 0 success, 1 verification failure, 2 usage or hypothesis error.
The output path is --output, else $MINREP_OUTPUT, else the config file's
"output", else stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .branching import branch, spectrum_classification
from .config import FORMATS, OUTPUT_ENV, RunConfig
from .errors import MinrepError, PoleInFormula, SignUndefined, ZeroLambda
from .exact import HalfInt, SignatureSplit, m_constant_exact, v_constant_exact
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# commands; each returns (payload, exit code)


def _split_arg(p: int, q: int, text: str) -> SignatureSplit:
    split = SignatureSplit.parse(text)
    if (split.parent.p, split.parent.q) != (p, q):
        raise UsageError(f"split {split} does not add up to ({p},{q})")
    return split


def cmd_branch(args, cfg: RunConfig):
    split = _split_arg(args.p, args.q, args.split)
    cutoff = args.cutoff if args.cutoff is not None else cfg.cutoff
    rows = [s.to_record() for s in branch(split, HalfInt.of(cutoff), args.mode)]
    payload = {"command": "branch", "split": str(split), "cutoff": str(HalfInt.of(cutoff)),
               "mode": args.mode, "rows": rows}
    return payload, EXIT_OK


def cmd_classify(args, cfg: RunConfig):
    split = _split_arg(args.p, args.q, args.split)
    rec = spectrum_classification(split)
    payload = {"command": "classify", **rec,
               "rows": [{"split": rec["split"], "classification": rec["classification"],
                         "status": rec["status"], **rec["predicates"]}]}
    return payload, EXIT_OK


def cmd_verify(args, cfg: RunConfig):
    names = SUITES if args.identity == "all" else (args.identity,)
    params = {}
    if args.identity == "triangular":
        params["grid"] = args.grid
    if args.identity == "parseval":
        if args.qsplit:
            params["qsplit"] = tuple(int(x) for x in args.qsplit.split(","))
        params["p"], params["q"] = args.p or 4, args.q or 4
        if not args.qsplit and params["q"] != 4:
            raise UsageError("--qsplit is required when --q is given")
    reports = [run_suite(name, cfg, **params).to_dict() for name in names]
    ok = all(r["passed"] for r in reports)
    rows = []
    for r in reports:
        for i, c in enumerate(r["cases"]):
            rows.append({"suite": r["suite"], "case": i, **c})
    summaries = [{k: v for k, v in r.items() if k != "cases"} for r in reports]
    payload = {"command": "verify", "identity": args.identity, "passed": ok, "seed": cfg.seed,
               "suites": summaries, "rows": rows}
    return payload, EXIT_OK if ok else EXIT_FAIL


def _range(text: str):
    lo, _, hi = text.partition(":")
    lo = HalfInt.of(lo)
    hi = HalfInt.of(hi or lo)
    return [HalfInt(k) for k in range(lo.twice_value, hi.twice_value + 1)]


def _cell(fn):
    try:
        g = fn()
    except (PoleInFormula, ZeroLambda):
        return "pole", None
    except (SignUndefined, ValueError):
        return None, None
    if g.is_pole:
        return "pole", None
    return str(g), float(g)


def cmd_tabulate(args, cfg: RunConfig):
    rows = []
    for lam in _range(args.lam):
        for lp in _range(args.lam_p):
            for lpp in _range(args.lam_pp):
                if args.constant == "m":
                    exact, approx = _cell(lambda: m_constant_exact(lam, lp, lpp))
                else:
                    kind = "pm" if args.constant == "v_pm" else "pp"
                    exact, approx = _cell(lambda: v_constant_exact(kind, lp, lpp, lam))
                if exact is None:
                    continue
                rows.append({"lambda": str(lam), "lambda_p": str(lp), "lambda_pp": str(lpp),
                             "exact": exact, "decimal": approx})
    payload = {"command": "tabulate", "constant": args.constant, "rows": rows}
    return payload, EXIT_OK


# ---------------------------------------------------------------------------
# rendering


def render_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _flat(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def render_csv(payload) -> str:
    rows = payload.get("rows", [])
    cols = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_flat(r.get(c)) for c in cols])
    return buf.getvalue()


def render_text(payload) -> str:
    cmd = payload["command"]
    lines = []
    if cmd == "branch":
        lines.append(f"split {payload['split']}  cutoff {payload['cutoff']}  mode {payload['mode']}")
        for r in payload["rows"]:
            lines.append(f"  {r['left']} x {r['right']}   lambda={r['lambda']}  [{r['status']}]")
        if not payload["rows"]:
            lines.append("  (no summands)")
    elif cmd == "classify":
        lines.append(f"{payload['split']}: {payload['classification']} [{payload['status']}]")
        for k in sorted(payload["predicates"]):
            lines.append(f"  {k}: {payload['predicates'][k]}")
    elif cmd == "verify":
        for r in payload["suites"]:
            flag = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{flag} {r['suite']}: {r['n_cases']} cases, "
                         f"max residual {r['max_residual']:.3e}")
    else:
        for r in payload["rows"]:
            dec = "" if r["decimal"] is None else f"  ~ {r['decimal']:.12g}"
            lines.append(f"lambda={r['lambda']} lambda_p={r['lambda_p']} "
                         f"lambda_pp={r['lambda_pp']}: {r['exact']}{dec}")
    return "\n".join(lines) + "\n"


RENDER = {"json": render_json, "csv": render_csv, "text": render_text}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minrep", description="Branching laws of the minimal "
                                 "representation of O(p,q): enumeration and verification.")
    ap.add_argument("--version", action="version", version=f"minrep {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--config", default=None, help="JSON run configuration")
    common.add_argument("--seed", type=int, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("branch", parents=[common], help="discrete spectrum of a restriction")
    b.add_argument("p", type=int)
    b.add_argument("q", type=int)
    b.add_argument("--split", required=True, help="p',q',p'',q''")
    b.add_argument("--cutoff", default=None, help="largest lambda to list")
    b.add_argument("--mode", choices=("theorem", "conjecture"), default="theorem")
    b.set_defaults(func=cmd_branch)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("identity", choices=SUITES + ("all",))
    v.add_argument("--grid", default="default")
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--q", type=int, default=None)
    v.add_argument("--qsplit", default=None, help="q',q''")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common], help="classify the spectrum of a restriction")
    c.add_argument("p", type=int)
    c.add_argument("q", type=int)
    c.add_argument("--split", required=True)
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("tabulate", parents=[common], help="exact constants over parameter ranges")
    t.add_argument("constant", choices=("v_pm", "v_pp", "m"))
    t.add_argument("--lambda", dest="lam", default="1/2:5/2", help="lo:hi, half-integers")
    t.add_argument("--lambda-p", dest="lam_p", default="-1/2:9/2")
    t.add_argument("--lambda-pp", dest="lam_pp", default="-1/2:5/2")
    t.set_defaults(func=cmd_tabulate)
    return ap


def _output_path(args, cfg: RunConfig):
    return args.output or os.environ.get(OUTPUT_ENV) or cfg.output


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config) if args.config else RunConfig()
        cfg = cfg.with_overrides(seed=args.seed, format=args.format)
        payload, code = args.func(args, cfg)
    except (MinrepError, UsageError, ValueError, OSError) as exc:
        print(f"minrep: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = RENDER[cfg.format](payload)
    path = _output_path(args, cfg)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
