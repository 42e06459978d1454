"""Command line front-end.

Exit codes: 0 success or verified, 1 a property fails (with a witness in the
report), 2 usage errors, malformed input, or unmet hypotheses.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import fixed_points as fp
from ._bits import bits, mask_of
from .complexes import (
    SimplicialComplex,
    crosscut_complex,
    euler_characteristic,
    f_vector,
    format_complex,
    order_complex,
    parse_complex,
)
from .crosscut_poset import (
    check_mxl_characterization,
    crosscut_poset,
    p0_retraction,
    verify_retract,
)
from .errors import CrosscutError, GuardExceeded, HypothesisViolated, Inconclusive
from .fixtures import write_fixtures
from .poset import FinitePoset, format_poset, is_antichain_mask, mnl, mxl, parse_poset, to_dot
from .stars import COHERENCE_GUARD, incoherent_subset, uncovered_chain
from .topology import (
    core_reduction,
    homology,
    is_contractible,
    is_weakly_contractible,
    poset_homology,
)

SCHEMA = 1

THEOREMS = ("main-theorem", "retract", "fpp-transfer", "fsp-equivalence",
            "pm-contractibility", "mxl-characterization", "p0-retraction")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# input helpers


def read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def looks_like_complex(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.startswith("facet:")
    return False


def load_poset(path: str) -> FinitePoset:
    text = read_text(path)
    if looks_like_complex(text):
        raise UsageError(f"{path} is a complex file; a poset file is required")
    return _with_path(path, parse_poset, text)


def load_complex(path: str) -> SimplicialComplex:
    text = read_text(path)
    if not looks_like_complex(text) and text.strip():
        # a poset file stands for its order complex
        return order_complex(_with_path(path, parse_poset, text))
    return _with_path(path, parse_complex, text)


def _with_path(path, parse, text):
    try:
        return parse(text)
    except CrosscutError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def resolve_cutset(P: FinitePoset, choice: str | None) -> frozenset:
    if choice is None or choice == "mxl":
        return mxl(P)
    if choice == "mnl":
        return mnl(P)
    names = [s.strip() for s in choice.split(",") if s.strip()]
    if not names:
        raise UsageError("empty --cutset")
    try:
        return P.ids(names)
    except CrosscutError as exc:
        raise UsageError(f"--cutset: {exc}") from exc


def guard_from(args) -> int | None:
    if args.guard is not None:
        return args.guard
    env = os.environ.get("CROSSCUT_GUARD")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CROSSCUT_GUARD must be an integer, got {env!r}") from None
    return None


def labels_of(P: FinitePoset, ids) -> list:
    return [P.labels[x] for x in sorted(ids)]


# --------------------------------------------------------------------------
# commands; each returns (exit code, report dict, text)


def cmd_analyze(args):
    P = load_poset(args.file)
    X = resolve_cutset(P, args.cutset)
    guard = args.fpp_guard
    report = {"elements": list(P.labels), "covers": [list(c) for c in P.cover_labels()],
              "mxl": labels_of(P, mxl(P)), "mnl": labels_of(P, mnl(P)),
              "cutset": labels_of(P, X)}
    chain_ = uncovered_chain(P, X)
    report["is_cutset"] = chain_ is None
    if chain_ is not None:
        report["uncovered_chain"] = labels_of(P, chain_)
    try:
        bad = incoherent_subset(P, X, args.coherence_guard)
        report["is_coherent_cutset"] = chain_ is None and bad is None
        report["is_crosscut"] = report["is_coherent_cutset"] and is_antichain_mask(P, mask_of(X))
        if bad is not None:
            report["incoherent_subset"] = labels_of(P, bad)
    except GuardExceeded as exc:
        report["is_coherent_cutset"] = None
        report["coherence_note"] = str(exc)
    gamma = crosscut_poset(P, X)
    K = crosscut_complex(P, X)
    report["crosscut_poset"] = {
        "elements": list(gamma.poset.labels),
        "covers": [list(c) for c in gamma.poset.cover_labels()],
    }
    report["crosscut_complex"] = K.facet_labels()
    report["homology"] = {
        "poset": poset_homology(P).as_dict(),
        "crosscut_poset": poset_homology(gamma.poset).as_dict(),
        "crosscut_complex": homology(K, reduced=True).as_dict(),
    }
    report["contractible"] = is_contractible(P)
    report["weakly_contractible"] = is_weakly_contractible(P).as_dict()
    try:
        res = fp.has_fpp(P, guard, not args.no_core_preprocess)
        report["fpp"] = res.as_dict()
    except GuardExceeded as exc:
        report["fpp"] = {"skipped": str(exc)}
    lines = [f"{k}: {json.dumps(v)}" for k, v in report.items()]
    return 0, report, "\n".join(lines) + "\n"


def cmd_crosscut_poset(args):
    P = load_poset(args.file)
    X = resolve_cutset(P, args.cutset)
    gamma = crosscut_poset(P, X)
    G = gamma.poset
    notes = {i: "component of st({" + ",".join(labels_of(P, bits(gamma.generators[i]))) + "})"
             for i in range(G.n)}
    report = {
        "cutset": labels_of(P, X),
        "elements": [{"label": G.labels[i], "carrier": gamma.carrier_labels(i),
                      "generator": labels_of(P, bits(gamma.generators[i]))}
                     for i in range(G.n)],
        "covers": [list(c) for c in G.cover_labels()],
    }
    if args.dot:
        text = to_dot(G, "crosscut_poset")
        report["dot"] = text
    else:
        text = "# crosscut poset over cutset " + " ".join(labels_of(P, X)) + "\n"
        text += format_poset(G, notes)
    return 0, report, text


def cmd_crosscut_complex(args):
    P = load_poset(args.file)
    X = resolve_cutset(P, args.cutset)
    K = crosscut_complex(P, X)
    report = {"cutset": labels_of(P, X), "facets": K.facet_labels(),
              "f_vector": list(f_vector(K))}
    return 0, report, format_complex(K)


def cmd_order_complex(args):
    P = load_poset(args.file)
    K = order_complex(P)
    report = {"facets": K.facet_labels(), "f_vector": list(f_vector(K)),
              "euler_characteristic": euler_characteristic(K)}
    return 0, report, format_complex(K)


def cmd_homology(args):
    K = load_complex(args.file)
    h = homology(K, reduced=args.reduced)
    report = {"f_vector": list(f_vector(K)), **h.as_dict()}
    return 0, report, None


def cmd_core(args):
    P = load_poset(args.file)
    red = core_reduction(P)
    C = red.core()
    report = {"core": list(C.labels), "covers": [list(c) for c in C.cover_labels()],
              "removed": [{"element": P.labels[x], "kind": kind, "onto": P.labels[t]}
                          for x, kind, t in red.steps],
              "contractible": C.n == 1}
    return 0, report, format_poset(C)


def cmd_fpp(args):
    P = load_poset(args.file)
    res = fp.has_fpp(P, args.fpp_guard, not args.no_core_preprocess)
    text = f"fixed point property: {'yes' if res.has_fpp else 'no'}\n"
    if res.witness is not None:
        text += "".join(f"  {a} -> {b}\n" for a, b in res.witness.as_labels().items())
    return (0 if res.has_fpp else 1), res.as_dict(), text


def cmd_fsp(args):
    K = load_complex(args.file)
    res = fp.has_fsp(K, args.fpp_guard, not args.no_core_preprocess)
    text = f"fixed simplex property: {'yes' if res.has_fpp else 'no'}\n"
    if res.witness is not None:
        text += "".join(f"  {a} -> {b}\n" for a, b in res.witness.as_labels().items())
    return (0 if res.has_fpp else 1), {"has_fsp": res.has_fpp, **res.as_dict()}, text


def _retract_dict(P, rep):
    def fmt(items):
        out = []
        for it in items:
            if isinstance(it, tuple):
                out.append([labels_of(P, s) for s in it])
            else:
                out.append(labels_of(P, it))
        return out
    return {"check": "retract", "holds": rep.ok, "carriers": rep.carriers,
            "simplices": rep.simplices,
            "nu_iota_identity_violations": fmt(rep.nu_iota_identity),
            "iota_nu_extensive_violations": fmt(rep.iota_nu_extensive),
            "nu_monotone_violations": fmt(rep.nu_monotone),
            "iota_monotone_violations": fmt(rep.iota_monotone),
            "nu_outside_gamma": fmt(rep.nu_lands_in_gamma)}


def cmd_verify(args):
    name = args.theorem
    cguard = args.coherence_guard
    if name == "fsp-equivalence":
        K = load_complex(args.file)
        rep = fp.verify_fsp_equivalence(K, args.fpp_guard, not args.no_core_preprocess)
        report = rep.as_dict()
    else:
        P = load_poset(args.file)
        if name == "main-theorem":
            X = resolve_cutset(P, args.cutset)
            report = fp.verify_main_theorem(P, X).as_dict()
        elif name == "retract":
            X = resolve_cutset(P, args.cutset)
            report = _retract_dict(P, verify_retract(P, X, cguard))
        elif name == "fpp-transfer":
            report = fp.verify_fpp_transfer(P, args.fpp_guard, not args.no_core_preprocess).as_dict()
        elif name == "pm-contractibility":
            report = fp.verify_pm_contractibility(P, cguard).as_dict()
        elif name == "mxl-characterization":
            X = resolve_cutset(P, args.cutset)
            v = check_mxl_characterization(P, X)
            report = {"check": name, "holds": v.holds, "witness": _jsonable(P, v.witness)}
        elif name == "p0-retraction":
            ret = p0_retraction(P)
            report = {"check": name, "holds": True,
                      "p0": labels_of(P, ret.elements),
                      "r": ret.r.as_labels(),
                      "carrier_to_max": {ret.gamma.poset.labels[i]: ret.p0.labels[j]
                                         for i, j in enumerate(ret.iso)}}
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown theorem {name}")
    report.setdefault("note", fp.HOMOLOGY_SUBSTITUTION)
    text = f"{name}: {'verified' if report['holds'] else 'FAILED'}\n"
    for k, v in report.items():
        if k not in ("check", "holds"):
            text += f"  {k}: {json.dumps(v)}\n"
    return (0 if report["holds"] else 1), report, text


def _jsonable(P, obj):
    if obj is None:
        return None
    if isinstance(obj, frozenset):
        return labels_of(P, obj)
    if isinstance(obj, dict):
        return {k: _jsonable(P, v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(P, v) for v in obj]
    return obj


def cmd_dot(args):
    P = load_poset(args.file)
    if args.cutset is not None:
        gamma = crosscut_poset(P, resolve_cutset(P, args.cutset))
        text = to_dot(gamma.poset, "crosscut_poset")
    else:
        text = to_dot(P, "P")
    return 0, {"dot": text}, text


def cmd_fixtures(args):
    try:
        paths = write_fixtures(args.directory)
    except OSError as exc:
        raise UsageError(f"cannot write fixtures: {exc}") from exc
    return 0, {"written": paths}, "".join(p + "\n" for p in paths)


COMMANDS = {
    "analyze": cmd_analyze,
    "crosscut-poset": cmd_crosscut_poset,
    "crosscut-complex": cmd_crosscut_complex,
    "order-complex": cmd_order_complex,
    "homology": cmd_homology,
    "core": cmd_core,
    "fpp": cmd_fpp,
    "fsp": cmd_fsp,
    "verify": cmd_verify,
    "dot": cmd_dot,
    "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--stable", action="store_true", help="omit the timestamp field")
    common.add_argument("--guard", type=int, default=None,
                        help="size guard for exhaustive searches (also CROSSCUT_GUARD)")
    common.add_argument("--no-core-preprocess", action="store_true",
                        help="search fixed-point-free maps on P itself, not its core")
    cut = argparse.ArgumentParser(add_help=False)
    cut.add_argument("--cutset", default=None, help='mxl | mnl | "a,b,c" (default mxl)')

    parser = argparse.ArgumentParser(prog="crosscut", description="Crosscut posets of finite posets.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common, cut]).add_argument("file")
    p = sub.add_parser("crosscut-poset", parents=[common, cut])
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of poset text")
    sub.add_parser("crosscut-complex", parents=[common, cut]).add_argument("file")
    sub.add_parser("order-complex", parents=[common]).add_argument("file")
    p = sub.add_parser("homology", parents=[common])
    p.add_argument("file")
    p.add_argument("--reduced", action="store_true")
    sub.add_parser("core", parents=[common]).add_argument("file")
    sub.add_parser("fpp", parents=[common]).add_argument("file")
    sub.add_parser("fsp", parents=[common]).add_argument("file")
    p = sub.add_parser("verify", parents=[common, cut])
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("file")
    sub.add_parser("dot", parents=[common, cut]).add_argument("file")
    p = sub.add_parser("fixtures", parents=[common])
    p.add_argument("directory", nargs="?", default="fixtures")
    return parser


def _emit(args, command, code, report, text, out):
    if args.json or text is None:
        doc = {"schema": SCHEMA, "command": command, "exit_code": code}
        if not args.stable:
            doc["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        doc.update(report)
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        g = guard_from(args)
        args.fpp_guard = g if g is not None else fp.FPP_GUARD
        args.coherence_guard = g if g is not None else COHERENCE_GUARD
        code, report, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"crosscut: error: {exc}", file=sys.stderr)
        return 2
    except (HypothesisViolated, Inconclusive) as exc:
        kind = "hypothesis violated" if isinstance(exc, HypothesisViolated) else "inconclusive"
        report = {"holds": None, "error": kind, "message": str(exc),
                  "witness": _witness_json(args, exc.witness),
                  "note": fp.HOMOLOGY_SUBSTITUTION}
        _emit(args, args.command, 2, report,
              f"{kind}: {exc}\n  witness: {json.dumps(report['witness'])}\n", out)
        return 2
    except CrosscutError as exc:
        print(f"crosscut: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, args.command, code, report, text, out)
    return code


def _witness_json(args, w):
    if isinstance(w, frozenset):
        try:
            P = load_poset(args.file)
            return labels_of(P, w)
        except (UsageError, AttributeError):
            return sorted(w)
    if isinstance(w, dict):
        return {k: _witness_json(args, v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_witness_json(args, v) for v in w]
    return w


__all__ = ["main", "build_parser"]
