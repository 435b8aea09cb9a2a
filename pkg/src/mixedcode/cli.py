"""Command-line front end.

Exit codes: 0 all checks pass, 1 mismatch, 2 usage or side-condition error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .analysis import (KIND_TABLE, ClosedFormParams, certify, closed_form_distribution,
                       predicted_dimension, predicted_length, predicted_weight_count,
                       weight_distribution)
from .applications import (is_connected, massey_enumerate_minimal_access, massey_report, shi_graph,
                           swrg_predicted, ta3_predicted, walk_regularity_check)
from .complexes import (KINDS, DefiningSetSpec, SupportSet, build_defining_set,
                        check_side_conditions, valid_triples)
from .construct import code_for_kind, ring_spanning_matrix, write_matrix_text
from .errors import MismatchFound, MixedCodeError, TooLarge

SCHEMA = "mixedcode/1"
ALL_KINDS = KINDS + ("N2bar", "N4bar")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class JobSpec:
    command: str
    kind: str | None = None
    q: int | None = None
    m: int | None = None
    A: str | None = None
    B: str | None = None
    C: str | None = None
    out: str | None = None
    format: str = "json"
    budget: int | None = None
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def supports(self):
        if None in (self.kind, self.q, self.m, self.A, self.B, self.C):
            raise ValueError("--kind, --q, --m, --A, --B and --C are required")
        A, B, C = (SupportSet.parse(s, self.m) for s in (self.A, self.B, self.C))
        return A, B, C

    def validate(self):
        A, B, C = self.supports()
        check_side_conditions(self.kind, self.m, A, B, C, self.q)
        return A, B, C

    def echo(self) -> dict:
        return {k: getattr(self, k) for k in ("kind", "q", "m", "A", "B", "C", "budget", "threads")
                if getattr(self, k) is not None}


def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _emit(obj: dict, spec: JobSpec, text: str | None = None) -> None:
    body = text if text is not None else json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _report(spec: JobSpec, **kw) -> dict:
    return {"schema": SCHEMA, "command": spec.command, "input": spec.echo(), **kw}


# ---------------------------------------------------------------------------
# commands


def cmd_construct(spec: JobSpec) -> int:
    A, B, C = spec.validate()
    code = code_for_kind(spec.kind, spec.q, spec.m, A, B, C)
    params = dict(n=code.n, rows=int(code.G.shape[0]), rank=code.k,
                  predicted_length=predicted_length(spec.kind, spec.q, spec.m, A, B, C),
                  predicted_dimension=predicted_dimension(spec.kind, spec.q, spec.m, A, B, C))
    if spec.kind in KINDS:
        D = build_defining_set(DefiningSetSpec(spec.kind, spec.q, spec.m, A, B, C))
        params["defining_set_size"] = len(D)
        ring = ring_spanning_matrix(D)
    else:
        ring = None
    if spec.format == "matrix-text":
        text = write_matrix_text(code.G, spec.q, spec.m)
        if ring is not None and spec.out:
            with open(spec.out + ".ring", "w") as fh:
                write_matrix_text(ring.encoded_matrix(), spec.q, spec.m, fh)
        _emit({}, spec, text)
        sys.stderr.write(json.dumps(_report(spec, params=params), sort_keys=True) + "\n")
    else:
        rep = _report(spec, params=params, gray_matrix=code.G.tolist())
        if ring is not None:
            rep["ring_matrix"] = ring.encoded_matrix().tolist()
        _emit(rep, spec)
    return EXIT_OK


def _distribution_json(d) -> dict:
    return {str(w): f for w, f in d.items()}


def cmd_analyze(spec: JobSpec) -> int:
    A, B, C = spec.validate()
    code = code_for_kind(spec.kind, spec.q, spec.m, A, B, C)
    dist = weight_distribution(code, budget=spec.budget, threads=spec.threads)
    if spec.format == "csv":
        _emit({}, spec, dist.to_csv())
        return EXIT_OK
    cert = certify(code, dist)
    _emit(_report(spec, params=dict(n=code.n, k=code.k, d=dist.min_weight),
                  distribution=_distribution_json(dist), certificates=cert.to_json()), spec)
    return EXIT_OK


def verify_instance(kind: str, q: int, m: int, A, B, C, budget=None, threads=1, table=None,
                    printed=False, certificates=True) -> dict:
    """Measured against predicted: distribution, length, dimension, t-count clause."""
    table = table or KIND_TABLE[kind]
    code = code_for_kind(kind, q, m, A, B, C)
    dist = weight_distribution(code, budget=budget, threads=threads)
    pred = closed_form_distribution(ClosedFormParams.of(table, q, m, A, B, C, printed))
    checks = {
        "distribution": dict(pass_=dist == pred, diff={str(w): list(v) for w, v in dist.diff(pred).items()}),
        "length": dict(pass_=code.n == predicted_length(kind, q, m, A, B, C), measured=code.n),
        "dimension": dict(pass_=code.k == predicted_dimension(kind, q, m, A, B, C), measured=code.k),
    }
    clause = predicted_weight_count(table, q, m, A, B, C)
    out = dict(
        params=dict(n=code.n, k=code.k, d=dist.min_weight if dist.t else None),
        measured=_distribution_json(dist), predicted=_distribution_json(pred),
        checks={k: {("pass" if kk == "pass_" else kk): vv for kk, vv in v.items()} for k, v in checks.items()},
        # informational: the clauses do not account for merged or empty rows
        t_clause=dict(measured=dist.t, clause=clause, pass_=dist.t == clause),
        status="PASS" if all(v["pass_"] for v in checks.values()) else "MISMATCH",
    )
    out["t_clause"]["pass"] = out["t_clause"].pop("pass_")
    if certificates:
        out["certificates"] = certify(code, dist).to_json()
    return out


def cmd_verify(spec: JobSpec) -> int:
    A, B, C = spec.validate()
    res = verify_instance(spec.kind, spec.q, spec.m, A, B, C, spec.budget, spec.threads,
                          spec.extra.get("table"), spec.extra.get("printed", False))
    _emit(_report(spec, **res), spec)
    if res["status"] != "PASS":
        raise MismatchFound(json.dumps(res["checks"]["distribution"]["diff"]))
    return EXIT_OK


def _int_list(text) -> list[int]:
    if text is None or text == "":
        return []
    return [int(t) for t in str(text).split(",") if t.strip()]


def cmd_sweep(spec: JobSpec) -> int:
    qs = _int_list(spec.extra.get("qs"))
    ms = _int_list(spec.extra.get("ms"))
    kinds = [k for k in str(spec.extra.get("kinds") or ",".join(KINDS)).split(",") if k]
    keep = spec.extra.get("keep_going", False)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "q", "m", "A", "B", "C", "status", "n", "k", "d", "t", "t_clause"])
    counts = {"PASS": 0, "MISMATCH": 0, "TOOLARGE": 0, "ERROR": 0}
    code = EXIT_OK
    for q in qs:
        for m in ms:
            for kind in kinds:
                for A, B, C in valid_triples(kind, m, q):
                    row = [kind, q, m, str(A), str(B), str(C)]
                    try:
                        res = verify_instance(kind, q, m, A, B, C, spec.budget, spec.threads, certificates=False)
                        p = res["params"]
                        w.writerow(row + [res["status"], p["n"], p["k"], p["d"], res["t_clause"]["measured"],
                                          res["t_clause"]["clause"]])
                        counts[res["status"]] += 1
                        if res["status"] != "PASS":
                            code = max(code, EXIT_MISMATCH)
                            if not keep:
                                raise _Stop(EXIT_MISMATCH)
                    except TooLarge:
                        w.writerow(row + ["TOOLARGE", "", "", "", "", ""])
                        counts["TOOLARGE"] += 1
                        code = max(code, EXIT_BUDGET)
                        if not keep:
                            return _finish_sweep(spec, buf, counts, EXIT_BUDGET)
                    except _Stop as s:
                        return _finish_sweep(spec, buf, counts, s.code)
    return _finish_sweep(spec, buf, counts, code)


class _Stop(Exception):
    def __init__(self, code):
        self.code = code


def _finish_sweep(spec: JobSpec, buf: io.StringIO, counts: dict, code: int) -> int:
    if spec.format == "json":
        rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
        _emit(_report(spec, counts=counts, instances=rows), spec)
    else:
        _emit({}, spec, buf.getvalue())
    sys.stderr.write(json.dumps(counts, sort_keys=True) + "\n")
    return code


def cmd_graph(spec: JobSpec) -> int:
    if not spec.extra.get("shi"):
        raise ValueError("graph currently supports the --shi family only")
    m = spec.m
    c = int(spec.extra.get("c") or 1)
    ell = int(spec.extra.get("ell") or 3)
    g = shi_graph(m, c, spec.budget or 2**16)
    connected = is_connected(g)
    measured = walk_regularity_check(g, ell, spec.threads)
    predicted = swrg_predicted(m, c, ell)
    ok = (connected and measured.is_swrg and measured.walk_triple() == predicted.walk_triple()
          and measured.spectrum == predicted.spectrum and measured.degree == predicted.degree)
    if spec.extra.get("edges"):
        with open(spec.extra["edges"], "w") as fh:
            g.write_edge_list(fh)
    _emit(_report(spec, family=dict(q=4, m=m, c=c), vertex_count=g.vertex_count, degree=g.degree,
                  connected=connected, measured=measured.to_json(), predicted=predicted.to_json(),
                  status="PASS" if ok else "MISMATCH"), spec)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_massey(spec: JobSpec) -> int:
    spec.kind = spec.kind or "S3"
    if spec.kind != "S3":
        raise ValueError("massey analyses the S3 Gray image")
    A, B, C = spec.validate()
    code = code_for_kind("S3", spec.q, spec.m, A, B, C)
    secret = int(spec.extra.get("secret_column") or 0)
    perm = None
    if secret:
        perm = [secret] + [i for i in range(code.n) if i != secret]
    rep = massey_report(code, perm)
    x0 = code.G[:, secret]
    pred = ta3_predicted(spec.q, spec.m, A, B, C, x0)
    checks = dict(
        participants=rep.participants == pred["participants"],
        minimal_access_sets=rep.minimal_access_sets == pred["minimal_access_sets"],
        dictatorial=len(rep.dictatorial) == pred["dictatorial"],
    )
    out = dict(report=rep.to_json(), predicted=pred)
    if rep.participants <= 20:
        sets = massey_enumerate_minimal_access(code, perm)
        common = frozenset.intersection(*sets) if sets else frozenset()
        out["brute_force"] = dict(minimal_access_sets=len(sets), dictatorial=sorted(common))
        checks["brute_force_count"] = len(sets) == rep.minimal_access_sets
        checks["brute_force_dictatorial"] = sorted(common) == list(rep.dictatorial)
    ok = all(checks.values())
    _emit(_report(spec, **out, checks=checks, status="PASS" if ok else "MISMATCH"), spec)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = dict(construct=cmd_construct, analyze=cmd_analyze, verify=cmd_verify, sweep=cmd_sweep,
                graph=cmd_graph, massey=cmd_massey)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mixedcode", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        sp.add_argument("--config", help="key=value file; flags override it")
        if instance:
            sp.add_argument("--kind", choices=ALL_KINDS)
            sp.add_argument("--q", type=int)
            sp.add_argument("--m", type=int)
            sp.add_argument("--A")
            sp.add_argument("--B")
            sp.add_argument("--C")
        sp.add_argument("--out", help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "csv", "matrix-text"))
        sp.add_argument("--budget", type=int, help="cap on codewords enumerated")
        sp.add_argument("--threads", type=int)

    common(sub.add_parser("construct", help="build spanning matrices"))
    common(sub.add_parser("analyze", help="weight distribution and certificates"))
    v = sub.add_parser("verify", help="compare enumeration with the closed form")
    common(v)
    v.add_argument("--table", choices=("T1", "T2", "T3", "T4", "T6", "T7"), help="override the table")
    v.add_argument("--printed", action="store_true", default=None, help="use the tables exactly as printed")
    s = sub.add_parser("sweep", help="verify every valid support triple in a range")
    common(s, instance=False)
    s.add_argument("--qs", help="comma list of field sizes")
    s.add_argument("--ms", help="comma list of m values")
    s.add_argument("--kinds", help="comma list of kinds (default S1..S4)")
    s.add_argument("--keep-going", action="store_true", default=None)
    g = sub.add_parser("graph", help="coset graph walk-regularity")
    common(g)
    g.add_argument("--shi", action="store_true", default=None)
    g.add_argument("--c", type=int)
    g.add_argument("--ell", type=int)
    g.add_argument("--edges", help="write the edge list here")
    ms = sub.add_parser("massey", help="secret sharing on the dual of the S3 Gray image")
    common(ms)
    ms.add_argument("--secret-column", type=int, help="column used as h0 (default 0)")
    return p


_SPEC_KEYS = ("kind", "q", "m", "A", "B", "C", "out", "format", "budget", "threads")
_INT_KEYS = {"q", "m", "budget", "threads", "c", "ell", "secret_column"}
_BOOL_KEYS = {"keep_going", "shi", "printed"}


def spec_from_args(ns: argparse.Namespace) -> JobSpec:
    values = {k: v for k, v in vars(ns).items() if v is not None}
    if getattr(ns, "config", None):
        for k, v in read_config(ns.config).items():
            if k in _INT_KEYS:
                v = int(v)
            elif k in _BOOL_KEYS:
                v = v.lower() in ("1", "true", "yes", "on")
            values.setdefault(k, v)
    values.pop("config", None)
    command = values.pop("command")
    kw = {k: values.pop(k) for k in _SPEC_KEYS if k in values}
    if command == "sweep":
        kw.setdefault("format", "csv")
    spec = JobSpec(command, **kw)
    spec.extra = values
    return spec


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        spec = spec_from_args(ns)
        return COMMANDS[spec.command](spec)
    except MismatchFound as e:
        sys.stderr.write(f"mismatch: {e}\n")
        return EXIT_MISMATCH
    except TooLarge as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (MixedCodeError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        sys.stderr.write(f"io error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
