"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 formula inapplicable, 3 size guard,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from hgcount import formula, oracle
from hgcount.group import DEFAULT_MAX_SIZE, MklParams, SizeGuardError, TypeTag, aut_order
from hgcount.holomorph import hol_size, order_census
from hgcount.numtheory import coprime_factorizations

EXIT_OK, EXIT_USAGE, EXIT_INAPPLICABLE, EXIT_GUARD, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_hol_size: int = DEFAULT_MAX_SIZE
    output_format: str = "text"
    parallelism: int = 1
    allow_slow: bool = False

    def __post_init__(self):
        if self.max_hol_size < 1:
            raise UsageError("--max-hol-size must be positive")
        if self.output_format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.parallelism < 0:
            raise UsageError("--parallelism must be non-negative")

    @property
    def guard(self) -> int | None:
        return None if self.allow_slow else self.max_hol_size

    @property
    def workers(self) -> int:
        return oracle.resolve_workers(self.parallelism)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_type(text: str, n: int | None = None) -> MklParams:
    """Parse ``"k,l"``, ``"cyclic"`` or ``"dihedral"`` (the aliases need N)."""
    text = text.strip().lower()
    if text in ("cyclic", "dihedral"):
        if n is None:
            raise UsageError(f"{text!r} needs N (give --n or a numeric partner type)")
        return MklParams.cyclic(n) if text == "cyclic" else MklParams.dihedral(n)
    try:
        k, l = (int(part) for part in text.split(","))
        return MklParams(k, l)
    except ValueError as exc:
        raise UsageError(f"bad group type {text!r}: expected k,l with k and l odd ({exc})") from None


def _numeric_n(*texts: str) -> int | None:
    for text in texts:
        if text and "," in text:
            return parse_type(text).n
    return None


def _odd_n(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise UsageError(f"N must be an odd positive integer, got {n}")
    return n


def _mtypes(n: int) -> list[MklParams]:
    return [MklParams(k, l) for k, l in coprime_factorizations(n)]


def _kl(p: MklParams) -> dict:
    return {"k": p.k, "l": p.l}


def _tag_json(tag: TypeTag) -> dict:
    out = {"type": str(tag)}
    if tag.is_mtype:
        out |= {"k": tag.k, "l": tag.l}
    else:
        out["order_profile"] = [list(pair) for pair in tag.profile]
    return out


def _dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


PAIR_COLUMNS = ["n", "gamma_k", "gamma_l", "g_k", "g_l", "e_prime", "e", "status"]


def _pair_entry(gamma: MklParams, g: MklParams) -> dict:
    try:
        report = formula.count_report(gamma, g)
    except formula.PreconditionError as exc:
        return {"g": _kl(g), "e": None, "e_prime": None, "status": "inapplicable", "reason": str(exc)}
    return {"g": _kl(g), "e": report.e, "e_prime": report.e_prime, "status": "ok"}


# -- subcommands ---------------------------------------------------------------


def cmd_count(args, cfg: RunConfig) -> tuple[str, int]:
    n = args.n or _numeric_n(args.gamma, args.type)
    gamma, g = parse_type(args.gamma, n), parse_type(args.type, n)
    try:
        report = formula.count_report(gamma, g)
    except formula.PreconditionError as exc:
        print(f"formula inapplicable: {exc}", file=sys.stderr)
        if cfg.output_format == "json":
            return _dump_json({"gamma": _kl(gamma), "g": _kl(g), "status": "inapplicable",
                               "hypothesis": exc.hypothesis, "reason": str(exc)}), EXIT_INAPPLICABLE
        return "", EXIT_INAPPLICABLE
    if cfg.output_format == "json":
        out = _dump_json({
            "gamma": _kl(gamma), "g": _kl(g), "n": gamma.n,
            "e": report.e, "e_prime": report.e_prime,
            "preconditions_used": report.preconditions_used, "status": "ok",
        })
    elif cfg.output_format == "csv":
        out = _csv(PAIR_COLUMNS, [[gamma.n, gamma.k, gamma.l, g.k, g.l, report.e_prime, report.e, "ok"]])
    else:
        out = "\n".join([
            f"Gamma = {gamma}, G = {g}, N = {gamma.n}",
            f"e  = {report.e}",
            f"e' = {report.e_prime}",
            "preconditions used:",
            *(f"  - {p}" for p in report.preconditions_used),
        ])
    return out, EXIT_OK


def cmd_table(args, cfg: RunConfig) -> tuple[str, int]:
    n = _odd_n(args.n)
    types = _mtypes(n)
    rows = [{"gamma": _kl(gamma), "entries": [_pair_entry(gamma, g) for g in types]} for gamma in types]
    if cfg.output_format == "json":
        return _dump_json({"N": n, "rows": rows}), EXIT_OK
    if cfg.output_format == "csv":
        return _csv(PAIR_COLUMNS, [
            [n, r["gamma"]["k"], r["gamma"]["l"], e["g"]["k"], e["g"]["l"], e["e_prime"], e["e"], e["status"]]
            for r in rows for e in r["entries"]
        ]), EXIT_OK
    width = max(8, *(len(str(t)) for t in types))
    lines = [f"e(Gamma, G) for N = {n}; rows Gamma, columns G ('-' = formula inapplicable)",
             " " * width + "".join(f"{str(t):>{width + 2}}" for t in types)]
    for gamma, r in zip(types, rows):
        cells = ["-" if e["status"] != "ok" else str(e["e"]) for e in r["entries"]]
        lines.append(f"{str(gamma):<{width}}" + "".join(f"{c:>{width + 2}}" for c in cells))
    return "\n".join(lines), EXIT_OK


def _inventory(g: MklParams, cfg: RunConfig, dump: bool) -> dict:
    subs = oracle.find_regular_subgroups(g, cfg.guard, cfg.workers)
    counts: dict[TypeTag, int] = {}
    for s in subs:
        counts[s.type_tag] = counts.get(s.type_tag, 0) + 1
    entry = {
        "g": _kl(g),
        "hol_size": hol_size(g),
        "total": len(subs),
        "counts": [_tag_json(tag) | {"count": c} for tag, c in sorted(counts.items(), key=lambda kv: kv[0].sort_key())],
        "other_bucket": sum(c for tag, c in counts.items() if not tag.is_mtype),
    }
    if dump:
        entry["subgroups"] = [{"type": str(s.type_tag), "elements": [list(key) for key in s.signature]} for s in subs]
    return entry


def cmd_oracle(args, cfg: RunConfig) -> tuple[str, int]:
    if args.g is None and args.n is None:
        raise UsageError("give --g or --n")
    groups = [parse_type(args.g, args.n)] if args.g else _mtypes(_odd_n(args.n))
    invs = [_inventory(g, cfg, args.dump) for g in groups]
    if cfg.output_format == "json":
        return _dump_json({"inventories": invs}), EXIT_OK
    if cfg.output_format == "csv":
        return _csv(["g_k", "g_l", "type", "count"], [
            [inv["g"]["k"], inv["g"]["l"], c["type"], c["count"]] for inv in invs for c in inv["counts"]
        ]), EXIT_OK
    lines = []
    for inv in invs:
        g = MklParams(**inv["g"])
        lines.append(f"Hol({g}): |Hol| = {inv['hol_size']}, {inv['total']} regular subgroups")
        lines += [f"  {c['type']}: {c['count']}" for c in inv["counts"]]
        for s in inv.get("subgroups", []):
            lines.append(f"  [{s['type']}] " + " ".join("(%d,%d,%d,%d)" % tuple(e) for e in s["elements"]))
    return "\n".join(lines), EXIT_OK


def verify_order(n: int, cfg: RunConfig, sample: int = 25, seed: int = 0) -> dict:
    """Compare formula and oracle on every M-type pair of order 2N, and run
    the structural and appendix-equation checks on regular embeddings."""
    rng = random.Random(seed)
    types = _mtypes(n)
    pairs, structural = [], []
    for g in types:
        subs = oracle.find_regular_subgroups(g, cfg.guard, cfg.workers)
        bad_subgroups = [str(s.signature[:2]) for s in subs
                         if not all(oracle.is_regular_subgroup(g, s).values())]
        for gamma in types:
            e_prime_o = oracle.e_prime_oracle(gamma, g, cfg.guard, cfg.workers)
            e_o = oracle.e_oracle(gamma, g, cfg.guard, cfg.workers)
            entry = {"gamma": _kl(gamma), "g": _kl(g), "e_oracle": e_o, "e_prime_oracle": e_prime_o}
            try:
                entry |= {"e_formula": formula.e_formula(gamma, g),
                          "e_prime_formula": formula.e_prime_formula(gamma, g), "status": "ok"}
                entry["match"] = entry["e_formula"] == e_o and entry["e_prime_formula"] == e_prime_o
            except formula.PreconditionError as exc:
                entry |= {"status": "inapplicable", "reason": str(exc), "match": None}
                pairs.append(entry)
                continue
            pairs.append(entry)
            records = oracle.enumerate_regular_embeddings(gamma, g, cfg.guard)
            chosen = records if sample <= 0 or len(records) <= sample else rng.sample(records, sample)
            claim_failures = sum(not all(oracle.structural_claims(r).values()) for r in records)
            appendix_failures = sum(not oracle.verify_appendix_equations(r).passed for r in chosen)
            structural.append({
                "gamma": _kl(gamma), "g": _kl(g),
                "embeddings": len(records),
                "expected_embeddings": e_prime_o * aut_order(gamma),
                "structural_failures": claim_failures,
                "appendix_checked": len(chosen),
                "appendix_failures": appendix_failures,
                "invalid_subgroups": len(bad_subgroups),
            })
    counts_ok = all(p["match"] is not False for p in pairs)
    structure_ok = all(
        s["embeddings"] == s["expected_embeddings"]
        and not (s["structural_failures"] or s["appendix_failures"] or s["invalid_subgroups"])
        for s in structural
    )
    return {"N": n, "pairs": pairs, "structural": structural,
            "counts_match": counts_ok, "structure_ok": structure_ok, "all_match": counts_ok and structure_ok}


def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    report = verify_order(_odd_n(args.n), cfg, args.sample)
    code = EXIT_OK if report["all_match"] else EXIT_MISMATCH
    if cfg.output_format == "json":
        return _dump_json(report), code
    if cfg.output_format == "csv":
        return _csv(["n", "gamma_k", "gamma_l", "g_k", "g_l", "e_prime_formula", "e_prime_oracle",
                     "e_formula", "e_oracle", "status", "match"], [
            [report["N"], p["gamma"]["k"], p["gamma"]["l"], p["g"]["k"], p["g"]["l"],
             p.get("e_prime_formula"), p["e_prime_oracle"], p.get("e_formula"), p["e_oracle"],
             p["status"], p["match"]] for p in report["pairs"]
        ]), code
    lines = [f"verify N = {report['N']}"]
    for p in report["pairs"]:
        gamma, g = MklParams(**p["gamma"]), MklParams(**p["g"])
        if p["status"] == "ok":
            mark = "ok" if p["match"] else "MISMATCH"
            lines.append(f"  {gamma} -> Hol({g}): e' {p['e_prime_formula']}/{p['e_prime_oracle']}"
                         f"  e {p['e_formula']}/{p['e_oracle']}  {mark}")
        else:
            lines.append(f"  {gamma} -> Hol({g}): oracle e' {p['e_prime_oracle']}, e {p['e_oracle']}"
                         f"  (formula inapplicable: {p['reason']})")
    for s in report["structural"]:
        lines.append(f"  embeddings {MklParams(**s['gamma'])} -> Hol({MklParams(**s['g'])}): "
                     f"{s['embeddings']} (expected {s['expected_embeddings']}), "
                     f"structural failures {s['structural_failures']}, "
                     f"appendix failures {s['appendix_failures']}/{s['appendix_checked']}")
    lines.append("ALL MATCH" if report["all_match"] else "MISMATCH FOUND")
    return "\n".join(lines), code


def brace_report(gamma: MklParams, cfg: RunConfig) -> list[dict]:
    rows = []
    for tag, counts in oracle.skew_brace_classes(gamma, cfg.guard, cfg.workers).items():
        row = _tag_json(tag) | {"subgroups": counts.subgroup_count, "orbits": counts.orbit_count}
        try:
            if not tag.is_mtype:
                raise formula.PreconditionError(formula.COPRIMALITY, f"{tag} is not an M-type")
            row["formula"] = formula.skew_brace_formula(gamma, tag.params())
            row["status"] = "ok"
            row["orbits_equal_formula"] = row["formula"] == counts.orbit_count
        except formula.PreconditionError as exc:
            row |= {"formula": None, "status": "inapplicable", "reason": str(exc), "orbits_equal_formula": None}
        rows.append(row)
    return rows


def cmd_braces(args, cfg: RunConfig) -> tuple[str, int]:
    gamma = parse_type(args.gamma, args.n)
    rows = brace_report(gamma, cfg)
    if cfg.output_format == "json":
        return _dump_json({"additive": _kl(gamma), "types": rows}), EXIT_OK
    if cfg.output_format == "csv":
        return _csv(["type", "subgroups", "orbits", "formula", "orbits_equal_formula"], [
            [r["type"], r["subgroups"], r["orbits"], r["formula"], r["orbits_equal_formula"]] for r in rows
        ]), EXIT_OK
    lines = [f"skew braces with additive group {gamma}"]
    for r in rows:
        f = "inapplicable" if r["status"] != "ok" else r["formula"]
        flag = "" if r["orbits_equal_formula"] is None else ("  equal" if r["orbits_equal_formula"] else "  DIFFERS")
        lines.append(f"  x-type {r['type']}: subgroups {r['subgroups']}, orbits {r['orbits']}, formula {f}{flag}")
    return "\n".join(lines), EXIT_OK


def cmd_orders(args, cfg: RunConfig) -> tuple[str, int]:
    g = parse_type(args.g, args.n)
    census = order_census(g, cfg.guard)
    if cfg.output_format == "json":
        return _dump_json({"g": _kl(g), "hol_size": hol_size(g),
                           "census": [{"order": o, "count": c} for o, c in census.items()]}), EXIT_OK
    if cfg.output_format == "csv":
        return _csv(["order", "count"], [[o, c] for o, c in census.items()]), EXIT_OK
    lines = [f"element orders in Hol({g}), |Hol| = {hol_size(g)}"]
    lines += [f"  {o:>4}: {c}" for o, c in census.items()]
    return "\n".join(lines), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", default="text", choices=["text", "json", "csv"])
    common.add_argument("--max-hol-size", type=int, default=DEFAULT_MAX_SIZE,
                        help="refuse holomorphs larger than this (default %(default)s)")
    common.add_argument("-j", "--parallelism", type=int, default=1, help="oracle worker processes, 0 = auto")
    common.add_argument("--allow-slow", action="store_true", help="ignore the size guard")

    parser = _Parser(prog="hgcount", description="Count Hopf-Galois structures between groups D_2k x C_l.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="formula counts e and e' for one pair")
    p.add_argument("--gamma", required=True, help="Galois group as k,l (or cyclic/dihedral)")
    p.add_argument("--type", required=True, help="type G as k,l (or cyclic/dihedral)")
    p.add_argument("--n", type=int, help="N, needed when both groups are given by name")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="e(Gamma, G) over all M-types of order 2N")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("oracle", parents=[common], help="regular subgroup inventory of Hol(G)")
    p.add_argument("--g", help="G as k,l")
    p.add_argument("--n", type=int, help="all M-types of order 2N (or N for a named --g)")
    p.add_argument("--dump", action="store_true", help="list every subgroup's elements")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="formula vs oracle at order 2N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, default=25,
                   help="embeddings per pair checked against the appendix equations, 0 = all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("braces", parents=[common], help="skew braces with additive group Gamma")
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_braces)

    p = sub.add_parser("orders", parents=[common], help="element-order census of Hol(G)")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_orders)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.max_hol_size, args.output_format, args.parallelism, args.allow_slow)
        out, code = args.func(args, cfg)
    except UsageError as exc:
        print(f"hgcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeGuardError as exc:
        print(f"hgcount: {exc}; rerun with --allow-slow or a larger --max-hol-size", file=sys.stderr)
        return EXIT_GUARD
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
