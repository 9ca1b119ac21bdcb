"""Command line front end: document parser, random instances, reports and
the verification harness."""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .analysis import (DEFAULT_SAMPLES, Report, analyze, has_coordinate_complete_m_full_property,
                       is_m_full, m_full_with, monomial_strings)
from .field import DEFAULT_PRIME, Rng, check_modulus
from .gin import DEFAULT_TRIALS, gin
from .groebner import MonomialIdeal
from .homology import koszul_betti, homological_profile
from .ideal_ops import (INFINITE, Ideal, NonHomogeneousGenerator, colon_length, hilbert, mu,
                        reduce_mod_linear, type_of)
from .monomial import m_index, minimalize
from .poly import (ExponentOverflow, PolyRing, Polynomial, PolynomialSyntaxError, UnknownVariable,
                   exponents_of_degree, format_polynomial, parse_polynomial, random_linear_change,
                   random_linear_form)

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2
DEFAULT_MAX_DEGREE = 12


class DocumentError(ValueError):
    """Malformed ideal document; carries a 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        where = ""
        if self.line is not None:
            where = "line %d" % self.line
            if self.column is not None:
                where += ", column %d" % self.column
            where += ": "
        return where + self.args[0]


class CharacteristicGuard(DocumentError):
    pass


class DegreeCap(DocumentError):
    pass


# ---------------------------------------------------------------------------
# documents

@dataclass
class IdealDocument:
    ring: PolyRing
    generators: list[Polynomial]
    lines: list[int] = field(default_factory=list)
    source: str = "<input>"

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def __eq__(self, other):
        return (isinstance(other, IdealDocument) and self.ring == other.ring
                and self.generators == other.generators)


_HEADER = re.compile(r"^ring\s+F\s*(\d+)\s*\[(.*)\]\s*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_document(text: str, *, field_override: int | None = None,
                   max_degree: int | None = DEFAULT_MAX_DEGREE, source: str = "<input>") -> IdealDocument:
    """Parse ``ring F<p> [v1, ...]`` / ``ideal`` / one generator per line."""
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, s) for no, s in lines if s]
    if not lines:
        raise DocumentError("empty document")
    no, head = lines[0]
    m = _HEADER.match(head)
    if not m:
        raise DocumentError("expected header 'ring F<p> [v1, v2, ...]'", no, 1)
    p = int(m.group(1)) if field_override is None else field_override
    try:
        check_modulus(p)
    except ValueError as exc:
        raise DocumentError(str(exc), no, head.index("F") + 1) from None
    names = [v.strip() for v in m.group(2).split(",")] if m.group(2).strip() else []
    if not names:
        raise DocumentError("ring needs at least one variable", no)
    for v in names:
        if not _NAME.match(v):
            raise DocumentError("bad variable name %r" % v, no, head.index(v) + 1)
    if len(set(names)) != len(names):
        raise DocumentError("duplicate variable names", no)
    ring = PolyRing(len(names), p, names)
    if len(lines) < 2 or lines[1][1] != "ideal":
        raise DocumentError("expected 'ideal' after the ring header",
                            lines[1][0] if len(lines) > 1 else no, 1)
    gens, where = [], []
    for no, s in lines[2:]:
        offset = text.splitlines()[no - 1].index(s[0]) + 1
        try:
            f = parse_polynomial(ring, s)
        except PolynomialSyntaxError as exc:
            col = offset + (exc.column - 1 if exc.column else 0)
            if isinstance(exc, UnknownVariable):
                raise DocumentError("unknown variable: %s" % exc, no, col) from None
            raise DocumentError(str(exc), no, col) from None
        except ExponentOverflow as exc:
            _check_degree(exc.degree, p, max_degree, no)
            raise DocumentError(str(exc), no, offset) from None
        if not f.terms:
            continue
        if not f.is_homogeneous():
            raise NonHomogeneousGenerator("line %d: generator %s is not homogeneous"
                                          % (no, format_polynomial(f)))
        _check_degree(f.degree(), p, max_degree, no)
        gens.append(f)
        where.append(no)
    return IdealDocument(ring, gens, where, source)


def _check_degree(d: int, p: int, max_degree: int | None, line: int) -> None:
    if d * 100 > p:
        raise CharacteristicGuard(
            "generator degree %d is too large for characteristic %d (limit p/100)" % (d, p), line)
    if max_degree is not None and d > max_degree:
        raise DegreeCap("generator degree %d exceeds --max-degree %d" % (d, max_degree), line)


def format_document(doc: IdealDocument) -> str:
    out = ["ring F%d [%s]" % (doc.ring.p, ", ".join(doc.ring.names)), "ideal"]
    out += [format_polynomial(g) for g in doc.generators]
    return "\n".join(out) + "\n"


def document_of(I: Ideal) -> IdealDocument:
    return IdealDocument(I.ring, list(I.gens))


# ---------------------------------------------------------------------------
# random instances

def random_graded_ideal(rng: Rng, n: int, num_gens: int, deg_lo: int, deg_hi: int,
                        p: int = DEFAULT_PRIME) -> Ideal:
    if n < 1 or deg_lo < 1 or deg_hi < deg_lo or num_gens < 1:
        raise ValueError("bad parameters for a random graded ideal")
    ring = PolyRing(n, p)
    gens = []
    for _ in range(num_gens):
        d = rng.integer(deg_lo, deg_hi)
        terms = {ring.pack(e): rng.element(p) for e in exponents_of_degree(n, d)}
        f = Polynomial(ring, {k: c for k, c in terms.items() if c})
        if f.terms:
            gens.append(f)
    if not gens:
        gens.append(ring.gen(0) ** deg_lo)
    return Ideal(ring, gens)


def random_monomial(rng: Rng, n: int, d: int) -> tuple[int, ...]:
    e = [0] * n
    for _ in range(d):
        e[rng.integer(0, n - 1)] += 1
    return tuple(e)


def random_monomial_ideal(rng: Rng, n: int, num_gens: int, max_deg: int,
                          min_deg: int = 1) -> MonomialIdeal:
    if n < 1 or not 1 <= min_deg <= max_deg or num_gens < 1:
        raise ValueError("bad parameters for a random monomial ideal")
    return MonomialIdeal(n, [random_monomial(rng, n, rng.integer(min_deg, max_deg))
                             for _ in range(num_gens)])


def stable_closure(n: int, gens: Sequence[Sequence[int]]) -> MonomialIdeal:
    """Smallest stable ideal containing ``gens``: close under u -> x_i u / x_m(u)."""
    seen = {tuple(g) for g in gens}
    todo = list(seen)
    while todo:
        u = todo.pop()
        if not any(u):
            continue
        m = m_index(u) - 1
        for i in range(m):
            v = list(u)
            v[m] -= 1
            v[i] += 1
            v = tuple(v)
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return MonomialIdeal(n, minimalize(seen))


def random_stable_ideal(rng: Rng, n: int, num_gens: int, max_deg: int) -> MonomialIdeal:
    if n < 1 or max_deg < 1 or num_gens < 1:
        raise ValueError("bad parameters for a random stable ideal")
    seeds = [random_monomial(rng, n, rng.integer(1, max_deg)) for _ in range(num_gens)]
    return stable_closure(n, seeds)


KINDS = ("graded", "monomial", "stable", "stable+change")


def random_instance(rng: Rng, kind: str, n: int, max_gens: int, max_deg: int,
                    p: int = DEFAULT_PRIME) -> Ideal:
    if kind not in KINDS:
        raise ValueError("unknown instance kind %r" % kind)
    ring = PolyRing(n, p)
    k = rng.integer(1, max_gens)
    lo = min(max_deg, 1 if rng.integer(0, 3) == 0 else 2)
    if kind == "graded":
        return random_graded_ideal(rng, n, k, lo, max_deg, p)
    if kind == "monomial":
        return Ideal.from_monomial_ideal(ring, random_monomial_ideal(rng, n, k, max_deg, lo))
    M = random_stable_ideal(rng, n, min(k, 3), max_deg)
    I = Ideal.from_monomial_ideal(ring, M)
    if kind == "stable+change":
        I = Ideal(ring, I.transform(random_linear_change(ring, rng)).gens)
    return I


# ---------------------------------------------------------------------------
# verification harness

FLAG_NAMES = Report.FLAGS

INVARIANTS = ("main_theorem", "mu_le_B", "t_differences", "colon_identity",
              "hilbert_preserved", "stable_coordinate", "type_of_full")


@dataclass
class InstanceResult:
    index: int
    kind: str
    n: int
    seed: int
    document: str
    flags: dict
    checks: dict       # invariant -> True/False/None (not applicable)
    retried: bool = False
    errors: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[str]:
        return sorted(k for k, v in self.checks.items() if v is False)


def _instance_checks(I: Ideal, rep: Report, rng: Rng, samples: int, trials: int,
                     kind: str) -> dict:
    checks: dict = {k: None for k in INVARIANTS}
    flags = list(rep.flags().values())
    checks["main_theorem"] = None if None in flags else len(set(flags)) == 1
    if rep.mu is not None and rep.B is not None:
        checks["mu_le_B"] = rep.mu <= rep.B
    ts = rep.tseq
    if ts is not None and rep.completely_m_full_B:
        mus = [0] + [mu(J).total if not J.is_zero() else 0 for J in ts.images]
        checks["t_differences"] = all(ts.values[i] == mus[i + 1] - mus[i]
                                      for i in range(len(ts.values)))
    # m I : z = I  iff  mu(I) = mu(I mod z) + l((I:z)/I)
    z = random_linear_form(I.ring, rng.child(1))
    lhs = m_full_with(I, z)
    bar = reduce_mod_linear(I, z)
    cl = colon_length(I, z)
    rhs = cl != INFINITE and mu(I).total == (mu(bar).total if not bar.is_zero() else 0) + cl
    checks["colon_identity"] = lhs == rhs
    g = rep.gin_result
    if g is not None:
        checks["hilbert_preserved"] = g.gin.hilbert_numerator() == I.numerator
        G = Ideal.from_monomial_ideal(I.ring, g.gin)
        if rep.m_full and is_m_full(G, rng.child(2), samples):
            checks["type_of_full"] = type_of(I) == type_of(G)
    if kind in ("monomial", "stable"):
        checks["stable_coordinate"] = (I.lead.is_stable()
                                       == has_coordinate_complete_m_full_property(I))
    return checks


def run_instance(args: tuple) -> InstanceResult:
    index, seed, ns, max_gens, max_deg, p, samples, trials = args
    root = Rng(seed).child(index)
    kind = KINDS[index % len(KINDS)]
    n = ns[root.integer(0, len(ns) - 1)]
    I = random_instance(root.child(0), kind, n, max_gens, max_deg, p)
    while I.is_zero() or I.is_unit():
        I = random_instance(root.fork(), kind, n, max_gens, max_deg, p)
    arng = root.child(1)
    rep = analyze(I, arng, samples, trials, betti=False)
    retried = False
    checks = _instance_checks(I, rep, root.child(2), samples, trials, kind)
    if checks["main_theorem"] is False or any(v is False for v in checks.values()):
        retried = True
        arng = root.child(3)
        rep = analyze(I, arng, samples, trials, betti=False)
        checks = _instance_checks(I, rep, root.child(4), samples, trials, kind)
    return InstanceResult(index, kind, n, arng.seed, format_document(document_of(I)),
                          rep.flags(), checks, retried, dict(rep.errors))


@dataclass
class VerificationSummary:
    seed: int
    trials: int
    results: list[InstanceResult]
    wall_seconds: float = 0.0

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if r.failed or r.errors]

    def flag_agreement(self) -> dict:
        out = {}
        for a in range(len(FLAG_NAMES)):
            for b in range(a + 1, len(FLAG_NAMES)):
                fa, fb = FLAG_NAMES[a], FLAG_NAMES[b]
                out["%s=%s" % (fa, fb)] = sum(r.flags[fa] == r.flags[fb] for r in self.results)
        return out

    def to_json_dict(self) -> dict:
        inv = {}
        for name in INVARIANTS:
            vals = [r.checks[name] for r in self.results if r.checks[name] is not None]
            inv[name] = {"checked": len(vals), "violations": sum(v is False for v in vals)}
        return {
            "seed": self.seed,
            "trials": self.trials,
            "kinds": {k: sum(r.kind == k for r in self.results) for k in KINDS},
            "flag_true_counts": {f: sum(bool(r.flags[f]) for r in self.results)
                                 for f in FLAG_NAMES},
            "flag_agreement": self.flag_agreement(),
            "invariants": inv,
            "retries": sum(r.retried for r in self.results),
            "failures": [{"index": r.index, "kind": r.kind, "seed": r.seed, "failed": r.failed,
                          "errors": r.errors, "flags": r.flags, "document": r.document}
                         for r in self.failures],
        }


def verify(seed: int, trials: int, ns: Sequence[int] = (2, 3, 4), max_gens: int = 5,
           max_deg: int = 4, p: int = DEFAULT_PRIME, samples: int = DEFAULT_SAMPLES,
           gin_trials: int = DEFAULT_TRIALS, jobs: int = 1) -> VerificationSummary:
    if trials < 1:
        raise ValueError("verify needs at least one trial")
    t0 = time.perf_counter()
    tasks = [(i, seed, tuple(ns), max_gens, max_deg, p, samples, gin_trials) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(run_instance, tasks))
    else:
        results = [run_instance(t) for t in tasks]
    return VerificationSummary(seed, trials, results, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# commands

def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _aligned(pairs: list[tuple[str, object]]) -> str:
    w = max(len(k) for k, _ in pairs)
    return "\n".join("%s : %s" % (k.ljust(w), v) for k, v in pairs)


def cmd_analyze(doc: IdealDocument, ns: argparse.Namespace) -> int:
    rep = analyze(doc.ideal(), Rng(ns.seed), ns.samples, ns.trials)
    d = rep.to_json_dict()
    rows = [(k, v) for k, v in d.items() if k not in ("ring", "betti", "errors")]
    rows.insert(0, ("ring", "F%d [%s]" % (doc.ring.p, ", ".join(doc.ring.names))))
    if rep.errors:
        rows.append(("errors", "; ".join("%s: %s" % kv for kv in sorted(rep.errors.items()))))
    text = _aligned([(k, _plain(v)) for k, v in rows])
    if rep.betti is not None:
        text += "\nbetti numbers of R/I:\n" + _betti_text(rep.betti)
    _emit(d, ns.json, text)
    return EXIT_INCONSISTENT if rep.consistent is False else EXIT_OK


def _plain(v) -> str:
    if isinstance(v, list):
        return ", ".join(str(x) for x in v)
    if v is None:
        return "-"
    return str(v)


def _betti_text(entries: list[list[int]]) -> str:
    from .homology import BettiTable
    return BettiTable({(i, j): v for i, j, v in entries}).format()


def cmd_gb(doc: IdealDocument, ns: argparse.Namespace) -> int:
    G = doc.ideal().gb
    polys = [format_polynomial(g) for g in G.elements]
    _emit({"ring": {"p": doc.ring.p, "vars": list(doc.ring.names)}, "order": "grevlex",
           "groebner_basis": polys}, ns.json, "\n".join(polys) or "0")
    return EXIT_OK


def cmd_gin(doc: IdealDocument, ns: argparse.Namespace) -> int:
    r = gin(doc.ideal(), Rng(ns.seed), ns.trials)
    gens = monomial_strings(doc.ring, r.gin)
    d = {"ring": {"p": doc.ring.p, "vars": list(doc.ring.names)}, "gin": gens,
         "agreement": r.agreement, "stable": r.gin.is_stable(), "trials_used": r.trials_used,
         "votes": r.votes, "seed": ns.seed}
    _emit(d, ns.json, _aligned([("gin", ", ".join(gens)), ("agreement", r.agreement),
                                ("stable", r.gin.is_stable()),
                                ("trials", "%d (%d votes)" % (r.trials_used, r.votes))]))
    return EXIT_OK


def cmd_betti(doc: IdealDocument, ns: argparse.Namespace) -> int:
    I = doc.ideal()
    if I.is_unit():
        raise DocumentError("the unit ideal has no Betti table")
    prof = homological_profile(I)
    entries = [[i, j, v] for i, j, v in prof.betti.nonzero()]
    d = {"ring": {"p": doc.ring.p, "vars": list(doc.ring.names)}, "betti": entries,
         "projective_dimension": prof.projective_dimension, "depth": prof.depth,
         "cohen_macaulay": prof.cohen_macaulay, "gorenstein": prof.gorenstein}
    text = "\n".join(["beta_%d,%d = %d" % tuple(e) for e in entries] + [
        prof.betti.format(),
        _aligned([("pd", prof.projective_dimension), ("depth", prof.depth),
                  ("cohen_macaulay", prof.cohen_macaulay), ("gorenstein", prof.gorenstein)])])
    _emit(d, ns.json, text)
    return EXIT_OK


def cmd_hilbert(doc: IdealDocument, ns: argparse.Namespace) -> int:
    I = doc.ideal()
    H = hilbert(I, ns.upto)
    values = [H[d] for d in range(ns.upto + 1)]
    d = {"ring": {"p": doc.ring.p, "vars": list(doc.ring.names)}, "numerator": list(H.numerator),
         "values": values}
    _emit(d, ns.json, _aligned([("numerator", _plain(list(H.numerator))),
                                ("H(d), d=0..%d" % ns.upto, _plain(values))]))
    return EXIT_OK


def cmd_verify(ns: argparse.Namespace) -> int:
    if ns.trials < 1:
        raise UsageError("--trials must be at least 1")
    summary = verify(ns.seed, ns.trials, ns.n, ns.max_gens, ns.max_gen_degree, ns.field or DEFAULT_PRIME,
                     ns.samples, ns.gin_trials, ns.jobs)
    d = summary.to_json_dict()
    if ns.json:
        _emit(d, True, "")
    else:
        lines = [_aligned([("seed", ns.seed), ("instances", ns.trials),
                           ("retries", d["retries"]), ("failures", len(d["failures"])),
                           ("wall time", "%.1f s" % summary.wall_seconds)])]
        lines.append("flag true counts: " + ", ".join("%s=%d" % kv for kv in d["flag_true_counts"].items()))
        for name, c in d["invariants"].items():
            lines.append("  %-18s checked %4d  violations %d" % (name, c["checked"], c["violations"]))
        for f in d["failures"]:
            lines.append("FAILURE #%d (%s, seed %d): %s" % (f["index"], f["kind"], f["seed"],
                                                           ", ".join(f["failed"]) or f["errors"]))
            lines.append(f["document"])
        _emit(None, False, "\n".join(lines))
    return EXIT_INCONSISTENT if d["failures"] else EXIT_OK


# ---------------------------------------------------------------------------
# argument handling

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                        help="random linear forms per genericity point")
    common.add_argument("--field", type=int, default=None, help="prime p, overrides the header")
    common.add_argument("--json", action="store_true")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                        help="reject generators above this degree")

    doc_args = argparse.ArgumentParser(add_help=False)
    doc_args.add_argument("file", nargs="?", default="-", help="ideal document, '-' for stdin")
    doc_args.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                          help="random coordinate changes for gin")

    parser = _Parser(prog="mfull", description="m-full and componentwise linear ideals")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in [("analyze", "full report"), ("gb", "reduced Groebner basis"),
                           ("gin", "generic initial ideal"), ("betti", "graded Betti numbers"),
                           ("hilbert", "Hilbert series and function")]:
        sp = sub.add_parser(name, parents=[common, doc_args], help=helptext)
        if name == "hilbert":
            sp.add_argument("--upto", type=int, default=10)
    v = sub.add_parser("verify", parents=[common], help="random check of the main equivalence")
    v.add_argument("--trials", type=int, default=50, help="number of random instances")
    v.add_argument("--gin-trials", type=int, default=DEFAULT_TRIALS)
    v.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    v.add_argument("--max-gens", type=int, default=5)
    v.add_argument("--max-gen-degree", type=int, default=4)
    v.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {"analyze": cmd_analyze, "gb": cmd_gb, "gin": cmd_gin, "betti": cmd_betti,
            "hilbert": cmd_hilbert}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.command == "verify":
            if ns.max_gen_degree > ns.max_degree:
                raise UsageError("--max-gen-degree exceeds --max-degree")
            return cmd_verify(ns)
        if ns.trials < 2:
            raise UsageError("--trials must be at least 2")
        if ns.samples < 1:
            raise UsageError("--samples must be at least 1")
        try:
            text = _read(ns.file)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        doc = parse_document(text, field_override=ns.field, max_degree=ns.max_degree,
                             source=ns.file)
        if ns.command in ("analyze",) and (doc.ideal().is_zero() or doc.ideal().is_unit()):
            raise UsageError("analyze needs a proper nonzero ideal")
        return COMMANDS[ns.command](doc, ns)
    except (UsageError, DocumentError, NonHomogeneousGenerator, ValueError) as exc:
        where = "" if ns.command == "verify" else "%s: " % getattr(ns, "file", "")
        sys.stderr.write("mfull: %s%s\n" % (where, exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
