"""Command-line interface.

Every subcommand reads its word arguments from the command line, or from
standard input (one per line) when the argument is ``-`` or omitted.
Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
Flags fall back to ``THREEPAGE_*`` environment variables.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__

__all__ = ["main", "Config", "build_parser"]


@dataclass(frozen=True)
class Config:
    max_len_delta: int = 8
    max_states: int = 10 ** 6
    max_ar: int = 8
    jobs: int = 1
    fmt: str = "text"

    def __post_init__(self):
        if self.max_len_delta < 1 or self.max_states < 1 or self.max_ar < 2:
            raise ValueError("budgets must be positive and max_ar >= 2")
        if self.jobs < 1:
            raise ValueError("worker count must be >= 1")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")

    @property
    def budget(self):
        from .rewrite.prover import Budget
        return Budget(self.max_len_delta, self.max_states)


def _env_int(name, default):
    v = os.environ.get("THREEPAGE_" + name)
    if v is None or v == "":
        return default
    try:
        return int(v)
    except ValueError:
        raise UsageError("THREEPAGE_%s must be an integer, got %r" % (name, v)) from None


def _default_jobs():
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _read_inputs(values, count=1):
    """Arguments, or lines of stdin when absent or '-'."""
    vals = [v for v in (values or []) if v != "-"]
    if vals:
        return vals
    lines = [ln.strip() for ln in sys.stdin.read().splitlines()]
    return [ln for ln in lines if ln and not ln.startswith("#")]


def _word(text):
    from .pages import parse_general
    from .words import parse_word
    if "v[" in text:
        return parse_general(text)
    return parse_word(text)


def _aword(text):
    """An A_n word (general vertices refused)."""
    from .words import Word
    w = _word(text)
    if not isinstance(w, Word):
        raise DomainError("this command needs an A_n word, got general vertices")
    return w


def _emit(cfg, text=None, obj=None, out=None):
    out = out or sys.stdout
    if cfg.fmt == "json":
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _verdict_dict(v):
    from .rewrite.prover import Proved, Refuted
    d = {"verdict": v.verdict}
    if isinstance(v, Proved):
        d["moves"] = [str(m).split("\t") for m in v.certificate.moves]
        d["certificate"] = v.certificate.to_text()
    elif isinstance(v, Refuted):
        d["invariant"] = v.invariant
        d["detail"] = str(v.detail)
    else:
        d["reason"] = v.reason
        d["states"] = v.states
    return d


# ------------------------------------------------------------------ commands

def cmd_parse(args, cfg):
    from .pages import is_balanced
    for text in _read_inputs(args.word):
        w = _word(text)
        r = str(w)
        _emit(cfg, r, {"command": "parse", "input": text, "word": r, "length": len(w),
                       "balanced": bool(is_balanced(w))})
    return 0


def cmd_balance(args, cfg):
    from .pages import is_balanced
    for text in _read_inputs(args.word):
        rep = is_balanced(_word(text))
        txt = "balanced" if rep else str(rep)
        _emit(cfg, txt, {"command": "balance", "input": text, "balanced": bool(rep),
                         "page": rep.page, "position": rep.position})
    return 0


def cmd_beta(args, cfg):
    from .pages import bracket_projection
    for text in _read_inputs(args.word):
        w = _word(text)
        pages = [args.index] if args.index is not None else [0, 1, 2]
        res = {str(i): bracket_projection(w, i) for i in pages}
        txt = "\n".join(res[str(i)] if len(pages) == 1 else "%d: %s" % (i, res[str(i)])
                        for i in pages)
        _emit(cfg, txt, {"command": "beta", "input": text, "projections": res})
    return 0


def cmd_abelian(args, cfg):
    from .abelian import abelianize, format_vector, center_image_member, functional_F
    for text in _read_inputs(args.word):
        v = abelianize(_aword(text))
        _emit(cfg, format_vector(v),
              {"command": "abelian", "input": text, "vector": format_vector(v),
               "a": list(v.a), "x": {str(m): k for m, k in v.x},
               "F": [functional_F(i, v) for i in range(3)],
               "center_image": center_image_member(v)})
    return 0


def cmd_mirror(args, cfg):
    from .words import mirror
    for text in _read_inputs(args.word):
        m = mirror(_aword(text), args.mode)
        _emit(cfg, str(m), {"command": "mirror", "input": text, "word": str(m), "mode": args.mode})
    return 0


def cmd_shift(args, cfg):
    from .words import Word, shift_index
    for text in _read_inputs(args.word):
        w = _word(text)
        r = shift_index(w, args.by) if isinstance(w, Word) else w.shifted(args.by)
        _emit(cfg, str(r), {"command": "shift", "input": text, "word": str(r), "by": args.by})
    return 0


def cmd_prove(args, cfg):
    from .rewrite.prover import Proved, prove_equivalent
    u, v = _aword(args.u), _aword(args.v)
    res = prove_equivalent(u, v, cfg.budget, mode=args.mode)
    d = _verdict_dict(res)
    d.update({"command": "prove", "u": str(u), "v": str(v), "mode": args.mode})
    if isinstance(res, Proved):
        txt = res.certificate.to_text()
    else:
        txt = repr(res)
    _emit(cfg, txt, d)
    return 0 if isinstance(res, Proved) else 1


def cmd_verify(args, cfg):
    from .rewrite.suites import verify_suite, _Library
    lib = _Library()
    suites = args.suite
    code = 0
    for s in suites:
        if s in ("lemma3", "nsg_phi23", "claim6") and "claim1" not in suites:
            # these lean on the Claim 1 lemmas
            verify_suite("claim1", args.n, cfg.budget, lemmas=lib)
        rep = verify_suite(s, args.n, cfg.budget, lemmas=lib)
        obj = {"command": "verify", "suite": s, "total": len(rep.rows),
               "proved": len(rep.proved), "unknown": [t.label for t in rep.unknown],
               "refuted": [t.label for t in rep.refuted], "seconds": round(rep.seconds, 2)}
        _emit(cfg, rep.table(), obj)
        if rep.refuted:
            code = 1
    return code


def cmd_phi(args, cfg):
    from .tangles import parse_tangle, phi
    for text in _read_inputs(args.tangle):
        w = phi(parse_tangle(text))
        _emit(cfg, str(w), {"command": "phi", "input": text, "word": str(w)})
    return 0


def cmd_pi1(args, cfg):
    from .fundgroup import neuwirth_presentation, tietze_simplify, homology
    for text in _read_inputs(args.word):
        g = neuwirth_presentation(_word(text))
        s = tietze_simplify(g) if args.simplify else g
        rank, tors = homology(s)
        _emit(cfg, str(s), {"command": "pi1", "input": text, "presentation": s.as_dict(),
                            "h1": {"rank": rank, "torsion": tors}})
    return 0


def cmd_fingerprint(args, cfg):
    from .fundgroup import fingerprint
    for text in _read_inputs(args.word):
        fp = fingerprint(_word(text))
        d = fp.as_dict()
        txt = "degrees=%s components=%d h1=Z^%d%s homs=%s" % (
            list(fp.vertex_degrees), fp.components, fp.h1[0],
            "".join("+Z%d" % t for t in fp.h1[1]),
            ",".join("S%d:%d" % kv for kv in fp.hom_counts))
        d.update({"command": "fingerprint", "input": text})
        _emit(cfg, txt, d)
    return 0


def cmd_spq(args, cfg):
    from .complexity import two_bridge_word, tp_upper_bound
    w = two_bridge_word(args.p, args.q)
    _emit(cfg, str(w), {"command": "spq", "p": args.p, "q": args.q, "word": str(w),
                        "tp_upper": tp_upper_bound(w)})
    return 0


def cmd_theta(args, cfg):
    from .complexity import theta_word, tp_upper_bound
    w = theta_word(args.k)
    _emit(cfg, str(w), {"command": "theta", "k": args.k, "word": str(w),
                        "tp_upper": tp_upper_bound(w)})
    return 0


def cmd_construct(args, cfg):
    from . import complexity as cx
    u, v = _word(args.w1), _word(args.w2)
    if args.op == "union":
        r = cx.arc_matching(cx.disjoint_union(u, v))
    elif args.op == "vertex":
        r = cx.vertex_sum(u, v)
    elif args.op == "edge":
        r = cx.edge_sum(u, v, page=args.page)
    else:
        r = cx.arc_matching(cx.loop_sum(u, v))
    txt = r.render()
    _emit(cfg, txt, {"command": "construct", "op": args.op, "word": txt, "ar": r.arch_number,
                     "notes": {k: v for k, v in r.notes.items()}})
    return 0


def cmd_tl_bound(args, cfg):
    from .complexity import three_letters_presentation
    for text in _read_inputs(args.word):
        pres, bound = three_letters_presentation(_word(text))
        txt = "%s\ntl <= %d" % (pres, bound)
        _emit(cfg, txt, {"command": "tl-bound", "input": text, "presentation": pres.as_dict(),
                         "bound": bound, "generators": len(pres.generators)})
    return 0


def cmd_census(args, cfg):
    from .census import run_census
    max_ar = args.max_ar if args.max_ar is not None else cfg.max_ar
    if max_ar > cfg.max_ar and not args.force:
        raise DomainError("max_ar %d exceeds the configured cap %d (use --force)"
                          % (max_ar, cfg.max_ar))
    degs = tuple(int(x) for x in args.degrees.split(",") if x) if args.degrees else ()
    res = run_census(max_ar, degs, general=args.general, merge_mirror=args.merge_mirror,
                     jobs=cfg.jobs, upper=not args.no_upper)
    if cfg.fmt == "json":
        for c in res.classes:
            sys.stdout.write(json.dumps(c.as_dict(), sort_keys=True) + "\n")
        return 0
    print(res.table())
    print()
    for c in res.classes:
        print("k=%d %-15s %-3s %s  (%d members)" % (c.complexity, c.category,
                                                  "DU" if c.split else "", c.representative,
                                                  len(c.members)))
    bad = [d for d in res.diagnostics if d["status"] != "match"]
    if bad:
        print()
        for d in bad:
            extra = " upper=%d" % d["upper"] if "upper" in d else " table=%d" % d["reference"]
            print("diagnostic k=%d %s: %s (found %d%s)" % (d["complexity"], d["category"],
                                                          d["status"], d["found"], extra))
    if degs:
        print("note: stub order at general vertices is not normalized; words differing only "
              "by it count as distinct members unless their fingerprints agree")
    print("enumerated %d words, %.1fs" % (res.stats.emitted, res.elapsed))
    return 0


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    def common(parser, default):
        parser.add_argument("--json", action="store_true", default=default, help="JSON output")
        parser.add_argument("--jobs", type=int, default=default, help="worker processes")
        parser.add_argument("--max-len-delta", type=int, default=default)
        parser.add_argument("--max-states", type=int, default=default)
        parser.add_argument("--max-ar-cap", type=int, default=default, help="census cap on max_ar")

    p = _Parser(prog="threepage", description="Three-page words for knots, links and graphs.")
    p.add_argument("--version", action="version", version=__version__)
    common(p, None)
    # the same options after the subcommand; SUPPRESS keeps the global value
    shared = _Parser(add_help=False)
    common(shared, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[shared], **kw)
    sub.add_parser = add_parser

    def words(sp, name="word"):
        sp.add_argument(name, nargs="*", help="word(s); '-' or none reads stdin")

    s = sub.add_parser("parse", help="parse and re-render words")
    words(s)
    s.set_defaults(func=cmd_parse)
    s = sub.add_parser("balance", help="balance test")
    words(s)
    s.set_defaults(func=cmd_balance)
    s = sub.add_parser("beta", help="bracket projections")
    s.add_argument("-i", "--index", type=int, choices=(0, 1, 2))
    words(s)
    s.set_defaults(func=cmd_beta)
    s = sub.add_parser("abelian", help="abelianization")
    words(s)
    s.set_defaults(func=cmd_abelian)
    s = sub.add_parser("mirror", help="mirror anti-automorphism")
    s.add_argument("--mode", choices=("rigid", "nonrigid"), default="rigid")
    words(s)
    s.set_defaults(func=cmd_mirror)
    s = sub.add_parser("shift", help="index shift")
    s.add_argument("-s", "--by", type=int, default=1)
    words(s)
    s.set_defaults(func=cmd_shift)
    s = sub.add_parser("prove", help="search for an equivalence")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("--mode", choices=("RSG", "NSG"), default="RSG")
    s.set_defaults(func=cmd_prove)
    s = sub.add_parser("verify", help="run derived-equivalence suites")
    s.add_argument("suite", nargs="+", choices=("claim1", "claim6", "lemma3", "nsg_phi23"))
    s.add_argument("-n", type=int, default=6)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("phi", help="tangle word to three-page word")
    words(s, "tangle")
    s.set_defaults(func=cmd_phi)
    s = sub.add_parser("pi1", help="complement group presentation")
    s.add_argument("--simplify", action="store_true")
    words(s)
    s.set_defaults(func=cmd_pi1)
    s = sub.add_parser("fingerprint", help="census fingerprint")
    words(s)
    s.set_defaults(func=cmd_fingerprint)
    s = sub.add_parser("spq", help="two-bridge word S(p,q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(func=cmd_spq)
    s = sub.add_parser("theta", help="theta graph word")
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_theta)
    s = sub.add_parser("construct", help="graph constructions")
    s.add_argument("--op", choices=("union", "vertex", "edge", "loop"), required=True)
    s.add_argument("--page", type=int, choices=(0, 1, 2), default=0)
    s.add_argument("w1")
    s.add_argument("w2")
    s.set_defaults(func=cmd_construct)
    s = sub.add_parser("tl-bound", help="three-letters presentation and bound")
    words(s)
    s.set_defaults(func=cmd_tl_bound)
    s = sub.add_parser("census", help="enumerate and classify")
    s.add_argument("--max-ar", type=int, default=None)
    s.add_argument("--degrees", default="")
    s.add_argument("--general", action="store_true")
    mm = s.add_mutually_exclusive_group()
    mm.add_argument("--merge-mirror", dest="merge_mirror", action="store_true", default=True)
    mm.add_argument("--no-merge-mirror", dest="merge_mirror", action="store_false")
    s.add_argument("--no-upper", action="store_true", help="skip prover merging")
    s.add_argument("--force", action="store_true", help="allow max_ar above the cap")
    s.set_defaults(func=cmd_census)
    return p


def _config(ns):
    jobs = ns.jobs if ns.jobs is not None else _env_int("JOBS", _default_jobs())
    fmt = "json" if ns.json else os.environ.get("THREEPAGE_FORMAT", "text")
    try:
        return Config(
            max_len_delta=ns.max_len_delta if ns.max_len_delta is not None
            else _env_int("MAX_LEN_DELTA", 8),
            max_states=ns.max_states if ns.max_states is not None
            else _env_int("MAX_STATES", 10 ** 6),
            max_ar=ns.max_ar_cap if ns.max_ar_cap is not None else _env_int("MAX_AR", 8),
            jobs=jobs, fmt=fmt)
    except ValueError as e:
        raise UsageError(str(e)) from None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        return 2
    except SystemExit as e:       # --help / --version
        return int(e.code or 0)
    try:
        return ns.func(ns, cfg)
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        return 2
    except (DomainError, ValueError, KeyError, RuntimeError) as e:
        msg = e.args[0] if e.args else e.__class__.__name__
        sys.stderr.write("error: %s\n" % msg)
        return 1


if __name__ == "__main__":
    sys.exit(main())
