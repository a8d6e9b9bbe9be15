"""Command-line front end: ``pcpg <verb> FILE... [options]``.

Exit status is 0 for a result, 2 for a negative answer (NO, no solution
within the bound, a word that does not verify) and 1 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .abelian import AbelianHom, canonicalize, hom_equalizer, hom_kernel
from .equalizer import equalizer_nilpotent
from .freewords import Alphabet, Word, parse_word
from .intlinalg import format_matrix, parse_matrix, smith_normal_form
from .nilpotent import NilHom, NilPresentation, gamma_layer, nilpotent_quotient
from .pcp import (
    FreeGroupOracle,
    GpcpInstance,
    NilpotentOracle,
    NoneWithinBound,
    PcpInstance,
    bounded_gpcp_search,
    bounded_pcp_search,
    normalize_gpcp,
    pcp_decide_nilpotent,
    verify_solution,
)
from .reductions import DtcInstance, HwpInstance, encode_dtc_gpcp, encode_hwp_gpcp
from .textio import (
    ParseError,
    _split_words,
    format_instance,
    parse_hom,
    parse_instance,
    parse_presentation,
)

OK, NO, BAD = 0, 2, 1


class Reply:
    def __init__(self, verb: str, result, text: str, code: int = OK, **extra):
        self.verb = verb
        self.result = result
        self.text = text
        self.code = code
        self.extra = extra

    def emit(self, as_json: bool, out) -> int:
        if as_json:
            obj = {"verb": self.verb, "result": self.result}
            obj.update(self.extra)
            out.write(json.dumps(obj, sort_keys=True) + "\n")
        else:
            out.write(self.text.rstrip("\n") + "\n")
        return self.code


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _group(path: str, cls: Optional[int]):
    pres = parse_presentation(_read(path))
    c = cls if cls is not None else pres.class_bound
    if c is None:
        raise ParseError("no `class:` line; pass --class", 1, 1)
    return pres, nilpotent_quotient(NilPresentation(pres.alphabet, tuple(pres.relators), c))


def _words(ws, alphabet: Alphabet) -> List[str]:
    return [alphabet.format(w) for w in ws]


# ---------------------------------------------------------------------------


def cmd_snf(a) -> Reply:
    A = parse_matrix(_read(a.files[0]))
    ncols = len(A[0]) if A else 0
    s = smith_normal_form(A, ncols)
    text = "\n".join([
        "invariants: " + (" ".join(map(str, s.invariants)) or "none"),
        f"rank: {s.rank}",
        "D:", format_matrix(s.D, ncols),
        "U:", format_matrix(s.U, len(A)),
        "V:", format_matrix(s.V, ncols),
    ])
    res = {"invariants": s.invariants, "rank": s.rank, "D": s.D, "U": s.U, "V": s.V}
    return Reply("snf", res, text)


def cmd_abelian_kernel(a) -> Reply:
    if len(a.files) not in (3, 4):
        raise ValueError("abelian-kernel needs SOURCE TARGET PHI [PSI]")
    src = parse_presentation(_read(a.files[0]))
    tgt = parse_presentation(_read(a.files[1]))
    canon = lambda p: canonicalize(p.alphabet.names, [r.exponent_sums(len(p.alphabet)) for r in p.relators])
    S, T = canon(src), canon(tgt)

    def hom(path):
        _, images = parse_hom(_read(path), src.alphabet, tgt.alphabet)
        return AbelianHom.from_images(S, T, [w.exponent_sums(len(tgt.alphabet)) for w in images])

    phi = hom(a.files[2])
    gens = hom_equalizer(phi, hom(a.files[3])) if len(a.files) == 4 else hom_kernel(phi)
    shown = _words([Word.from_exponents(S.lift(v)) for v in gens], src.alphabet)
    text = "\n".join(shown) if shown else "trivial"
    return Reply("abelian-kernel", "ok", text, generators=shown)


def cmd_nq(a) -> Reply:
    _, P = _group(a.files[0], a.cls)
    layers = []
    for i in range(1, P.nilpotency_class + 1):
        free, tors = gamma_layer(P, i).canon.invariants()
        layers.append({"weight": i, "free_rank": free, "torsion": list(tors)})
    res = {
        "generators": P.names,
        "weights": P.weights,
        "orders": P.orders,
        "class": P.nilpotency_class,
        "order": P.order(),
        "layers": layers,
    }
    lines = [P.describe() or "trivial group"]
    lines.append(f"order: {P.order() if P.order() is not None else 'infinite'}")
    return Reply("nq", res, "\n".join(lines))


def cmd_normal_form(a) -> Reply:
    pres, P = _group(a.files[0], a.cls)
    if len(a.files) < 2:
        raise ValueError("normal-form needs GROUP WORD...")
    rows = []
    lines = []
    for k, text in enumerate(a.files[1:], 1):
        e = P.normal_form(parse_word(text, pres.alphabet, k, 1))
        rows.append(list(e))
        lines.append(f"{' '.join(map(str, e)) or '(trivial group)'}    {P.format_vector(e)}")
    return Reply("normal-form", rows, "\n".join(lines), generators=P.names)


def cmd_equalizer(a) -> Reply:
    if len(a.files) != 4:
        raise ValueError("equalizer needs SOURCE TARGET PHI PSI")
    hp, H = _group(a.files[0], a.cls)
    gp, G = _group(a.files[1], a.cls)
    _, phi = parse_hom(_read(a.files[2]), hp.alphabet, gp.alphabet)
    _, psi = parse_hom(_read(a.files[3]), hp.alphabet, gp.alphabet)
    res = equalizer_nilpotent(H, G, NilHom(H, G, phi), NilHom(H, G, psi))
    shown = _words(res.generators, hp.alphabet)
    return Reply("equalizer", "ok", "\n".join(shown) if shown else "trivial", generators=shown)


def _instance(path: str, alphabet: Optional[Alphabet] = None):
    it = parse_instance(_read(path), alphabet)
    if it.constants is None:
        return PcpInstance(it.alphabet, it.pairs)
    return GpcpInstance(it.alphabet, it.pairs, *it.constants)


def cmd_pcp_decide(a) -> Reply:
    if len(a.files) != 2:
        raise ValueError("pcp-decide needs GROUP INSTANCE")
    pres, G = _group(a.files[0], a.cls)
    inst = _instance(a.files[1], pres.alphabet)
    if isinstance(inst, GpcpInstance) and any(inst.constants):
        raise ValueError("pcp-decide takes instances without constants")
    d = pcp_decide_nilpotent(G, PcpInstance(inst.alphabet, inst.pairs))
    X = Alphabet.standard(inst.n)
    gens = _words(d.generators, X)
    if not d.answer:
        return Reply("pcp-decide", "NO", "NO", NO, generators=gens)
    w = X.format(d.witness.w)
    val = inst.alphabet.format(d.witness.common_value)
    return Reply("pcp-decide", "YES", f"YES\nwitness: {w}\nvalue: {val}", OK,
                 witness=w, value=val, generators=gens)


def _oracle(a, alphabet: Optional[Alphabet]):
    if a.group is None:
        return None, FreeGroupOracle()
    pres, G = _group(a.group, a.cls)
    return pres.alphabet, NilpotentOracle(G)


def cmd_search(a) -> Reply:
    alphabet, oracle = _oracle(a, None)
    inst = _instance(a.files[0], alphabet)
    if a.bound is None:
        raise ValueError("search needs --bound")
    fn = bounded_gpcp_search if isinstance(inst, GpcpInstance) else bounded_pcp_search
    found = fn(inst, oracle, a.bound, threads=a.threads, timeout=a.timeout)
    if isinstance(found, NoneWithinBound):
        msg = f"none within bound {found.bound}"
        if not found.completed:
            msg += f" (timed out; bound {a.bound} requested)"
        return Reply("search", "none", msg, NO, bound_reached=found.bound)
    X = Alphabet.standard(inst.n)
    w = X.format(found.w)
    val = inst.alphabet.format(found.common_value)
    return Reply("search", "found", f"witness: {w}\nvalue: {val}", witness=w, value=val)


def cmd_verify(a) -> Reply:
    if len(a.files) != 2:
        raise ValueError("verify needs INSTANCE WORD")
    alphabet, oracle = _oracle(a, None)
    inst = _instance(a.files[0], alphabet)
    w = parse_word(a.files[1], Alphabet.standard(inst.n))
    ok = verify_solution(inst, w, oracle)
    return Reply("verify", ok, "valid" if ok else "not a solution", OK if ok else NO)


def cmd_encode_hwp(a) -> Reply:
    pres = parse_presentation(_read(a.files[0]))
    if "word" not in pres.extra:
        raise ParseError("missing `word:` line", 1, 1)
    lineno, value, col = pres.extra["word"]
    w = parse_word(value, pres.alphabet, lineno, col)
    out = encode_hwp_gpcp(HwpInstance(pres.alphabet, tuple(pres.relators), w))
    text = format_instance(out.alphabet, out.pairs, out.constants)
    return Reply("encode-hwp", text, text)


def cmd_encode_dtc(a) -> Reply:
    pres = parse_presentation(_read(a.files[0]))
    need = [k for k in ("phi", "psi", "u", "v") if k not in pres.extra]
    if need:
        raise ParseError(f"missing line(s): {', '.join(need)}", 1, 1)
    A = pres.alphabet

    def field(key, many):
        lineno, value, col = pres.extra[key]
        if many:
            return _split_words(value, ";", A, lineno, col)
        return parse_word(value, A, lineno, col)

    group = None
    if pres.relators or pres.class_bound is not None or a.cls is not None:
        c = a.cls if a.cls is not None else pres.class_bound
        if c is None:
            raise ParseError("relators given without `class:`", 1, 1)
        group = nilpotent_quotient(NilPresentation(A, tuple(pres.relators), c))
    inst = DtcInstance(A, field("phi", True), field("psi", True), field("u", False), field("v", False), group)
    out = encode_dtc_gpcp(inst)
    text = format_instance(out.alphabet, out.pairs, out.constants)
    return Reply("encode-dtc", text, text)


def cmd_normalize(a) -> Reply:
    inst = _instance(a.files[0])
    if not isinstance(inst, GpcpInstance):
        inst = GpcpInstance.from_pcp(inst)
    out = normalize_gpcp(inst)
    text = format_instance(out.alphabet, out.pairs, out.constants)
    return Reply("normalize", text, text)


COMMANDS = {
    "snf": (cmd_snf, "Smith normal form of an integer matrix file"),
    "abelian-kernel": (cmd_abelian_kernel, "kernel (or equalizer) of abelian homomorphisms"),
    "nq": (cmd_nq, "nilpotent quotient of a finite presentation"),
    "normal-form": (cmd_normal_form, "collected normal forms of words"),
    "equalizer": (cmd_equalizer, "equalizer of two homomorphisms of nilpotent groups"),
    "pcp-decide": (cmd_pcp_decide, "decide PCP in a nilpotent group"),
    "search": (cmd_search, "bounded search for a (G)PCP solution"),
    "verify": (cmd_verify, "check a candidate solution"),
    "encode-hwp": (cmd_encode_hwp, "encode a hereditary word problem instance as GPCP"),
    "encode-dtc": (cmd_encode_dtc, "encode double twisted conjugacy as GPCP"),
    "normalize": (cmd_normalize, "move GPCP constants into the (a, 1, 1, 1) form"),
}


def build_parser() -> argparse.ArgumentParser:
    # shared flags are accepted before or after the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", type=int, default=argparse.SUPPRESS, help="nilpotency class bound")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p = argparse.ArgumentParser(prog="pcpg", description=__doc__.split("\n")[0], parents=[common])
    p.add_argument("--version", action="version", version=f"pcpg {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(verb, help=helptext, parents=[common])
        sp.add_argument("files", nargs="+", metavar="ARG")
        if verb in ("search", "verify"):
            sp.add_argument("--group", help="presentation file of the target group (default: free group)")
        if verb == "search":
            sp.add_argument("--bound", type=int, default=None, help="maximal witness length")
            sp.add_argument("--threads", type=int, default=1, help="workers for frontier expansion")
            sp.add_argument("--timeout", type=float, default=None, help="seconds before giving up")
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD if exc.code else OK
    a.cls = getattr(a, "cls", None)
    a.json = getattr(a, "json", False)
    if a.cls is not None and a.cls < 1:
        err.write("pcpg: --class must be at least 1\n")
        return BAD
    try:
        reply = COMMANDS[a.verb][0](a)
    except (ParseError, ValueError, IndexError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if a.json:
            out.write(json.dumps({"verb": a.verb, "result": "error", "error": str(msg)}, sort_keys=True) + "\n")
        err.write(f"pcpg {a.verb}: {msg}\n")
        return BAD
    return reply.emit(a.json, out)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
