"""Command-line entry point; every subcommand prints one JSON document.

Exit codes: 0 success, 1 domain error from the library, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

from . import arith, bms, finite_rings, intpoly, quadratic, residues, stability
from .errors import DomainError, PreconditionError
from .quadratic import PrincipalIdeal, QuadInt, RingKind

SCHEMA_VERSION = 1
UNSTABLE_ROW = "1+x,12,x^2+16"


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    status: str = "ok"
    payload: object = None
    diagnostics: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_json(self, timing=False):
        out = {
            "schema": f"stablerank.{self.command}/v{SCHEMA_VERSION}",
            "status": self.status,
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


# -- input parsing ------------------------------------------------------------

def _parsed(fn, text, what):
    try:
        return fn(text)
    except (DomainError, ValueError) as exc:
        raise UsageError(f"malformed {what} {text!r}: {exc}") from None


def _ring(args):
    return RingKind.parse(args.ring)


def _element(text, kind):
    return _parsed(lambda t: quadratic.parse_quad(t, kind), text, "ring element")


def _ideal(text, kind):
    gen = _element(text, kind)
    if not gen:
        raise UsageError("the zero ideal is not allowed here")
    return PrincipalIdeal.of(gen)


def _matrix_cells(text):
    s = text.replace(" ", "")
    m = re.fullmatch(r"\[\[([^\[\]]+),([^\[\]]+)\],\[([^\[\]]+),([^\[\]]+)\]\]", s)
    if not m:
        raise UsageError(f"malformed matrix {text!r}; expected [[a,b],[c,d]]")
    return m.groups()


def _row(text):
    return _parsed(intpoly.parse_row, text, "row")


# -- subcommands --------------------------------------------------------------

def cmd_symbol(args):
    kind = _ring(args)
    b = _element(args.num, kind)
    den = _ideal(args.den, kind)
    return residues.symbol(b, den, args.m).to_json()


def cmd_factor(args):
    if args.ring in ("int", "integer", "z"):
        n = _parsed(int, args.value, "integer")
        fac = arith.factor_int(n)
        return {"sign": fac.sign, "factors": [{"prime": str(p), "exponent": e} for p, e in fac.factors]}
    kind = _ring(args)
    return quadratic.factor(_element(args.value, kind)).to_json()


def cmd_bms_r(args):
    kind = _ring(args)
    return bms.r_of_ideal(kind, _ideal(args.ideal, kind)).to_json()


def cmd_complete(args):
    kind = _ring(args)
    I = _ideal(args.ideal, kind)
    M = bms.complete_sl2_rel(_element(args.a, kind), _element(args.b, kind), I)
    ok, why = bms.in_sl2_rel(M, I)
    return {"matrix": M.to_json(), "display": str(M), "in_sl2_rel": ok, "reason": why}


def cmd_sk1(args):
    kind = _ring(args)
    cells = [_element(c, kind) for c in _matrix_cells(args.matrix)]
    M = bms.Mat2(*cells)
    cert = bms.sk1_invariant(M, _ideal(args.ideal, kind))
    out = cert.to_json()
    out["verified"] = cert.verify()
    return out


def cmd_unimodular(args):
    res = intpoly.unimodular_certificate(_row(args.row))
    if isinstance(res, intpoly.BezoutCertificate):
        return {"unimodular": True, "certificate": res.to_json(), "verified": res.verify()}
    return {"unimodular": False, "obstruction": res.to_json(), "rechecked": res.recheck()}


def cmd_stability(args):
    row = _row(args.row)
    kind = _ring(args) if args.ring else None
    theta = _element(args.theta, kind) if args.theta else None
    rep = stability.obstruction(row, kind, theta, args.conductor)
    ok, why = rep.verify()
    out = rep.to_json()
    out["independent_check"] = {"ok": ok, "reason": why}
    return out


def cmd_stability_search(args):
    row = _row(args.row)
    wit = stability.search_stabilizer(row, args.deg, args.coeff)
    out = {
        "deg_bound": args.deg,
        "coeff_bound": args.coeff,
        "search_space": stability.search_space_size(args.deg, args.coeff),
        "found": wit is not None,
    }
    if wit is None:
        out["note"] = stability.NOT_FOUND_NOTE
    else:
        out["witness"] = wit.to_json()
        out["verified"] = wit.verify(row)
    return out


def cmd_sr(args):
    return {"modulus": args.modulus, "stable_rank": finite_rings.stable_rank(args.modulus)}


def _int_matrix(text):
    return [[_parsed(int, c, "integer") for c in _matrix_cells(text)[k:k + 2]] for k in (0, 2)]


def _word_json(word):
    return [{"i": e.i, "j": e.j, "amount": str(e.amount)} for e in word]


def cmd_sl2_lift(args):
    M = finite_rings.ZnMat2.from_rows(args.modulus, _int_matrix(args.matrix))
    lift = finite_rings.sl2_lift(M)
    return {"modulus": args.modulus, "lift": [[str(x) for x in row] for row in lift]}


def cmd_ge2(args):
    n = args.modulus
    if args.exhaustive:
        group = finite_rings.sl2_group(n)
        longest = 0
        for a, b, c, d in group:
            M = finite_rings.ZnMat2(n, a, b, c, d)
            word = finite_rings.e2_decompose(M)
            if finite_rings.recompose(word, n) != ((a, b), (c, d)):
                raise DomainError(f"recomposition failed for {M}")
            longest = max(longest, len(word))
        return {"modulus": n, "group_order": len(group), "all_recompose": True, "longest_word": longest}
    if not args.matrix:
        raise UsageError("ge2 needs --matrix or --exhaustive")
    M = finite_rings.ZnMat2.from_rows(n, _int_matrix(args.matrix))
    return {"modulus": n, "word": _word_json(finite_rings.e2_decompose(M))}


def cmd_lemma_check(args):
    return finite_rings.check_stable_row_lemma(args.modulus, only_c=args.c).to_json()


def reproduce_paper():
    """The certificate chain for the unimodular row (1 + x, 12, x^2 + 16)."""
    G = RingKind.GAUSSIAN
    row = intpoly.parse_row(UNSTABLE_ROW)
    cert = intpoly.unimodular_certificate(row)
    four = PrincipalIdeal.of(QuadInt(G, 4))
    div = bms.r_of_ideal(G, four)
    theta = QuadInt(G, 0, 4)
    rep = stability.obstruction(row, G, theta, 4)
    sk1 = bms.sk1_invariant(rep.completion, four)
    ok, why = rep.verify()
    steps = [
        ("unimodular (1+x, 12, x^2+16)", "witnesses " + ", ".join(str(w) for w in cert.witnesses),
         cert.verify()),
        ("r(4 Z[i])", str(div.r), div.r == 2),
        ("completion in SL2(Z[i], 4)", str(rep.completion), bms.in_sl2_rel(rep.completion, four)[0]),
        ("invariant (12 / 1+4i)_2", str(sk1.value), str(sk1.value) == "-1"),
        ("verdict", rep.verdict.value, rep.verdict is stability.Verdict.NOT_STABLE and ok),
    ]
    width = max(len(s[0]) for s in steps)
    table = [f"{name.ljust(width)}  {value}  [{'ok' if good else 'FAIL'}]" for name, value, good in steps]
    return {
        "row": [r.to_json() for r in row],
        "certificate": cert.to_json(),
        "bms_divisor": div.to_json(),
        "sk1": sk1.to_json(),
        "obstruction": rep.to_json(),
        "independent_check": {"ok": ok, "reason": why},
        "steps": [{"step": n, "value": v, "ok": g} for n, v, g in steps],
        "all_ok": all(g for _, _, g in steps),
        "table": table,
    }


def cmd_reproduce_paper(args):
    return reproduce_paper()


# -- wiring -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="stablerank", description=__doc__)
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in the JSON")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("symbol", cmd_symbol, "power residue symbol (num / den)_m")
    sp.add_argument("--ring", default="gaussian")
    sp.add_argument("--num", required=True)
    sp.add_argument("--den", required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("factor", cmd_factor, "factor an element (ring: gaussian, eisenstein, integer)")
    sp.add_argument("--ring", default="gaussian")
    sp.add_argument("--value", required=True)

    sp = add("bms-r", cmd_bms_r, "Bass-Milnor-Serre divisor r(I)")
    sp.add_argument("--ring", default="gaussian")
    sp.add_argument("--ideal", required=True)

    sp = add("complete", cmd_complete, "complete (a, b) to a matrix in SL2(S, I)")
    sp.add_argument("--ring", default="gaussian")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--ideal", required=True)

    sp = add("sk1", cmd_sk1, "SK1 invariant of a matrix in SL2(S, I)")
    sp.add_argument("--ring", default="gaussian")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--ideal", required=True)

    sp = add("unimodular", cmd_unimodular, "unimodularity certificate for a row in Z[x]")
    sp.add_argument("--row", required=True)

    sp = add("stability", cmd_stability, "non-stability obstruction for a row (a, b, c)")
    sp.add_argument("--row", required=True)
    sp.add_argument("--ring", default=None)
    sp.add_argument("--theta", default=None)
    sp.add_argument("--conductor", type=int, default=None)

    sp = add("stability-search", cmd_stability_search, "bounded stabilizer search")
    sp.add_argument("--row", required=True)
    sp.add_argument("--deg", type=int, default=1)
    sp.add_argument("--coeff", type=int, default=3)

    sp = add("sr", cmd_sr, "stable rank of Z/n")
    sp.add_argument("--modulus", type=int, required=True)

    sp = add("sl2-lift", cmd_sl2_lift, "lift a matrix of SL2(Z/n) to SL2(Z)")
    sp.add_argument("--modulus", type=int, required=True)
    sp.add_argument("--matrix", required=True)

    sp = add("ge2", cmd_ge2, "elementary decomposition over Z/n")
    sp.add_argument("--modulus", type=int, required=True)
    sp.add_argument("--matrix", default=None)
    sp.add_argument("--exhaustive", action="store_true")

    sp = add("lemma-check", cmd_lemma_check, "stable-row / SL2-lifting equivalence over Z/n")
    sp.add_argument("--modulus", type=int, required=True)
    sp.add_argument("--c", type=int, default=None)

    add("reproduce-paper", cmd_reproduce_paper, "certificate chain for (1+x, 12, x^2+16)")
    return p


def _render_pretty(result):
    lines = [f"{result.command}: {result.status}"]
    payload = result.payload
    if isinstance(payload, dict) and "table" in payload:
        lines += payload["table"]
    elif payload is not None:
        lines.append(json.dumps(payload, indent=2))
    lines += [f"! {d}" for d in result.diagnostics]
    return "\n".join(lines)


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    result = CommandResult(args.command)
    start = time.perf_counter()
    code = 0
    try:
        result.payload = args.fn(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stablerank: error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        result.status = "error"
        result.diagnostics.append(f"{exc.name}: {exc}")
        if exc.detail is not None and hasattr(exc.detail, "to_json"):
            result.payload = {"detail": exc.detail.to_json()}
        code = 1
    except (DomainError, ZeroDivisionError) as exc:
        result.status = "error"
        result.diagnostics.append(str(exc))
        code = 1
    result.elapsed_ms = (time.perf_counter() - start) * 1000
    if args.pretty:
        print(_render_pretty(result), file=stdout)
    else:
        print(json.dumps(result.to_json(timing=args.timing), sort_keys=True), file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
