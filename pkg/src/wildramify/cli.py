"""Command line entry point: ``wildramify <subcommand> ...``.

Every subcommand prints one JSON document on stdout (keys in a fixed order)
and exits with

    0  success, or ALIGNED
    1  malformed input: bad JSON, schema violation, polynomial parse error
    2  inexact Swan value under --require-exact, INCONCLUSIVE alignment,
       or an L-degree that needs more extension degrees
    3  MISALIGNED
    4  an enumeration or size cap was exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .errors import (CapExceeded, InsufficientDepth, NoRelationFound, ParseError,
                     SchemaError, TrivialClass, WildRamifyError)
from .field import FieldElem, FieldSpec
from .parse import format_poly, identifiers, parse_constant
from .poly import PolyRing
from .swan import ASWDatum
from .witt import WittVector

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INEXACT = 2
EXIT_MISALIGNED = 3
EXIT_CAP = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


class _Exit(Exception):
    def __init__(self, code: int, doc=None):
        self.code = code
        self.doc = doc


# -- input documents ---------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError("input", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise SchemaError("input", f"invalid JSON at byte {offset}: {exc.msg}") from None


def _require(doc: dict, key: str, kind, where: str = ""):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(where + key, "missing")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(where + key, f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise SchemaError(where + key, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def field_from_json(doc) -> FieldSpec:
    if not isinstance(doc, dict):
        raise SchemaError("field", "expected an object with p, e, modulus")
    p = _require(doc, "p", int)
    e = doc.get("e", 1)
    if isinstance(e, bool) or not isinstance(e, int):
        raise SchemaError("e", f"expected an integer, got {e!r}")
    modulus = doc.get("modulus")
    if modulus is not None and (not isinstance(modulus, list)
                                or not all(isinstance(c, int) for c in modulus)):
        raise SchemaError("modulus", "expected a list of integers")
    return FieldSpec(p, e, modulus)


def _parse_in(ring: PolyRing, text, where: str):
    if not isinstance(text, str):
        raise SchemaError(where, f"expected a polynomial string, got {text!r}")
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc.message}", exc.offset, exc.token) from None


def datum_from_json(doc) -> ASWDatum:
    if not isinstance(doc, dict):
        raise SchemaError("input", "expected a JSON object")
    field = field_from_json(_require(doc, "field", dict))
    names = _require(doc, "vars", list)
    if not names or not all(isinstance(v, str) and v.isidentifier() for v in names):
        raise SchemaError("vars", "expected a nonempty list of identifiers")
    if "g" in names:
        raise SchemaError("vars", "'g' is reserved for the field generator")
    if len(set(names)) != len(names):
        raise SchemaError("vars", "duplicate variable names")
    r = _require(doc, "r", int)
    if r < 0:
        raise SchemaError("r", "level must be nonnegative")
    comps = _require(doc, "components", list)
    if len(comps) != r + 1:
        raise SchemaError("components", f"level r={r} needs {r + 1} components, got {len(comps)}")
    ring = PolyRing(field, names)
    polys = [_parse_in(ring, c, f"components[{i}]") for i, c in enumerate(comps)]
    return ASWDatum(field, tuple(names), r, WittVector(field.p, polys))


def _parse_point(field: FieldSpec, text: str, where: str) -> tuple[FieldElem, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for i, part in enumerate(text.split(",")):
        try:
            out.append(parse_constant(part, field))
        except ParseError as exc:
            raise ParseError(f"{where}[{i}]: {exc.message}",
                             exc.offset, exc.token) from None
    return tuple(out)


def _int_list(text: str, where: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise SchemaError(where, f"expected comma-separated integers, got {text!r}") from None


# -- subcommands ---------------------------------------------------------------------

def cmd_swan(args) -> dict:
    from .swan import swan_at_infinity
    datum = datum_from_json(_load_json(args.input))
    y = _parse_point(datum.field, args.fiber or "", "fiber")
    if len(y) != datum.n:
        raise SchemaError("fiber", f"expected {datum.n} coordinates, got {len(y)}")
    rep = swan_at_infinity(datum.fiber(y))
    doc = rep.to_json()
    if args.require_exact and not rep.exact:
        raise _Exit(EXIT_INEXACT, doc)
    return doc


def cmd_bertini(args) -> dict:
    from .bertini import bertini_rank_one
    datum = datum_from_json(_load_json(args.input))
    return bertini_rank_one(datum).to_json()


def cmd_align(args) -> dict:
    from .bertini import ALIGNED, MISALIGNED, alignment_check, bertini_rank_one
    datum = datum_from_json(_load_json(args.input))
    if args.weights == "auto":
        weights = bertini_rank_one(datum).weights
    else:
        weights = tuple(_int_list(args.weights or "", "weights"))
        if weights and len(weights) != datum.n:
            raise SchemaError("weights", f"expected {datum.n} weights, got {len(weights)}")
        if any(d < 1 for d in weights):
            raise SchemaError("weights", "weights must be positive")
    if args.fiber:
        fibers = [_parse_point(datum.field, t, "fiber") for t in args.fiber]
        for y in fibers:
            if len(y) != datum.n:
                raise SchemaError("fiber", f"expected {datum.n} coordinates, got {len(y)}")
    elif args.exhaustive:
        fibers = "exhaustive"
    elif args.samples is not None:
        if args.samples < 1:
            raise SchemaError("samples", "must be positive")
        fibers = "sample"
    else:
        fibers = "auto"
    samples = args.samples if args.samples is not None else 64
    rep = alignment_check(datum, weights, fibers, seed=args.seed, samples=samples)
    doc = rep.to_json()
    if rep.verdict == ALIGNED:
        return doc
    raise _Exit(EXIT_MISALIGNED if rep.verdict == MISALIGNED else EXIT_INEXACT, doc)


def cmd_nagata(args) -> dict:
    from .nagata import EtalePresentation, nagata_finite_map
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise SchemaError("input", "expected a JSON object")
    field = field_from_json(_require(doc, "field", dict))
    gens = _require(doc, "generators", list)
    if not gens or not all(isinstance(v, str) and v.isidentifier() and v != "g" for v in gens):
        raise SchemaError("generators", "expected a nonempty list of identifiers other than 'g'")
    if len(set(gens)) != len(gens):
        raise SchemaError("generators", "duplicate names")
    n = _require(doc, "n", int)
    if not 0 <= n <= len(gens):
        raise SchemaError("n", f"must lie between 0 and {len(gens)}")
    ideal = _require(doc, "ideal", list)
    ring = PolyRing(field, gens)
    polys = tuple(_parse_in(ring, s, f"ideal[{i}]") for i, s in enumerate(ideal))
    if any(g.is_zero() for g in polys):
        raise SchemaError("ideal", "generators must be nonzero")
    if len(gens) > n and not polys:
        raise SchemaError("ideal", "needs at least one generator when there are more generators than n")
    hints = None
    if args.relations:
        raw = _load_json(args.relations)
        if isinstance(raw, dict):
            raw = raw.get("relations")
        if not isinstance(raw, list) or not all(h is None or isinstance(h, str) for h in raw):
            raise SchemaError("relations", "expected a list of polynomial strings (or null)")
        hints = []
        for k, h in enumerate(raw):
            if h is None:
                hints.append(None)
            else:
                level_ring = PolyRing(field, gens[: len(gens) - k])
                hints.append(_parse_in(level_ring, h, f"relations[{k}]"))
    pres = EtalePresentation(field, tuple(gens), n, polys)
    cert = nagata_finite_map(pres, hints)
    out = cert.to_json()
    if not out["verified"]:
        raise _Exit(EXIT_INEXACT, out)
    return out


def cmd_euler(args) -> dict:
    from .euler import CurveShape, SheafShape, chi_pair
    swans = _int_list(args.swan or "", "swan")
    for key, value in (("rank", args.rank), ("genus", args.genus), ("punctures", args.punctures)):
        if value < (1 if key == "rank" else 0):
            raise SchemaError(key, f"out of range: {value}")
    if any(s < 0 for s in swans):
        raise SchemaError("swan", "Swan conductors are nonnegative")
    chi_c, chi = chi_pair(CurveShape(args.genus, args.punctures), SheafShape.of(args.rank, swans))
    return {"chi_c": chi_c, "chi": chi}


def cmd_lsum(args) -> dict:
    from .charsum import l_degree
    field = FieldSpec(args.p)
    names = identifiers(args.f)
    if len(names) > 1:
        raise SchemaError("f", f"expected a univariate polynomial, found variables {names}")
    ring = PolyRing(field, names or ["x"])
    f = _parse_in(ring, args.f, "f")
    if args.maxn < 1:
        raise SchemaError("maxn", "must be positive")
    return l_degree(f, args.maxn, cap=args.cap).to_json()


def _witt_entries(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return body.split(",")


def _witt_vector(ring: PolyRing, text: str, length: int, where: str) -> WittVector:
    parts = _witt_entries(text)
    if len(parts) != length:
        raise SchemaError(where, f"expected {length} entries, got {len(parts)}")
    return WittVector(ring.field.p, [_parse_in(ring, s, f"{where}[{i}]") for i, s in enumerate(parts)])


def format_witt(w: WittVector) -> str:
    return "(" + ",".join(format_poly(c) for c in w) + ")"


def cmd_witt(args) -> str:
    from .witt import frobenius_w, one_minus_F, verschiebung, witt_add, witt_neg
    field = FieldSpec(args.p, args.e)
    if args.r < 0:
        raise SchemaError("r", "level must be nonnegative")
    texts = [args.a] + ([args.b] if args.b is not None else [])
    names: list[str] = []
    for t in texts:
        for v in identifiers(" ".join(_witt_entries(t))):
            if v not in names:
                names.append(v)
    ring = PolyRing(field, names)
    length = args.r + 1
    a = _witt_vector(ring, args.a, length, "a")
    if args.action == "add":
        if args.b is None:
            raise SchemaError("b", "missing for witt add")
        out = witt_add(a, _witt_vector(ring, args.b, length, "b"))
    elif args.action == "neg":
        out = witt_neg(a)
    elif args.action == "frob":
        out = frobenius_w(a)
    elif args.action == "ver":
        out = verschiebung(a).truncate(length)
    elif args.action == "vf":
        out = verschiebung(frobenius_w(a)).truncate(length)
    else:
        out = one_minus_F(a)
    return format_witt(out)


# -- dispatch --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wildramify",
                     description="Swan conductors, Witt vectors and Bertini/Nagata constructions over finite fields.")
    parser.add_argument("--version", action="version", version=f"wildramify {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("swan", help="Swan conductor at infinity of one fiber")
    p.add_argument("--input", required=True)
    p.add_argument("--fiber", help="comma-separated fiber coordinates c1,...,cn")
    p.add_argument("--require-exact", action="store_true")
    p.set_defaults(func=cmd_swan)

    p = sub.add_parser("bertini", help="weights making the fiberwise Swan constant")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_bertini)

    p = sub.add_parser("align", help="fiberwise Swan table and alignment verdict")
    p.add_argument("--input", required=True)
    p.add_argument("--weights", help="d1,...,dn, or 'auto' for the Bertini weights")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    mode.add_argument("--fiber", action="append", help="explicit fiber point; repeatable")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("nagata", help="finite etale map by adding p-th powers")
    p.add_argument("--input", required=True)
    p.add_argument("--relations", help="JSON list of per-level relation hints")
    p.set_defaults(func=cmd_nagata)

    p = sub.add_parser("euler", help="Euler characteristics of a sheaf on a curve")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int, required=True)
    p.add_argument("--swan", default="", help="comma-separated Swan conductors, one per puncture")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("lsum", help="exponential sums and L-polynomial degree over GF(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--maxn", type=int, required=True)
    p.add_argument("--cap", type=int, help="point-count cap (default WILDRAMIFY_CAP or 2^20)")
    p.set_defaults(func=cmd_lsum)

    p = sub.add_parser("witt", help="Witt vector arithmetic")
    p.add_argument("action", choices=["add", "neg", "vf", "frob", "ver", "omf"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.set_defaults(func=cmd_witt)
    return parser


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except _Exit as exc:
        if exc.doc is not None:
            _emit(exc.doc)
        return exc.code
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InsufficientDepth as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INEXACT
    except (TrivialClass, NoRelationFound, WildRamifyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
