"""Command-line interface: ``geocards <command> ...``.

Exit codes: 0 success, 1 a verification found a violation, 2 usage or
input error, 3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import Ambiguous, GeoCardsError, SizeGuard
from .params import ProtocolParams, check_conditions, derive_params, enumerate_sizes
from .protocol import (
    HAND_BUDGET,
    CardMap,
    Deal,
    EnumeratedAnnouncement,
    ImplicitAnnouncement,
    bob_resolve,
    choose_announcement,
    enumerate_announcement,
    run_exchange,
)
from .verifier import ViolationKind, check_announcement, check_protocol

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# documents


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def deal_to_doc(deal, params, seed=None):
    doc = {
        "size": list(params.size),
        "params": {"q": params.q, "d": params.d, "k": params.k},
        "hands": {"A": list(deal.A), "B": list(deal.B), "C": list(deal.C)},
    }
    if seed is not None:
        doc["seed"] = seed
    return doc


def deal_from_doc(doc):
    try:
        a, b, c = doc["size"]
        p = doc["params"]
        params = ProtocolParams(a, b, c, p["q"], p["d"], p["k"])
        hands = doc["hands"]
        deal = Deal(hands["A"], hands["B"], hands["C"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed deal document: {exc}") from exc
    deal.check_params(params)
    return deal, params, doc.get("seed")


def card_map_doc(cmap):
    return [list(cmap.point(card)) for card in range(1, cmap.params.deck_size + 1)]


def card_map_from_doc(params, points):
    sp = CardMap.identity(params).space
    return CardMap(params, tuple(sp.decode(tuple(x)) for x in points))


def announcement_doc(ann, seed, max_hands):
    return {
        "kind": "announcement",
        "params": ann.params.as_dict(),
        "k": ann.k,
        "seed": seed,
        "card_map": card_map_doc(ann.cardmap),
        "hands": [list(h) for h in enumerate_announcement(ann, max_hands).hands],
    }


def transcript_doc(tr, report, max_hands):
    return {
        "kind": "transcript",
        "params": tr.params.as_dict(),
        "seed": tr.seed,
        "card_map": card_map_doc(tr.announcement.cardmap),
        "announcement": [list(h) for h in enumerate_announcement(tr.announcement, max_hands).hands],
        "bob_resolution": list(tr.bob_resolution),
        "bob_second_announcement": list(tr.bob_second_announcement),
        "cath_candidate_count": tr.cath_candidate_count,
        "verification": {"k": report.k, "informative": report.informative, "k_safe": report.safe},
        "violations": [v.as_dict() for v in report.violations],
    }


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def params_from_doc(doc):
    p = doc["params"]
    return ProtocolParams(p["a"], p["b"], p["c"], p["q"], p["d"], p["k"])


# output helpers


def emit(doc, args):
    if args.format == "table":
        text = render_table(doc)
    else:
        text = dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    sys.stdout.write(text)


def render_table(doc):
    if isinstance(doc, list):
        if not doc:
            return "(none)\n"
        keys = list(doc[0])
        rows = [keys] + [[str(r[k]) for k in keys] for r in doc]
        widths = [max(len(row[i]) for row in rows) for i in range(len(keys))]
        return "".join("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n" for row in rows)
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, list) and len(value) > 8:
            value = f"[{len(value)} entries]"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def params_from_args(args):
    if None in (args.q, args.d, args.k, args.c):
        raise UsageError("--q, --d, --k and --c are required")
    if args.a is not None or args.b is not None:
        a = args.a if args.a is not None else args.k * args.q**args.d
        b = args.b if args.b is not None else args.q ** (args.d + 1) - a - args.c
        return ProtocolParams(a, b, args.c, args.q, args.d, args.k)
    return ProtocolParams.from_qdkc(args.q, args.d, args.k, args.c)


# commands


def cmd_params(args):
    if args.action == "derive":
        emit(derive_params(args.k, args.c, args.d).as_dict(), args)
    elif args.action == "list":
        records = enumerate_sizes(args.max_deck)
        if args.applicable:
            records = [r for r in records if r.theorem_applies]
        emit([r.as_dict() for r in records], args)
    else:
        emit(check_conditions(params_from_args(args)).as_dict(), args)
    return EXIT_OK


def cmd_deal(args):
    params = params_from_args(args)
    emit(deal_to_doc(Deal.random(params, args.seed), params, args.seed), args)
    return EXIT_OK


def _deal_or_random(args, params=None):
    if args.deal:
        deal, params, seed = deal_from_doc(load_json(args.deal))
        seed = args.seed if args.seed is not None else seed
        if seed is None:
            raise UsageError("no seed in the deal file; pass --seed")
        return deal, params, seed
    if args.seed is None:
        raise UsageError("--seed is required")
    params = params or params_from_args(args)
    return Deal.random(params, args.seed), params, args.seed


def cmd_announce(args):
    deal, params, seed = _deal_or_random(args)
    ann = choose_announcement(deal.A, params, seed)
    emit(announcement_doc(ann, seed, args.max_hands), args)
    return EXIT_OK


def _load_announcement(doc):
    params = params_from_doc(doc)
    hands = doc.get("hands", doc.get("announcement"))
    if hands is None:
        raise UsageError("document has no announced hands")
    return params, EnumeratedAnnouncement(tuple(tuple(h) for h in hands), params.deck_size)


def cmd_resolve(args):
    doc = load_json(args.announcement)
    params, ann = _load_announcement(doc)
    if args.bob:
        B = [int(x) for x in args.bob.split(",") if x.strip()]
    elif args.deal:
        B = list(deal_from_doc(load_json(args.deal))[0].B)
    else:
        raise UsageError("pass --bob or --deal")
    if len(B) != params.b:
        raise UsageError(f"Bob must hold {params.b} cards, got {len(B)}")
    try:
        alice = bob_resolve(ann, B)
    except Ambiguous as exc:
        sys.stdout.write(dumps({"error": "ambiguous", "candidates": exc.count}))
        return EXIT_VIOLATION
    cath = sorted(set(range(1, params.deck_size + 1)) - set(alice) - set(B))
    emit({"alice": list(alice), "cath": cath}, args)
    return EXIT_OK


def cmd_verify(args):
    if args.target == "protocol":
        params = params_from_args(args)
        report = check_protocol(params, args.k_safety, args.max_hands)
        out = report.as_dict()
        cmap = CardMap.identity(params)
        for v, vdoc in zip(report.violations, out["violations"]):
            vdoc["cath_points"] = [list(cmap.point(c)) for c in v.cath_hand]
            if v.kind is not ViolationKind.NOT_INFORMATIVE:
                vdoc["tuple_points"] = [list(cmap.point(c)) for c in v.tuple]
        emit(out, args)
        return EXIT_OK if report.ok else EXIT_VIOLATION

    if not args.file:
        raise UsageError("verify announcement needs --file")
    doc = load_json(args.file)
    params, ann = _load_announcement(doc)
    embedded = doc.get("verification")
    k = args.k_safety or (embedded or {}).get("k") or doc.get("k") or params.k
    report = check_announcement(ann, params, k, args.max_hands)
    out = report.as_dict()
    ok = report.ok
    if "card_map" in doc:
        implicit = ImplicitAnnouncement(card_map_from_doc(params, doc["card_map"]), doc.get("k", params.k))
        matches = enumerate_announcement(implicit, args.max_hands).hands == ann.hands
        out["card_map_consistent"] = matches
        ok = ok and matches
    if embedded is not None:
        reproduced = embedded.get("informative") == report.informative and embedded.get("k_safe") == report.safe
        out["flags_reproduced"] = reproduced
        ok = ok and reproduced
    emit(out, args)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_demo(args):
    deal, params, seed = _deal_or_random(args)
    tr = run_exchange(deal, params, seed)
    report = check_announcement(tr.announcement, params, args.k_safety, args.max_hands)
    doc = transcript_doc(tr, report, args.max_hands)
    doc["deal"] = deal_to_doc(deal, params)["hands"]
    emit(doc, args)
    ok = tr.bob_resolution == deal.A and tr.bob_second_announcement == deal.C and report.ok
    return EXIT_OK if ok else EXIT_VIOLATION


def _add_common(p):
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--max-hands", type=int, default=HAND_BUDGET, help="enumeration budget in hands")


def _add_params(p):
    for name in ("a", "b", "c", "q", "d", "k"):
        p.add_argument(f"--{name}", type=int)


def build_parser():
    parser = argparse.ArgumentParser(prog="geocards", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive, list or check parameter sets")
    psub = p.add_subparsers(dest="action", required=True)
    pd = psub.add_parser("derive")
    pd.add_argument("--k", type=int, required=True)
    pd.add_argument("--c", type=int, required=True)
    pd.add_argument("--d", type=int, default=1)
    pl = psub.add_parser("list")
    pl.add_argument("--max-deck", type=int, default=32)
    pl.add_argument("--applicable", action="store_true", help="only sizes meeting both conditions")
    pc = psub.add_parser("check")
    _add_params(pc)
    for q in (pd, pl, pc):
        _add_common(q)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("deal", help="deal cards at random")
    _add_params(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("announce", help="Alice's announcement for a deal")
    _add_params(p)
    p.add_argument("--deal")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=cmd_announce)

    p = sub.add_parser("resolve", help="Bob recovers Alice's hand from an announcement")
    p.add_argument("--announcement", required=True)
    p.add_argument("--bob", help="comma-separated cards")
    p.add_argument("--deal")
    _add_common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("verify", help="check informativity and k-safety")
    p.add_argument("target", choices=("announcement", "protocol"))
    _add_params(p)
    p.add_argument("--file", help="announcement or transcript document")
    p.add_argument("--k-safety", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", help="run a full exchange and verify it")
    _add_params(p)
    p.add_argument("--deal")
    p.add_argument("--seed", type=int)
    p.add_argument("--k-safety", type=int)
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SizeGuard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, GeoCardsError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
