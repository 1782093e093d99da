"""Command-line front end: ``rankecp <command> [options]``.

Every command reads and writes JSON. Randomness comes from one ``--seed``;
each random step draws from its own stream, seeded by
``sha256(f"{seed}:{label}")``, so steps stay reproducible on their own.

Exit codes: 0 success, 1 decoding failure / invalid pair / counterexample,
2 invalid input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import serialize as ser
from .codes import ExtLinearCode, MatrixCode, min_weight_word, random_rank_error
from .decoder import (SUCCESS, convert_pair, decode, embed_received, validate_pair)
from .errors import RankECPError
from .families import (find_normal_element, gabidulin, gabidulin_recp, normal_orbit,
                       skew_cyclic_code, skew_cyclic_locating_pair)
from .fields import make_field
from .hamming import classical_ecp_decode, decode_hamming, error_patterns, grs_ecp
from .matrix_space import rep_inverse


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def stream(seed: int, label: str) -> random.Random:
    """The random stream for one labelled step of a seeded run."""
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def load_json(path: str):
    text = sys.stdin.read() if path == "-" else _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _emit(args, obj) -> None:
    text = ser.dumps(obj) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_code(path: str):
    """A code file, or the target code of a pair file."""
    d = load_json(path)
    if isinstance(d, dict) and "C" in d and "kind" in d and d["kind"] in ("I", "II"):
        d = d["C"]
    return ser.code_from_json(d)


def _load_word(path: str, key: str = "codeword"):
    d = load_json(path)
    if isinstance(d, dict):
        for k in (key, "received", "codeword"):
            if k in d:
                return d[k]
        raise InputError(f"{path}: no {key!r} entry")
    return d


# ---------------------------------------------------------------------------
# commands


def cmd_field(args):
    tower = make_field(args.q, args.m, args.modulus, s=args.s)
    out = {"field": tower.descriptor(), "order": tower.ext.order,
           "alpha": list(tower.alpha.elements), "alpha_dual": list(tower.alpha_dual.elements)}
    if tower.top is not None:
        a = find_normal_element(tower, seed=args.seed)
        out["n"] = tower.n
        out["normal"] = a
        out["normal_orbit"] = list(normal_orbit(tower, a))
    _emit(args, out)
    return 0


def cmd_gabidulin(args):
    tower = make_field(args.q, args.m)
    b = tuple(args.b) if args.b else ()
    if args.t is not None:
        pair = gabidulin_recp(tower, args.t, args.n, args.r, b, args.variant)
        _emit(args, ser.pair_to_json(pair))
    else:
        if args.k is None:
            raise InputError("give --t for a pair or --k for a code")
        _emit(args, ser.code_to_json(gabidulin(tower, args.k, args.n, args.r, b)))
    return 0


def cmd_skew(args):
    tower = make_field(args.q, args.m, s=args.s)
    normal = args.normal if args.normal is not None else find_normal_element(tower, seed=args.seed)
    if args.J is None:
        _emit(args, ser.code_to_json(skew_cyclic_code(tower, args.I, normal)))
        return 0
    pair = skew_cyclic_locating_pair(tower, args.I, args.J, args.t, normal)
    _emit(args, ser.pair_to_json(pair))
    return 0


def cmd_encode(args):
    code = _load_code(args.code)
    if args.message is not None:
        msg = json.loads(args.message)
        if isinstance(code, MatrixCode):
            word = code.combine(msg)
        else:
            word = code.encode(msg)
    else:
        word = code.random_word(stream(args.seed, "encode"))
    _emit(args, {"codeword": _plain(word)})
    return 0


def cmd_corrupt(args):
    code = _load_code(args.code)
    word = _load_word(args.input)
    rng = stream(args.seed, "corrupt")
    if isinstance(code, ExtLinearCode):
        tower = code.tower
        basis = tower.alpha if code.level == "ext" else None
        if basis is None:
            raise InputError("corrupt supports codes over F_(q^m) only")
        E = random_rank_error(tower.base, basis.m, code.n, args.rank, rng)
        e = rep_inverse(basis, E)
        F = code.field
        r = tuple(F.add(x, y) for x, y in zip(word, e))
    else:
        F = code.field
        e = random_rank_error(F, code.rows, code.cols, args.rank, rng)
        r = [[F.add(x, y) for x, y in zip(u, v)] for u, v in zip(word, e)]
    _emit(args, {"codeword": _plain(word), "error": _plain(e), "received": _plain(r),
                 "rank": args.rank, "seed": args.seed})
    return 0


def cmd_decode(args):
    pair = ser.pair_from_json(load_json(args.pair))
    doc = load_json(args.received)
    r = _load_word(args.received, "received")
    sent = doc.get("codeword") if isinstance(doc, dict) and "received" in doc else None
    embedded = False
    if pair.kind == "II" and r and not isinstance(r[0], list):
        r = embed_received(pair, r)
        embedded = True
    out = decode(pair, r)
    res = ser.outcome_to_json(out)
    if embedded and out.status == SUCCESS:
        res["codeword_vector"] = list(rep_inverse(pair.embed_basis, out.codeword))
    ok = out.status == SUCCESS
    if sent is not None and ok:
        # the corrupt step records what was sent, so miscorrections can be flagged
        got = res.get("codeword_vector", res["codeword"])
        res["matches_transmitted"] = got == _plain(sent)
        ok = res["matches_transmitted"]
    _emit(args, res)
    return 0 if ok else 1


def cmd_validate(args):
    pair = ser.pair_from_json(load_json(args.pair))
    cert = validate_pair(pair)
    _emit(args, ser.certificate_to_json(cert))
    ok = cert.valid or (pair.role == "locating" and cert.locating)
    return 0 if ok else 1


def cmd_distance(args):
    code = _load_code(args.code)
    d, w = min_weight_word(code)
    _emit(args, {"d_R": d, "witness": _plain(w), "n": code.n, "mode": "brute"})
    return 0


def cmd_bounds(args):
    names = bounds_mod.BOUND_NAMES if args.name == "all" else (args.name,)
    results = {}
    bad = 0
    for name in names:
        rng = stream(args.seed, f"bounds:{name}")
        reports = [bounds_mod.run_bound(name, rng) for _ in range(args.count)]
        bad += sum(r.counterexample for r in reports)
        results[name] = {
            "instances": len(reports),
            "admissible": sum(r.admissible for r in reports),
            "counterexamples": sum(r.counterexample for r in reports),
            "reports": [r.to_json() for r in reports] if args.verbose else None,
        }
    _emit(args, {"seed": args.seed, "bounds": results})
    return 1 if bad else 0


def cmd_convert(args):
    pair = ser.pair_from_json(load_json(args.pair))
    if pair.kind != "I":
        raise InputError("convert-pair needs a type-I pair")
    _emit(args, ser.pair_to_json(convert_pair(pair)))
    return 0


def cmd_hamming(args):
    hp = grs_ecp(args.q, args.t)
    F = hp.C.field
    rng = stream(args.seed, "hamming")
    words = [hp.C.random_word(rng) for _ in range(args.codewords)]
    total = agree = correct = 0
    for w in range(1, hp.t + 1):
        for e in error_patterns(args.q, hp.n, w):
            for c in words:
                r = tuple(F.add(x, y) for x, y in zip(c, e))
                a, b = decode_hamming(hp, r), classical_ecp_decode(hp, r)
                total += 1
                correct += a.ok and tuple(a.codeword) == tuple(c)
                agree += a.status == b.status and _plain(a.codeword) == _plain(b.codeword)
    _emit(args, {"q": args.q, "n": hp.n, "t": hp.t, "instances": total,
                 "correct": correct, "agree_with_classical": agree})
    return 0 if correct == agree == total else 1


def _plain(x):
    if x is None:
        return None
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return int(x)


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankecp", description="Rank-metric error-correcting pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = add("field", cmd_field, "describe a field tower")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--s", type=int)
    sp.add_argument("--modulus", type=_int_list)

    sp = add("gabidulin", cmd_gabidulin, "emit a Gabidulin code (--k) or pair (--t)")
    for a in ("--q", "--m", "--n"):
        sp.add_argument(a, type=int, required=True)
    sp.add_argument("--t", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--b", type=_int_list)
    sp.add_argument("--variant", choices=("alpha", "alpha_n"), default="alpha")

    sp = add("skew", cmd_skew, "emit a q-cyclic code (--I) or locating pair (--I --J --t)")
    for a in ("--q", "--m", "--s"):
        sp.add_argument(a, type=int, required=True)
    sp.add_argument("--I", type=_int_list, required=True)
    sp.add_argument("--J", type=_int_list)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--normal", type=int)

    sp = add("encode", cmd_encode, "encode a message or draw a random codeword")
    sp.add_argument("--code", required=True)
    sp.add_argument("--message", help="JSON list of coefficients")

    sp = add("corrupt", cmd_corrupt, "add a random error of the given rank")
    sp.add_argument("--code", required=True)
    sp.add_argument("--input", required=True)
    sp.add_argument("--rank", type=int, required=True)

    sp = add("decode", cmd_decode, "decode a received word with a pair")
    sp.add_argument("--pair", required=True)
    sp.add_argument("--received", required=True)

    sp = add("validate-pair", cmd_validate, "check the pair conditions")
    sp.add_argument("--pair", required=True)

    sp = add("distance", cmd_distance, "minimum rank distance")
    sp.add_argument("--code", required=True)
    sp.add_argument("--brute", action="store_true", help="exhaustive search (the only mode)")

    sp = add("bounds", cmd_bounds, "random checks of the distance bounds")
    sp.add_argument("--name", choices=bounds_mod.BOUND_NAMES + ("all",), required=True)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--verbose", action="store_true", help="include every report")

    sp = add("convert-pair", cmd_convert, "type-I pair to type-II pair")
    sp.add_argument("--pair", required=True)

    sp = add("hamming-demo", cmd_hamming, "Hamming ECP decoding through the rank machinery")
    sp.add_argument("--q", type=int, default=8)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--codewords", type=int, default=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (RankECPError, ValueError, KeyError, TypeError, IndexError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
