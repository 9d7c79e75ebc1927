"""Command-line front door: check, enclose, verify, oracle, gen.

Instances are UTF-8 JSON files:

    {"n": 3, "lambda": 1, "k": 4,
     "classes": [[[0,1]], [[0,2]], [[1,2]], []]}

Repeated pairs encode multiplicity.  The target parameters m, mu, r are
command-line flags so that one inner instance can be tested against many
targets.  Exit codes are a stable contract: 0 success, 1 condition or
verification failure, 2 input error, 3 out-of-regime or cap exceeded,
4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .conditions import (
    check_a_prime,
    check_b,
    check_c,
    check_theorem15,
    make_params,
)
from .decomp import Decomposition, Enclosing, is_admissible, verify_enclosing
from .detach import build_amalgamated_triad, fair_detach, verify_detachment
from .errors import (
    BudgetExhaustedError,
    CapExceededError,
    InstanceFormatError,
    PreconditionError,
)
from .extend import enclose_in_mu_kn
from .mgraph import Multigraph, complete_multigraph
from .oracle import brute_force_enclose, enumerate_decompositions, random_admissible

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_REGIME = 3
EXIT_BUDGET = 4

DEFAULT_BUDGET = 10_000_000


def default_budget() -> int:
    env = os.environ.get("ENCLOSE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InstanceFormatError(f"ENCLOSE_BUDGET must be an integer, got {env!r}")
    return DEFAULT_BUDGET


def load_instance(path: str | Path) -> tuple[int, int, int, Decomposition]:
    """Parse an instance file into (n, lambda, k, decomposition)."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceFormatError(f"cannot read instance {path}: {exc}")
    try:
        n = int(payload["n"])
        lam = int(payload["lambda"])
        k = int(payload["k"])
        raw_classes = payload["classes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"instance {path} missing or malformed field: {exc}")
    if n < 1 or lam < 1 or k < 1:
        raise InstanceFormatError("n, lambda, k must be positive")
    if not isinstance(raw_classes, list) or len(raw_classes) != k:
        raise InstanceFormatError(f"expected {k} classes, found {len(raw_classes)}")
    classes = []
    for idx, raw in enumerate(raw_classes):
        cls = Multigraph(n)
        for pair in raw:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)
            ):
                raise InstanceFormatError(f"class {idx} has a malformed pair {pair}")
            u, v = pair
            if u == v:
                raise InstanceFormatError(f"class {idx} contains a loop {pair}")
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceFormatError(f"class {idx} pair {pair} out of range")
            cls.add_edge(u, v)
        classes.append(cls)
    d = Decomposition(complete_multigraph(n, lam), tuple(classes))
    try:
        d.validate_partition()
    except ValueError as exc:
        raise InstanceFormatError(f"instance {path} is not a full decomposition: {exc}")
    return n, lam, k, d


def serialize_decomposition(d: Decomposition, lam: int) -> dict:
    classes = []
    for cls in d.classes:
        pairs = []
        for (u, v), mult in sorted(cls.edges.items()):
            pairs.extend([[u, v]] * mult)
        classes.append(pairs)
    return {
        "n": d.base.vertex_count,
        "lambda": lam,
        "k": d.k,
        "classes": classes,
    }


def write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _regime(n: int, m: int) -> str | None:
    if m >= 2 * n - 1:
        return "B"
    if m == 2 * n - 2:
        return "C"
    if m > n:
        return "T15"
    return None


def _battery(regime: str, g, params):
    if regime == "B":
        return check_b(g, params)
    if regime == "C":
        return check_c(g, params)
    return check_theorem15(g, params)


def cmd_check(args) -> int:
    n, lam, k, g = load_instance(args.instance)
    params = make_params(n=n, m=args.m, lam=lam, mu=args.mu, r=args.r, k=k)
    regime = _regime(n, args.m)
    report = {
        "params": {"n": n, "m": args.m, "lambda": lam, "mu": args.mu,
                   "r": args.r, "k": k, "p": str(params.p)},
        "admissible_r": is_admissible(g, args.r),
    }
    if args.r >= 3:
        report["admissible_r_minus_1"] = is_admissible(g, args.r - 1)
    if regime is None:
        report["regime"] = None
        report["error"] = "no applicable theorem regime (m must exceed n)"
        _emit(report)
        return EXIT_REGIME
    if regime == "T15" and args.r < 3:
        report["regime"] = None
        report["error"] = "m < 2n-2 requires r >= 3"
        _emit(report)
        return EXIT_REGIME
    battery = _battery(regime, g, params)
    report["regime"] = regime
    report["battery"] = battery.as_dict()
    _emit(report)
    return EXIT_OK if battery.ok else EXIT_FAIL


def cmd_enclose(args) -> int:
    n, lam, k, g = load_instance(args.instance)
    params = make_params(n=n, m=args.m, lam=lam, mu=args.mu, r=args.r, k=k)
    regime = _regime(n, args.m)
    if regime is None or (regime == "T15" and args.r < 3):
        _emit({"error": "no applicable theorem regime for these parameters"})
        return EXIT_REGIME
    battery = _battery(regime, g, params)
    if not battery.ok:
        _emit({
            "status": "conditions-failed",
            "first_failing": battery.first_failing(),
            "battery": battery.as_dict(),
        })
        return EXIT_FAIL

    budget = args.budget if args.budget is not None else default_budget()
    inner_full, trace = enclose_in_mu_kn(g, params, regime, seed=args.seed)
    triad = build_amalgamated_triad(inner_full, params)
    try:
        witness = fair_detach(triad, params, seed=args.seed, budget=budget)
    except BudgetExhaustedError as exc:
        _emit({"status": "budget-exhausted", "detail": str(exc)})
        return EXIT_BUDGET

    enclosing = Enclosing(witness.result, n)
    ok, problems = verify_enclosing(g, enclosing, params)
    if not ok:
        _emit({"status": "self-verification-failed", "problems": problems})
        return EXIT_FAIL
    out = args.out or f"{args.instance}.enclosing.json"
    trace_out = args.trace_out or f"{args.instance}.trace.json"
    write_json(out, serialize_decomposition(witness.result, args.mu))
    write_json(trace_out, {
        "extension": trace.as_list(),
        "detachment": {
            "nodes": witness.stats.nodes,
            "restarts": witness.stats.restarts,
            "wall_time": witness.stats.wall_time,
        },
    })
    _emit({
        "status": "enclosed",
        "out": str(out),
        "trace": str(trace_out),
        "detach_nodes": witness.stats.nodes,
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    n, lam, k, inner = load_instance(args.instance)
    m, mu, outer_k, outer = load_instance(args.enclosing)
    if outer_k != k:
        _emit({"error": f"class counts differ: inner {k}, enclosing {outer_k}"})
        return EXIT_INPUT
    params = make_params(n=n, m=m, lam=lam, mu=mu, r=args.r, k=k)
    ok, problems = verify_enclosing(inner, Enclosing(outer, n), params)
    _emit({"valid": ok, "problems": problems})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args) -> int:
    n, lam, k, g = load_instance(args.instance)
    params = make_params(n=n, m=args.m, lam=lam, mu=args.mu, r=args.r, k=k)
    budget = args.budget if args.budget is not None else default_budget()
    result = brute_force_enclose(g, params, budget=budget)
    report = {
        "status": result.status.upper(),
        "nodes": result.stats.nodes,
        "wall_time": result.stats.wall_time,
    }
    if result.status == "found":
        out = args.out or f"{args.instance}.witness.json"
        write_json(out, serialize_decomposition(result.witness.outer, args.mu))
        report["witness"] = str(out)
        _emit(report)
        return EXIT_OK
    _emit(report)
    return EXIT_BUDGET if result.status == "budget" else EXIT_FAIL


def cmd_gen(args) -> int:
    if args.exhaustive:
        out_dir = Path(args.out or "instances")
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for idx, d in enumerate(
            enumerate_decompositions(args.n, args.lam, args.k, dedup=True)
        ):
            path = out_dir / f"instance_{idx:04d}.json"
            write_json(path, serialize_decomposition(d, args.lam))
            written.append(str(path))
        _emit({"count": len(written), "dir": str(out_dir)})
        return EXIT_OK
    d = random_admissible(args.n, args.lam, args.k, args.r, seed=args.seed)
    payload = serialize_decomposition(d, args.lam)
    if args.out:
        write_json(args.out, payload)
        _emit({"out": args.out})
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enclosings",
        description="Decide and construct enclosings of complete-multigraph "
        "decompositions in 2-edge-connected r-factorizations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the applicable condition battery")
    p_check.add_argument("instance")
    p_check.add_argument("--m", type=int, required=True)
    p_check.add_argument("--mu", type=int, required=True)
    p_check.add_argument("--r", type=int, required=True)
    p_check.set_defaults(func=cmd_check)

    p_enc = sub.add_parser("enclose", help="construct and self-verify an enclosing")
    p_enc.add_argument("instance")
    p_enc.add_argument("--m", type=int, required=True)
    p_enc.add_argument("--mu", type=int, required=True)
    p_enc.add_argument("--r", type=int, required=True)
    p_enc.add_argument("--seed", type=int, default=0)
    p_enc.add_argument("--budget", type=int, default=None)
    p_enc.add_argument("--out", default=None)
    p_enc.add_argument("--trace-out", dest="trace_out", default=None)
    p_enc.set_defaults(func=cmd_enclose)

    p_ver = sub.add_parser("verify", help="verify an enclosing file against an instance")
    p_ver.add_argument("instance")
    p_ver.add_argument("enclosing")
    p_ver.add_argument("--r", type=int, required=True)
    p_ver.set_defaults(func=cmd_verify)

    p_orc = sub.add_parser("oracle", help="exhaustive enclosure search")
    p_orc.add_argument("instance")
    p_orc.add_argument("--m", type=int, required=True)
    p_orc.add_argument("--mu", type=int, required=True)
    p_orc.add_argument("--r", type=int, required=True)
    p_orc.add_argument("--budget", type=int, default=None)
    p_orc.add_argument("--out", default=None)
    p_orc.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate instance files")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--lambda", dest="lam", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--r", type=int, default=2)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--exhaustive", action="store_true")
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_REGIME
    except PreconditionError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    except BudgetExhaustedError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
