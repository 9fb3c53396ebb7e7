"""Command-line front end; every command prints one JSON object.

Exit status is 0 whenever the command ran (a "no" answer included), 2 for
malformed input or a violated contract, 3 when a size budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import bounds, exact_solver, generators, kernelizer, partial_fpt
from ._jit import backend
from .errors import CapacityError, ContractError, InputError
from .formats import (
    InstanceFile,
    file_to_generated,
    generated_to_file,
    read_graph,
    read_instance,
    serialize_graph,
    serialize_instance,
)
from .strings_core import WeightedCollection

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY = 0, 2, 3


def text(b: bytes) -> str:
    return b.decode("utf-8", errors="backslashreplace")


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required for {args.command}")
    return value


def _load(args) -> tuple[InstanceFile, WeightedCollection]:
    f = read_instance(args.inputs[0])
    return f, f.collection()


def _write(args, payload: bytes | str) -> None:
    if args.out:
        data = payload.encode() if isinstance(payload, str) else payload
        Path(args.out).write_bytes(data)


def cmd_exact(args) -> dict[str, Any]:
    _, S = _load(args)
    res = exact_solver.shortest_superstring_dp(S, max_width=args.width)
    return {"result": {"length": res.length, "superstring": text(res.superstring), "order": list(res.order)}}


def cmd_decide(args) -> dict[str, Any]:
    ell = _need(args, "ell")
    _, S = _load(args)
    opt = exact_solver.optimal_length(S, max_width=args.width)
    if ell < 0:
        raise InputError("--ell must be non-negative")
    return {"answer": opt <= ell, "result": {"optimal_length": opt}}


def _partial_answer(ans: partial_fpt.PartialAnswer) -> dict[str, Any]:
    out: dict[str, Any] = {"answer": ans.found}
    if ans.found:
        out["witness"] = text(ans.superstring)
        out["result"] = {"chosen": list(ans.chosen), "weight": ans.weight, "length": len(ans.superstring)}
    out["stats"] = {"trials": ans.trials}
    return out


def cmd_partial(args) -> dict[str, Any]:
    k, ell = _need(args, "k"), _need(args, "ell")
    f, S = _load(args)
    opts = dict(mode=args.mode, delta=args.delta, seed=args.seed, budget=args.budget)
    if args.bigw is not None:
        ans = partial_fpt.solve_weighted(S, k, ell, args.bigw, **opts)
    else:
        if f.weighted:
            raise InputError("weighted instances need --bigw")
        ans = partial_fpt.solve_partial(S, k, ell, **opts)
    return _partial_answer(ans)


def cmd_kernelize(args) -> dict[str, Any]:
    ell = _need(args, "ell")
    _, S = _load(args)
    out = kernelizer.kernelize(S, ell)
    trace = [f.as_record() for f in out.trace]
    payload: dict[str, Any] = {
        "answer": out.answer,
        "decided_by": out.rule if out.decided else None,
        "stats": {"rule_trace": trace, "r": out.r},
    }
    if not out.decided:
        payload["result"] = {
            "strings": [text(s) for s in out.strings.strings],
            "ids": out.strings.ids,
            "ell": out.ell,
            "h": out.h,
            "size_bound": out.size_bound,
        }
        _write(args, serialize_instance(InstanceFile(out.strings.strings, None, [f"ell {out.ell}"])))
    return payload


def cmd_bound(args) -> dict[str, Any]:
    _, S = _load(args)
    M = bounds.max_weight_matching(bounds.build_weighted_graph(S))
    s = bounds.matching_superstring(S, M)
    return {
        "result": {
            "mu": M.total_weight,
            "upper_bound": S.total_length - M.total_weight,
            "matching": [list(M.orientation[e]) for e in M.edges],
            "superstring": text(s),
            "length": len(s),
        }
    }


def cmd_greedy(args) -> dict[str, Any]:
    _, S = _load(args)
    s = bounds.greedy_superstring(S)
    return {"result": {"superstring": text(s), "length": len(s)}}


def cmd_gen_longtrail(args) -> dict[str, Any]:
    G = read_graph(args.inputs[0])
    H, ell = generators.hampath_to_longtrail(G)
    graph_text = serialize_graph(H)
    _write(args, graph_text)
    return {"result": {"n": H.n, "m": H.m, "ell": ell, "arcs": [[u + 1, v + 1] for u, v in H.arcs]}}


def _emit_generated(args, inst: generators.GeneratedInstance) -> dict[str, Any]:
    data = serialize_instance(generated_to_file(inst))
    _write(args, data)
    return {
        "result": {
            "params": inst.params,
            "count": len(inst.strings),
            "total_length": inst.strings.total_length,
            "strings": [text(s) for s in inst.strings.strings],
        }
    }


def cmd_gen_crosscomp(args) -> dict[str, Any]:
    ell = _need(args, "ell")
    graphs = [read_graph(p) for p in args.inputs]
    return _emit_generated(args, generators.longtrail_to_partial(graphs, ell, allow_long=args.allow_long))


def cmd_gen_belowmatching(args) -> dict[str, Any]:
    return _emit_generated(args, generators.longtrail_to_below_matching(read_graph(args.inputs[0])))


def cmd_verify(args) -> dict[str, Any]:
    inst = file_to_generated(read_instance(args.inputs[0]))
    rep = generators.verify_construction(inst)
    return {"answer": rep.passed, "result": {"construction": rep.construction, "checks": rep.checks, "notes": rep.notes}}


def cmd_oracle_trail(args) -> dict[str, Any]:
    G = read_graph(args.inputs[0])
    budget = args.budget if args.budget is not None else generators.TRAIL_BUDGET
    longest = generators.longest_trail_bruteforce(G, budget=budget, stop_at=args.ell)
    out: dict[str, Any] = {"result": {"longest": longest}}
    if args.ell is not None:
        out["answer"] = longest >= args.ell
        out["result"] = {"at_least": longest}
    return out


def cmd_oracle_hampath(args) -> dict[str, Any]:
    G = read_graph(args.inputs[0])
    return {"answer": generators.hamiltonian_path_bruteforce(G)}


COMMANDS = {
    "exact": (cmd_exact, "shortest superstring by subset DP"),
    "decide": (cmd_decide, "is there a superstring of length <= --ell"),
    "partial": (cmd_partial, "partial (weighted) superstring by color coding"),
    "kernelize": (cmd_kernelize, "compression kernel with rule trace"),
    "bound": (cmd_bound, "matching bound and matching superstring"),
    "greedy": (cmd_greedy, "greedy merge baseline"),
    "gen-longtrail": (cmd_gen_longtrail, "Hamiltonian path -> long trail graph"),
    "gen-crosscomp": (cmd_gen_crosscomp, "long trail graphs -> partial superstring instance"),
    "gen-belowmatching": (cmd_gen_belowmatching, "long trail graph -> below-matching instance"),
    "verify": (cmd_verify, "re-check a generated instance against its construction"),
    "oracle-trail": (cmd_oracle_trail, "longest trail by brute force"),
    "oracle-hampath": (cmd_oracle_hampath, "Hamiltonian path by brute force"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("inputs", nargs="+", help="instance or graph file(s)")
    common.add_argument("--ell", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--bigw", type=int, help="weight threshold W")
    common.add_argument("--delta", type=float, default=partial_fpt.DEFAULT_DELTA)
    common.add_argument(
        "--mode", choices=[partial_fpt.RANDOMIZED, partial_fpt.DETERMINISTIC], default=partial_fpt.RANDOMIZED
    )
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="enumeration cap for oracles and exhaustive modes")
    common.add_argument("--width", type=int, default=exact_solver.DEFAULT_WIDTH, help="DP bitmask width")
    common.add_argument("--out", help="write the generated/reduced file here")
    common.add_argument("--allow-long", action="store_true", help="gen-crosscomp: accept --ell >= n")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null")

    parser = argparse.ArgumentParser(prog="superstring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None and args.command == "partial":
        args.budget = partial_fpt.DEFAULT_BUDGET
    start = time.perf_counter()
    try:
        payload = COMMANDS[args.command][0](args)
    except CapacityError as exc:
        code, error = EXIT_CAPACITY, exc
    except (InputError, ContractError, OSError, UnicodeDecodeError) as exc:
        code, error = EXIT_INPUT, exc
    else:
        elapsed = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
        stats = payload.pop("stats", {})
        stats["elapsed_ms"] = elapsed
        stats["backend"] = backend()
        out = {"command": args.command, **payload, "stats": stats}
        sys.stdout.write(_dump(out) + "\n")
        return EXIT_OK
    err = {"command": args.command, "error": {"type": type(error).__name__, "message": str(error)}}
    sys.stderr.write(_dump(err) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
