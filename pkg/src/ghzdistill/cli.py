"""Command-line entry point: ``ghzdistill {classify,distill,verify,random,crosscheck}``.

Inputs are JSON files (``-`` or no path reads standard input) holding either
``{"amplitudes": [[re, im], ...]}`` or ``{"lambda": [...], "phi": ...}``.
Outputs are JSON with sorted keys.

Exit codes: 0 ok, 2 malformed input, 3 invariant violation, 4 state not
distillable, 5 sampling gave up.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .analytic import CanonicalState, analytic_plan, intermediates, to_amplitudes
from .distill import (
    CLASS_TAGS,
    DEFAULT_TOL,
    classify,
    distill_plan,
    fidelity_after,
    success_probability,
)
from .errors import ContractViolationError, NonDistillableError
from .qstate import NORM_TOL, LocalOp, PureState3, apply_product, fidelity_ghz, haar_random
from .wootters import wootters_reps

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_INVARIANT = 3
EXIT_NOT_DISTILLABLE = 4
EXIT_TIMEOUT = 5


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_json(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_MALFORMED, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_MALFORMED, f"malformed JSON in {path or 'stdin'}: {exc}") from None


def load_input(path):
    """Return ``(state, canonical_or_None)`` from a state or canonical JSON file."""
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise CliError(EXIT_MALFORMED, "input must be a JSON object")
    if "amplitudes" in obj:
        try:
            state = PureState3.from_json(obj)
        except (TypeError, ValueError, KeyError) as exc:
            raise CliError(EXIT_MALFORMED, f"bad amplitudes: {exc}") from None
        if not state.is_normalized(NORM_TOL):
            raise CliError(EXIT_INVARIANT, f"state is not normalized (norm^2 = {state.norm_sq!r})")
        return state, None
    if "lambda" in obj:
        lam = obj["lambda"]
        if not isinstance(lam, list) or len(lam) != 5:
            raise CliError(EXIT_MALFORMED, "'lambda' must be an array of 5 numbers")
        try:
            lam = tuple(float(x) for x in lam)
            phi = float(obj.get("phi", 0.0))
        except (TypeError, ValueError) as exc:
            raise CliError(EXIT_MALFORMED, f"bad canonical input: {exc}") from None
        try:
            canon = CanonicalState(lam, phi)
        except ValueError as exc:
            raise CliError(EXIT_INVARIANT, f"canonical state violates its invariants: {exc}") from None
        return to_amplitudes(canon), canon
    raise CliError(EXIT_MALFORMED, "input needs an 'amplitudes' or a 'lambda' key")


def _complex_json(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _pi_json(table) -> dict:
    return {q: [float(p) for p in pair] for q, pair in table.items()}


def plan_report(state, plan, tol) -> dict:
    return {
        "class": plan.state_class.tag,
        "operators": [_complex_json(op.matrix) for op in plan.ops],
        "successProbability": float(plan.success_probability),
        "fidelityAfter": fidelity_after(state, plan),
        "piTable": _pi_json(plan.pi_table),
        "toleranceUsed": tol,
        "balanceQubit": plan.balance_qubit,
    }


def _not_distillable(exc: NonDistillableError) -> CliError:
    return CliError(EXIT_NOT_DISTILLABLE, str(exc), exc.state_class.to_json())


def cmd_classify(args) -> dict:
    state, _ = load_input(args.input)
    out = classify(state, args.tol).to_json()
    out["pi"] = _pi_json({r.qubit: (r.pi0, r.pi1_raw) for r in wootters_reps(state)})
    return out


def cmd_distill(args) -> dict:
    state, _ = load_input(args.input)
    try:
        plan = distill_plan(state, args.tol, args.balance_qubit)
    except NonDistillableError as exc:
        raise _not_distillable(exc) from None
    return plan_report(state, plan, args.tol)


def _load_operators(path) -> list[LocalOp]:
    obj = _read_json(path)
    try:
        raw = obj["operators"]
        if len(raw) != 3:
            raise ValueError("need three operators")
        ops = []
        for q, m in zip("ABC", raw):
            arr = np.array([[complex(e[0], e[1]) for e in row] for row in m])
            if arr.shape != (2, 2):
                raise ValueError(f"operator on {q} is not 2x2")
            ops.append(LocalOp(arr, q))
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise CliError(EXIT_MALFORMED, f"bad plan: {exc}") from None
    return ops


def cmd_verify(args) -> dict:
    state, _ = load_input(args.state)
    ops = _load_operators(args.plan)
    for op in ops:
        if not op.is_contraction():
            raise CliError(
                EXIT_MALFORMED,
                f"operator on {op.qubit} is not a contraction (singular value {op.max_singular_value:.12g})",
            )
    out = apply_product(state, ops)
    n = out.norm_sq
    f = fidelity_ghz(out.normalized()) if n > 0 else 0.0
    return {"fidelity": f, "successProbability": n, "pass": bool(f >= 1.0 - args.tol)}


def cmd_random(args) -> list[dict]:
    rng = np.random.default_rng(args.seed)
    states = []
    attempts = 0
    while len(states) < args.count:
        if attempts >= args.max_attempts:
            raise CliError(
                EXIT_TIMEOUT,
                f"found {len(states)} of {args.count} states of class {args.class_filter} in {attempts} draws",
            )
        attempts += 1
        state = haar_random(rng)
        if args.class_filter and classify(state, args.tol).tag != args.class_filter:
            continue
        states.append(state.to_json())
    return states


def cmd_crosscheck(args) -> dict:
    state, canon = load_input(args.input)
    if canon is None:
        raise CliError(EXIT_MALFORMED, "crosscheck needs canonical input ('lambda' and 'phi')")
    try:
        inter = intermediates(canon)
        a_plan = analytic_plan(canon)
        n_plan = distill_plan(state, args.tol)
    except NonDistillableError as exc:
        raise _not_distillable(exc) from None
    reps = {r.qubit: (r.pi0, r.pi1_raw) for r in wootters_reps(state)}
    sides = {}
    for name, plan, pis in (("analytic", a_plan, inter.pi), ("numeric", n_plan, reps)):
        sides[name] = {
            "pi": _pi_json(pis),
            "fidelity": fidelity_after(state, plan),
            "successProbability": success_probability(state, plan),
        }
    a, n = sides["analytic"], sides["numeric"]
    pi_gap = max(abs(x - y) for q in "ABC" for x, y in zip(a["pi"][q], n["pi"][q]))
    return {
        **sides,
        "ratio": inter.ratio,
        "maxDiscrepancy": {
            "pi": pi_gap,
            "fidelity": abs(a["fidelity"] - n["fidelity"]),
            "successProbability": abs(a["successProbability"] - n["successProbability"]),
        },
        "toleranceUsed": args.tol,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzdistill", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_tol(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance (default %(default)g)")
        return p

    p = with_tol(sub.add_parser("classify", help="classify a state"))
    p.add_argument("input", nargs="?", help="state or canonical JSON (default: stdin)")
    p.set_defaults(func=cmd_classify)

    p = with_tol(sub.add_parser("distill", help="compute the distillation plan"))
    p.add_argument("input", nargs="?")
    p.add_argument("--balance-qubit", choices=["A", "B", "C"], default="C")
    p.set_defaults(func=cmd_distill)

    p = with_tol(sub.add_parser("verify", help="apply a plan to a state and check the GHZ fidelity"))
    p.add_argument("state")
    p.add_argument("plan")
    p.set_defaults(func=cmd_verify)

    p = with_tol(sub.add_parser("random", help="emit Haar-random states, one JSON per line"))
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class-filter", choices=CLASS_TAGS)
    p.add_argument("--max-attempts", type=int, default=10000, help="total draws before giving up")
    p.set_defaults(func=cmd_random)

    p = with_tol(sub.add_parser("crosscheck", help="compare the closed-form and numeric plans"))
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "random":
        if args.count < 1:
            parser.error("--count must be at least 1")
        if not 0 <= args.seed < 2**64:
            parser.error("--seed must be an unsigned 64-bit integer")
    try:
        result = args.func(args)
    except CliError as exc:
        if exc.payload is not None:
            print(dumps(exc.payload))
        print(f"ghzdistill: {exc}", file=sys.stderr)
        return exc.code
    except ContractViolationError as exc:
        print(f"ghzdistill: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if isinstance(result, list):
        for item in result:
            print(dumps(item))
    else:
        print(dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
