"""Command-line front end.

Exit status: 0 success, 1 validation failure (distribution breaks its
constraints, game outside a family), 2 malformed input. A pair that is not
an equilibrium is an answer, not a failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import io as eio
from .families import Case, FamilyParams, generate, membership_test, verify_family
from .game import MixedStrategyPair, mixed_payoff, pure_payoffs
from .montecarlo import simulate
from .nash import NE_TOL, is_nash
from .probability import EXTERNAL_TOL, bell_discriminant, chsh_delta_mu, correlations, validate
from .sweep import SWEEP_HEADER, SweepSpec, parse_terms, run_sweep


class ValidationFailure(Exception):
    pass


def _floats(text: str, size: int, name: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise eio.InputError(f"{name}: expected comma-separated numbers, got {text!r}") from None
    if len(values) != size:
        raise eio.InputError(f"{name}: expected {size} values, got {len(values)}")
    return values


def _emit(args, payload: dict, text: str) -> None:
    doc = eio.dumps(payload)
    if getattr(args, "output", None):
        Path(args.output).write_text(doc + "\n", encoding="utf-8")
    print(doc if getattr(args, "json", False) else text)


def _load_valid(args):
    dist = eio.load_distribution(args.dist, degrees=getattr(args, "degrees", False))
    report = validate(dist, EXTERNAL_TOL)
    if not report.is_valid:
        lines = "\n".join(f"  {c}: residual {r:.3g}" for c, r in report.violations)
        # entries outside [0, 1] are malformed input; broken sums are a validation failure
        if any(c.startswith("range[") for c, _ in report.violations):
            raise eio.InputError(f"probabilities out of range:\n{lines}")
        raise ValidationFailure(f"distribution fails constraints:\n{lines}")
    return dist


def _pair(args) -> MixedStrategyPair:
    try:
        return MixedStrategyPair(args.p, args.q)
    except ValueError as exc:
        raise eio.InputError(str(exc)) from exc


def cmd_validate(args) -> int:
    dist = eio.load_distribution(args.dist, degrees=args.degrees)
    report = validate(dist, args.tol, check_local=args.check_local)
    lines = ["valid" if report.is_valid else "INVALID"]
    lines += [f"  {c}: residual {r:.3g}" for c, r in report.violations]
    if report.is_local_polytope_member is not None:
        lines.append(f"local-hidden-variable model exists: {report.is_local_polytope_member}")
    _emit(args, report.to_dict(), "\n".join(lines))
    return 0 if report.is_valid else 1


def cmd_complete(args) -> int:
    if args.mu is not None:
        doc = {"mu": _floats(args.mu, 8, "--mu")}
    elif args.dist is not None:
        doc = eio.read_json(args.dist)
    else:
        raise eio.InputError("complete needs a distribution file or --mu")
    dist = eio.distribution_from_dict(doc)
    out = eio.dumps(eio.distribution_to_dict(dist))
    if args.output:
        Path(args.output).write_text(out + "\n", encoding="utf-8")
    print(out)
    report = validate(dist, EXTERNAL_TOL)
    if not report.is_valid:
        print("completed distribution leaves [0, 1]: " + ", ".join(c for c, _ in report.violations), file=sys.stderr)
        return 1
    return 0


def cmd_chsh(args) -> int:
    dist = _load_valid(args)
    corr = correlations(dist)
    delta = chsh_delta_mu(dist)
    disc = bell_discriminant(dist)
    verdict = "Bell violated" if disc < 0 else "Bell satisfied"
    payload = {
        "correlations": {"e11": corr.e11, "e12": corr.e12, "e21": corr.e21, "e22": corr.e22},
        "delta": delta,
        "discriminant": disc,
        "bell_violated": disc < 0,
    }
    text = (
        f"<S1S1'> = {corr.e11:.10g}  <S1S2'> = {corr.e12:.10g}  "
        f"<S2S1'> = {corr.e21:.10g}  <S2S2'> = {corr.e22:.10g}\n"
        f"Delta = {delta:.10g}\ndiscriminant 2-|Delta| = {disc:.10g}\n{verdict}"
    )
    _emit(args, payload, text)
    return 0


def cmd_payoffs(args) -> int:
    game = eio.load_game(args.game)
    dist = _load_valid(args)
    table = pure_payoffs(game, dist)
    payload = {"pure": table.to_dict()}
    text = table.format()
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise eio.InputError("mixed payoff needs both --p and --q")
        pa, pb = mixed_payoff(game, dist, _pair(args))
        payload["mixed"] = {"p": args.p, "q": args.q, "alice": pa, "bob": pb}
        text += f"\nmixed (p={args.p:g}, q={args.q:g}): Alice {pa:.10g}, Bob {pb:.10g}"
    _emit(args, payload, text)
    return 0


def cmd_nash(args) -> int:
    game = eio.load_game(args.game)
    dist = _load_valid(args)
    report = is_nash(game, dist, _pair(args), args.ne_tol)
    delta = chsh_delta_mu(dist)
    disc = bell_discriminant(dist)
    payload = report.to_dict() | {"delta": delta, "discriminant": disc}
    kind = "weak " if report.is_strict_boundary else ""
    verdict = f"({args.p:g}, {args.q:g}) is {'a ' + kind + 'Nash equilibrium' if report.is_ne else 'NOT a Nash equilibrium'}"
    text = (
        f"{verdict}\n"
        f"Alice gains: p->0 {report.gain_A_at_p0:.6g}, p->1 {report.gain_A_at_p1:.6g}\n"
        f"Bob gains:   q->0 {report.gain_B_at_q0:.6g}, q->1 {report.gain_B_at_q1:.6g}\n"
        f"Delta = {delta:.10g}, 2-|Delta| = {disc:.10g} ({'Bell violated' if disc < 0 else 'Bell satisfied'})"
    )
    _emit(args, payload, text)
    return 0


def cmd_generate(args) -> int:
    b_rest = _floats(args.b_rest, 8, "--b-rest") if args.b_rest else (1.0,) * 8
    try:
        params = FamilyParams(
            free_a=_floats(args.free_a, 7, "--free-a"),
            b_top=args.b_top,
            b_bottom=args.b_bottom,
            b_rest=b_rest,
            case=Case.parse(args.case),
        )
    except ValueError as exc:
        raise eio.InputError(str(exc)) from exc
    out = eio.dumps(eio.game_to_dict(generate(params)))
    if args.output:
        Path(args.output).write_text(out + "\n", encoding="utf-8")
    print(out)
    return 0


def cmd_verify_family(args) -> int:
    game = eio.load_game(args.game)
    result = verify_family(game, Case.parse(args.case), samples=args.samples, seed=args.seed)
    text = (
        f"case {result.case.value}: {'PASS' if result.passed else 'FAIL'} over {result.samples} samples\n"
        f"max |bracket_A - (2 {'-' if result.case.delta_sign > 0 else '+'} Delta)| = {result.max_residual_A:.3g}\n"
        f"max |bracket_B| = {result.max_residual_B:.3g}"
    )
    _emit(args, result.to_dict(), text)
    return 0 if result.passed else 1


def cmd_membership(args) -> int:
    game = eio.load_game(args.game)
    found = membership_test(game)
    if found is None:
        _emit(args, {"member": False}, "not a member of either family")
        return 1
    case, params = found
    _emit(args, {"member": True, **params.to_dict()}, f"member of case {case.value}\n{eio.dumps(params.to_dict())}")
    return 0


def cmd_sweep(args) -> int:
    game = eio.load_game(args.game)
    baseline = eio.load_config(args.config, degrees=args.degrees)
    lo, hi = (math.radians(args.lo), math.radians(args.hi)) if args.degrees else (args.lo, args.hi)
    try:
        spec = SweepSpec(
            baseline=baseline,
            terms=parse_terms(args.angles),
            lo=lo,
            hi=hi,
            steps=args.steps,
            game=game,
            pair=_pair(args),
            tol=args.ne_tol,
        )
    except ValueError as exc:
        raise eio.InputError(str(exc)) from exc
    text = eio.write_csv(run_sweep(spec), SWEEP_HEADER, args.output)
    if not args.output:
        sys.stdout.write(text)
    return 0


def cmd_simulate(args) -> int:
    game = eio.load_game(args.game)
    dist = _load_valid(args)
    if args.n < 1:
        raise eio.InputError(f"--n must be >= 1, got {args.n}")
    summary, runs = simulate(game, dist, _pair(args), args.n, args.seed, record_runs=True)
    if args.runs_csv:
        rows = zip(
            range(len(runs)),
            ("S1" if d == 0 else "S2" for d in runs.alice_dir),
            ("S1'" if d == 0 else "S2'" for d in runs.bob_dir),
            runs.x.tolist(), runs.y.tolist(), runs.payoff_a.tolist(), runs.payoff_b.tolist(),
        )
        eio.write_csv(rows, ("run", "alice_dir", "bob_dir", "x", "y", "payoff_a", "payoff_b"), args.runs_csv)
    payload = summary.to_dict()
    mean, err = summary.payoff_mean, payload["payoff_stderr"]
    delta = summary.empirical_delta()
    text = (
        f"{summary.n_runs} runs, seed {summary.seed} ({summary.rng})\n"
        f"mean payoff: Alice {mean[0]:.6g} +/- {err[0] if err[0] is not None else float('nan'):.2g}, "
        f"Bob {mean[1]:.6g} +/- {err[1] if err[1] is not None else float('nan'):.2g}\n"
        f"empirical Delta: {'n/a (unvisited blocks)' if delta is None else f'{delta:.6g}'}"
    )
    _emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="eprgames",
        description="Two-player games over EPR probabilities: CHSH, payoffs, Nash checks, Bell-equivalent game families.",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, dist=False, game=False, pair=False, out=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        if game:
            p.add_argument("--game", required=True, help="game JSON {\"a\": [16], \"b\": [16]}")
        if dist:
            p.add_argument("dist", help="distribution JSON ({\"epsilon\": [16]} or {\"mu\": [8]}) or measurement-config JSON; '-' for stdin")
            p.add_argument("--degrees", action="store_true", help="config angles are in degrees")
        if pair:
            p.add_argument("--p", type=float, required=True, help="probability Alice plays S1")
            p.add_argument("--q", type=float, required=True, help="probability Bob plays S1'")
        if out:
            p.add_argument("--json", action="store_true", help="print JSON instead of text")
            p.add_argument("-o", "--output", help="also write the JSON result to this file")
        return p

    p = add("validate", cmd_validate, "check normalization, locality and range constraints", dist=True)
    p.add_argument("--tol", type=float, default=EXTERNAL_TOL)
    p.add_argument("--check-local", action="store_true", help="also test membership of the local (LHV) polytope")

    p = sub.add_parser("complete", help="complete mu (8 values) to all 16 probabilities")
    p.set_defaults(func=cmd_complete)
    p.add_argument("dist", nargs="?", help="JSON file with a 'mu' key")
    p.add_argument("--mu", help="comma-separated eps1,eps4,eps5,eps8,eps9,eps12,eps14,eps15")
    p.add_argument("-o", "--output")

    add("chsh", cmd_chsh, "correlations, CHSH sum Delta and discriminant 2-|Delta|", dist=True)

    p = add("payoffs", cmd_payoffs, "pure payoff table and optional mixed payoff", dist=True, game=True)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)

    p = add("nash", cmd_nash, "Nash equilibrium check for a strategy pair", dist=True, game=True, pair=True)
    p.add_argument("--ne-tol", type=float, default=NE_TOL, help="tolerance on deviation gains")

    p = sub.add_parser("generate", help="emit a game from the Bell-equivalent family")
    p.set_defaults(func=cmd_generate)
    p.add_argument("--case", required=True, help="A (Delta >= 0) or B (Delta < 0)")
    p.add_argument("--free-a", required=True, help="a1,a4,a5,a8,a12,a14,a15")
    p.add_argument("--b-top", type=float, default=1.0, help="b1 = b2 = b5 = b6")
    p.add_argument("--b-bottom", type=float, default=1.0, help="b3 = b4 = b7 = b8")
    p.add_argument("--b-rest", help="b9..b16 (8 values, default all 1)")
    p.add_argument("-o", "--output")

    p = add("verify-family", cmd_verify_family, "check the bracket identities on random valid distributions", game=True)
    p.add_argument("--case", required=True, help="A or B")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    add("membership", cmd_membership, "recover family parameters of a game, if any", game=True)

    p = add("sweep", cmd_sweep, "CSV of Delta, brackets and NE verdict along an angle sweep", game=True, pair=True, out=False)
    p.add_argument("--config", required=True, help="baseline measurement-config JSON")
    p.add_argument("--angles", required=True, help="angles to sweep, e.g. 'B2' or 'A2:2,B1:1,B2:-1' (name:coefficient)")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--degrees", action="store_true", help="config angles, --lo and --hi are in degrees")
    p.add_argument("--ne-tol", type=float, default=NE_TOL)
    p.add_argument("-o", "--output", help="CSV file (default stdout)")

    p = add("simulate", cmd_simulate, "Monte Carlo runs of the game", dist=True, game=True, pair=True)
    p.add_argument("--n", type=int, required=True, help="number of runs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs-csv", help="write per-run records to this CSV")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (eio.InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
