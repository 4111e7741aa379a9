"""Command-line front end.

Subcommands: ``check`` (run all criteria on a state), ``sweep`` (family phase
diagram to CSV), ``witness`` (build/evaluate a witness), ``loo-validate``
(observable-set self-checks). Exit codes for check: 0 = no detection,
2 = entangled, 1 = error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import criteria, loo, states, sweep, witness as witness_mod
from .linalg import DimPair, max_abs
from .states import BipartiteState

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ENTANGLED = 2


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_spec(spec: str) -> tuple[str, list, dict]:
    """Parse the mini-grammar ``name:key=val,key=val`` (bare tokens allowed)."""
    name, _, rest = spec.partition(":")
    args: list = []
    kwargs: dict = {}
    if rest:
        for item in rest.split(","):
            if "=" in item:
                key, _, val = item.partition("=")
                kwargs[key.strip()] = _parse_value(val.strip())
            else:
                args.append(_parse_value(item.strip()))
    return name.strip(), args, kwargs


def builtin_state(spec: str) -> BipartiteState:
    name, _, kw = parse_spec(spec)
    if name == "horodecki":
        return states.horodecki_rho(float(kw["a"]))
    if name == "family":
        params = states.family_special(int(kw.get("d", 3)), float(kw["a1"]), float(kw["a2"]))
        return states.family_rho(params)
    if name == "werner":
        return states.werner2(float(kw["p"]))
    if name == "phi":
        return states.max_entangled(int(kw.get("d", 3)))
    if name == "product":
        dims = DimPair.square(int(kw.get("d", 3)))
        return states.random_product_state(dims, seed=int(kw.get("seed", 0)))
    if name == "separable":
        dims = DimPair.square(int(kw.get("d", 3)))
        return states.random_separable_state(dims, k=int(kw.get("k", 4)), seed=int(kw.get("seed", 0)))
    raise ValueError(f"unknown builtin state {name!r}")


def _state_from_args(args: argparse.Namespace) -> BipartiteState:
    if args.builtin and args.file:
        raise ValueError("--builtin and --file are mutually exclusive")
    if args.builtin:
        return builtin_state(args.builtin)
    if args.file:
        return states.load_state(args.file)
    raise ValueError("one of --builtin or --file is required")


def _load_transform(path: str) -> loo.OrthTransform:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        matrix = np.asarray(payload["matrix"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed transform file {path}: {exc}") from exc
    return loo.make_transform(matrix)


def _print_report(report: criteria.FullReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.to_dict()))
        return
    print(f"state: {report.state_label}")
    width = max(len(r.criterion) + len(str(r.params.get("transform", ""))) for r in report.reports) + 4
    for r in report.reports:
        tag = r.criterion
        if "transform" in r.params:
            tag += f"[{r.params['transform']}]"
        elif "witness" in r.params:
            tag += f"[{r.params['witness']}]"
        elif "l" in r.params:
            tag += f"[l={r.params['l']}]"
        print(f"  {tag:<{width}} {r.verdict:<13} scalar={r.scalar:+.6e}")
    print("overall: " + ("entangled" if report.entangled else "no entanglement detected"))


def cmd_check(args: argparse.Namespace) -> int:
    state = _state_from_args(args)
    witnesses: tuple = ()
    if args.builtin:
        name, _, kw = parse_spec(args.builtin)
        if name == "horodecki":
            w, _ = witness_mod.horodecki_ew(float(kw["a"]))
            witnesses = (w,)
    config = criteria.ReportConfig(
        tol=args.tol,
        tol_search=args.tol_search,
        budget=args.budget,
        seed=args.seed,
        include_search=not args.no_search,
        witnesses=witnesses,
    )
    report = criteria.full_report(state, config)
    _print_report(report, args.json)
    return EXIT_ENTANGLED if report.entangled else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    result = sweep.run_sweep(
        d=args.d, resolution=args.grid, epsilon=args.epsilon, tol=args.tol, threads=args.threads
    )
    sweep.write_csv(result, args.out)
    for line in sweep.summary_lines(result):
        print(line)
    print(f"wrote {args.out}")
    return EXIT_OK


def _build_witness(args: argparse.Namespace) -> witness_mod.Witness:
    name, pos, kw = parse_spec(args.spec)
    if name == "horodecki":
        w, _ = witness_mod.horodecki_ew(float(kw["a"]))
        return w
    if name == "perm":
        kind = pos[0] if pos else kw.get("kind", "cycle")
        if kind != "cycle":
            raise ValueError(f"unknown permutation witness kind {kind!r}")
        d = int(kw["d"])
        sigma = loo.diag_cycle(d, int(kw["l"]))
        return witness_mod.perm_ew(sigma, d)
    if name == "generic":
        if not args.transform:
            raise ValueError("generic witness requires --transform FILE")
        transform = _load_transform(args.transform)
        d = int(round(np.sqrt(transform.dim)))
        if d * d != transform.dim:
            raise ValueError(f"transform dimension {transform.dim} is not a square")
        return witness_mod.ew_from_transform(transform, d)
    raise ValueError(f"unknown witness spec {name!r}")


def cmd_witness(args: argparse.Namespace) -> int:
    w = _build_witness(args)
    payload = {
        "provenance": w.provenance,
        "dims": [w.dims.d_a, w.dims.d_b],
        "min_eig": w.min_eig,
        "confirmed_witness": not w.candidate_only,
    }
    if w.phi_value is not None:
        payload["phi_expectation"] = w.phi_value
    if args.state:
        if args.state.startswith("builtin:"):
            state = builtin_state(args.state[len("builtin:"):])
        else:
            state = states.load_state(args.state)
        payload["state"] = state.label
        payload["expectation"] = witness_mod.expectation(w, state)
    if args.out:
        witness_mod.save_witness(w, args.out)
        payload["written"] = str(args.out)
    if args.json:
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_loo_validate(args: argparse.Namespace) -> int:
    d = args.d
    if not 2 <= d <= 16:
        raise ValueError(f"local dimension must be in 2..16, got {d}")
    basis = loo.standard_basis(d)
    deviations = loo.validate_basis(basis)
    v = states.phi(d)
    phi_dev = max_abs(
        loo.pair_sum(basis.mats, loo.transpose_basis(basis).mats) - np.outer(v, v.conj())
    )
    swap = np.zeros((d * d, d * d), dtype=complex)
    for m in range(d):
        for n in range(d):
            swap[m * d + n, n * d + m] = 1.0
    swap_dev = max_abs(loo.pair_sum(basis.mats, basis.mats) - swap)
    print(f"standard observable set, d={d} ({d * d} observables)")
    print(f"  gram deviation:          {deviations['gram']:.3e}")
    print(f"  hermiticity deviation:   {deviations['hermiticity']:.3e}")
    print(f"  completeness deviation:  {deviations['completeness']:.3e}")
    print(f"  pair-sum vs |Phi><Phi|:  {phi_dev:.3e}")
    print(f"  pair-sum vs SWAP:        {swap_dev:.3e}")
    if d <= 3:
        for idx, mat in enumerate(basis.mats):
            print(f"  observable {idx}:")
            for row in mat:
                print("    " + "  ".join(f"{z.real:+.8f}{z.imag:+.8f}j" for z in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loowit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run all separability criteria on a state")
    check.add_argument("--builtin", help="builtin state spec, e.g. horodecki:a=0.5")
    check.add_argument("--file", help="state JSON file")
    check.add_argument("--json", action="store_true", help="emit one JSON object")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--budget", type=int, default=200, help="correlation search restarts")
    check.add_argument("--tol", type=float, default=criteria.ALGEBRAIC_TOL)
    check.add_argument("--tol-search", type=float, default=criteria.SEARCH_TOL)
    check.add_argument("--no-search", action="store_true", help="skip the randomized search")
    check.set_defaults(func=cmd_check)

    sweep_cmd = sub.add_parser("sweep", help="family phase-diagram sweep to CSV")
    sweep_cmd.add_argument("--d", type=int, default=3)
    sweep_cmd.add_argument("--grid", type=int, default=100, help="grid resolution per axis")
    sweep_cmd.add_argument("--epsilon", type=float, default=1e-3, help="boundary band width")
    sweep_cmd.add_argument("--tol", type=float, default=criteria.ALGEBRAIC_TOL)
    sweep_cmd.add_argument("--threads", type=int, default=None, help=f"overrides {sweep.THREADS_ENV}")
    sweep_cmd.add_argument("--out", required=True, help="output CSV path")
    sweep_cmd.set_defaults(func=cmd_sweep)

    wit = sub.add_parser("witness", help="build a witness and optionally evaluate it")
    wit.add_argument("spec", help="horodecki:a=A | perm:cycle,d=D,l=L | generic")
    wit.add_argument("--transform", help="JSON file {'matrix': [[...]]} for generic specs")
    wit.add_argument("--state", help="builtin:SPEC or a state JSON file")
    wit.add_argument("--out", help="write the witness matrix JSON here")
    wit.add_argument("--json", action="store_true")
    wit.set_defaults(func=cmd_witness)

    validate = sub.add_parser("loo-validate", help="observable-set self checks")
    validate.add_argument("--d", type=int, required=True)
    validate.set_defaults(func=cmd_loo_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
