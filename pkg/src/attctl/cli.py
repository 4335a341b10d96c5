"""Command line front end.

    attctl simulate   --config scenario.json --out run.csv
    attctl compare    --config-a a.json --config-b b.json --out outdir/
    attctl check-gains --config scenario.json

Exit codes: 0 success, 2 configuration error, 3 implicit-solver divergence.
ATTCTL_LOG={info|debug} selects diagnostics verbosity.
"""

import argparse
import json
import logging
import os
import sys

import numpy as np

from .errors import ConfigInvalid, ConfigMismatch, NewtonDivergence
from .simulate import check_gains, compare, run_scenario, scenario_from_json

log = logging.getLogger("attctl")


def _setup_logging():
    level = os.environ.get("ATTCTL_LOG", "info").lower()
    logging.basicConfig(
        level=logging.DEBUG if level == "debug" else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _matrix_lines(name, m):
    a, b, c, d = (float(m[i, j]) for i in (0, 1) for j in (0, 1))
    return [f"  {name} = [[{a!r}, {b!r}], [{c!r}, {d!r}]]"]


def _print_gain_check(check):
    cert, roa = check.certification, check.roa
    lines = [f"mode: {cert.mode}"]
    lines += [f"  c2_max  = {cert.c2_max!r}"]
    lines += [f"  c2_used = {cert.c2_used!r} (grid-optimal)"]
    lines += _matrix_lines("W11", cert.w11)
    lines += _matrix_lines("W12", cert.w12)
    lines += _matrix_lines("W2 ", cert.w2)
    lines += [f"  positive_definite = {cert.positive_definite}"]
    lines += [f"  decay_rate = {cert.decay_rate!r} 1/s"]
    if cert.alpha is not None:
        lines += [f"  alpha = {cert.alpha!r}"]
    lines += [
        "region of attraction:",
        f"  psi0 = {roa.psi0!r} (psi0 < 2: {roa.psi_ok})",
        f"  |e_Omega(0)| = {roa.e_omega0_norm!r} rad/s",
        f"  bound        = {roa.e_omega_bound!r} rad/s",
        f"  inside = {roa.inside}",
    ]
    print("\n".join(lines))


def _cmd_simulate(args):
    config = scenario_from_json(args.config)
    record = run_scenario(config)
    record.to_csv(args.out)
    log.info(
        "wrote %s (%d rows, final psi=%.3e)",
        args.out, len(record.t), record.psi[-1],
    )
    return 0


def _cmd_compare(args):
    config_a = scenario_from_json(args.config_a)
    config_b = scenario_from_json(args.config_b)
    report = compare(config_a, config_b)
    os.makedirs(args.out, exist_ok=True)
    report.record_a.to_csv(os.path.join(args.out, "run_a.csv"))
    report.record_b.to_csv(os.path.join(args.out, "run_b.csv"))
    with open(os.path.join(args.out, "report.json"), "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_check_gains(args):
    config = scenario_from_json(args.config)
    _print_gain_check(check_gains(config))
    return 0


def main(argv=None):
    _setup_logging()
    np.seterr(all="raise", under="ignore")

    parser = argparse.ArgumentParser(
        prog="attctl",
        description="Rigid-body attitude simulation and geometric control "
        "on SO(3)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one closed-loop scenario")
    p_sim.add_argument("--config", required=True, help="scenario JSON file")
    p_sim.add_argument("--out", required=True, help="output CSV path")
    p_sim.set_defaults(func=_cmd_simulate)

    p_cmp = sub.add_parser(
        "compare", help="run two scenarios differing only in controller"
    )
    p_cmp.add_argument("--config-a", required=True)
    p_cmp.add_argument("--config-b", required=True)
    p_cmp.add_argument("--out", required=True, help="output directory")
    p_cmp.set_defaults(func=_cmd_compare)

    p_chk = sub.add_parser(
        "check-gains", help="print gain certification and ROA report"
    )
    p_chk.add_argument("--config", required=True)
    p_chk.set_defaults(func=_cmd_check_gains)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigInvalid, ConfigMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NewtonDivergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
