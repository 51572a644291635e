"""Command-line front end: ``gadq {channel,sweep,queue,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .channel import GadcParams, ebt_threshold, is_entanglement_breaking
from .holevo import DEFAULT_TOL, NoConvergenceError, holevo_fixed_point, holevo_gadc
from .induced import binary_channel_capacity, bsc_capacity, m1_channel, m2_channel, m2_flip_probability
from .queue_capacity import (
    DecoherenceModel,
    Evaluator,
    mm1_capacity_closed_form,
    optimize_lambda,
    queue_capacity_mc,
)
from .queueing import DEFAULT_SEED, DistributionSpec, Kind, QueueConfig
from .verification import SUITES, run_suites

DEFAULT_SAMPLES = 1_000_000
DEFAULT_BURN_IN = 10_000


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def parse_values(text: str):
    """``a``, ``a,b,c`` or an inclusive range ``start:stop:step``."""
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise UsageError(f"range step must be positive in {text!r}")
            if stop < start:
                return []
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse numeric value(s) {text!r}") from None


def parse_law(text: str) -> tuple:
    """``kind`` or ``kind:shape``, e.g. ``gamma:4``."""
    kind, _, shape = text.partition(":")
    try:
        return Kind(kind), (float(shape) if shape else None)
    except ValueError:
        raise UsageError(f"unknown distribution {text!r}") from None


def _single(values, name):
    if len(values) != 1:
        raise UsageError(f"--{name} needs exactly one value")
    return values[0]


def _params(p, n) -> GadcParams:
    try:
        return GadcParams(p, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def channel_report(p: float, n: float, tol: float = DEFAULT_TOL, z=None) -> dict:
    ch = _params(p, n)
    hol = holevo_gadc(ch, tol)
    try:
        chi_fp = holevo_fixed_point(ch).chi
    except (NoConvergenceError, ValueError):
        chi_fp = None
    c_m1 = binary_channel_capacity(m1_channel(ch), tol).capacity
    c_m2 = bsc_capacity(m2_flip_probability(ch.p))
    try:
        p_star = ebt_threshold(ch.n)
    except ValueError:
        p_star = None
    report = {
        "p": ch.p,
        "n": ch.n,
        "chi": hol.chi,
        "z_star": hol.z_star,
        "chi_fixed_point": chi_fp,
        "c_m1": c_m1,
        "c_m2": c_m2,
        "delta": hol.chi - c_m2,
        "ebt": is_entanglement_breaking(ch),
        "p_star": p_star,
    }
    if z is not None:
        if abs(z) > 1:
            raise UsageError("--z must satisfy |z| <= 1")
        report["z"] = z
        report["c_m2_z"] = binary_channel_capacity(m2_channel(ch, z), tol).capacity
    return report


def _emit(text: str, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows, n_inputs=0) -> str:
    """CSV with ``\\n`` line ends; the first ``n_inputs`` columns are echoed
    parameters and use the shortest round-trip form."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if i < n_inputs else fmt(v) for i, v in enumerate(row)])
    return buf.getvalue()


def cmd_channel(args) -> int:
    p = _single(parse_values(args.p or ""), "p")
    n = _single(parse_values(args.n or ""), "n")
    z = _single(parse_values(args.z), "z") if args.z is not None else None
    report = channel_report(p, n, args.tol, z)
    if args.format == "csv":
        keys = list(report)
        _emit(_csv_text(keys, [[("" if report[k] is None else report[k]) for k in keys]]), args.out)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


SWEEP_COLUMNS = ["p", "n", "chi", "c_m1", "c_m2", "delta", "ebt"]


def cmd_sweep(args) -> int:
    ps = parse_values(args.p or "")
    ns = parse_values(args.n or "")
    if not ps or not ns:
        raise UsageError("empty sweep range")
    rows = []
    for n in ns:
        for p in ps:
            rep = channel_report(p, n, args.tol)
            rows.append([rep[k] for k in SWEEP_COLUMNS])
    _emit(_csv_text(SWEEP_COLUMNS, rows, n_inputs=2), args.out)
    return 0


def _workers(count: int) -> int:
    cap = os.environ.get("GADQ_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(limit, count))


def _mc_point(job):
    template, lam, kappa, samples, burn_in, seed = job
    est = queue_capacity_mc(template.with_arrival_rate(lam), DecoherenceModel(kappa), samples, burn_in, seed)
    return est.value, est.std_err, est.method.value


def _template(args, mu) -> QueueConfig:
    a_kind, a_shape = parse_law(args.arrival)
    s_kind, s_shape = parse_law(args.service)
    try:
        # placeholder arrival mean; each evaluation point resets it
        return QueueConfig(DistributionSpec(a_kind, 2.0 / mu, a_shape), DistributionSpec(s_kind, 1.0 / mu, s_shape))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_queue(args) -> int:
    mu = _single(parse_values(args.mu), "mu")
    kappas = parse_values(args.kappa)
    if not mu > 0:
        raise UsageError("--mu must be positive")
    if not kappas or any(k <= 0 for k in kappas):
        raise UsageError("--kappa values must be positive")
    closed_form = args.arrival == "exponential" and args.service == "exponential" and not args.mc
    if not closed_form and not args.mc:
        raise UsageError("non-exponential queues need --mc")
    template = _template(args, mu)

    if args.optimize:
        evaluator = Evaluator.MONTE_CARLO if args.mc else Evaluator.MM1_CLOSED_FORM
        results = [
            optimize_lambda(mu, DecoherenceModel(k), evaluator, args.tol, template, args.samples, args.burn_in, args.seed).to_dict()
            for k in kappas
        ]
        if args.format == "csv":
            keys = list(results[0])
            _emit(_csv_text(keys, [[r[k] for k in keys] for r in results]), args.out)
        else:
            payload = results[0] if len(results) == 1 else results
            _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return 0

    lams = parse_values(args.lam)
    if not lams:
        raise UsageError("empty --lambda grid")
    if any(not 0 < lam < mu for lam in lams):
        raise UsageError("every lambda must satisfy 0 < lambda < mu")
    points = [(k, lam) for k in kappas for lam in lams]
    if args.mc:
        seeds = np.random.SeedSequence(args.seed).generate_state(len(points), dtype=np.uint64)
        jobs = [(template, lam, k, args.samples, args.burn_in, int(s)) for (k, lam), s in zip(points, seeds)]
        workers = _workers(len(jobs))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(_mc_point, jobs))
        else:
            values = [_mc_point(j) for j in jobs]
    else:
        values = []
        for k, lam in points:
            est = mm1_capacity_closed_form(lam, mu, DecoherenceModel(k), min(args.tol, 1e-10))
            values.append((est.value, est.std_err, est.method.value))
    header = ["lambda", "kappa", "capacity_bits_per_sec", "std_err", "method"]
    rows = [[lam, k, v, e, m] for (k, lam), (v, e, m) in zip(points, values)]
    if args.format == "json":
        _emit(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n", args.out)
    else:
        _emit(_csv_text(header, rows, n_inputs=2), args.out)
    return 0


def cmd_verify(args) -> int:
    names = list(args.suites or [])
    if args.suite:
        names += [s for s in args.suite.split(",") if s]
    if not names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    report = run_suites(names, samples=args.samples, seed=args.seed)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0 if report["passed"] else 1


def _seed(text):
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--burn-in", type=int, default=DEFAULT_BURN_IN)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="gadq", description="GAD channel and queue-channel capacities")
    sub = parser.add_subparsers(dest="command", required=True)

    ch = sub.add_parser("channel", parents=[common], help="capacities at one (p, n)")
    ch.add_argument("--p", required=True)
    ch.add_argument("--n", required=True)
    ch.add_argument("--z", default=None, help="also report C(M2(z))")
    ch.add_argument("--format", choices=["csv", "json"], default="json")
    ch.set_defaults(func=cmd_channel)

    sw = sub.add_parser("sweep", parents=[common], help="capacities over a (p, n) grid as CSV")
    sw.add_argument("--p", required=True, help="value, list a,b,c or range start:stop:step")
    sw.add_argument("--n", required=True)
    sw.add_argument("--format", choices=["csv"], default="csv")
    sw.set_defaults(func=cmd_sweep)

    qu = sub.add_parser("queue", parents=[common], help="queue-channel capacity versus lambda")
    qu.add_argument("--mu", default="1")
    qu.add_argument("--kappa", default="1")
    qu.add_argument("--lambda", dest="lam", default="0.01:0.99:0.01")
    qu.add_argument("--mc", action="store_true", help="Monte Carlo instead of the M/M/1 closed form")
    qu.add_argument("--optimize", action="store_true", help="report the optimal lambda as JSON")
    qu.add_argument("--arrival", default="exponential", help="arrival law, e.g. deterministic or gamma:4")
    qu.add_argument("--service", default="exponential", help="service law, e.g. uniform:0.5")
    qu.add_argument("--format", choices=["csv", "json"], default=None)
    qu.set_defaults(func=cmd_queue)

    ve = sub.add_parser("verify", parents=[common], help="run invariant suites")
    ve.add_argument("suites", nargs="*", help=f"any of: {', '.join(SUITES)}")
    ve.add_argument("--suite", default=None, help="comma-separated suite names")
    ve.add_argument("--format", choices=["json"], default="json")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples <= 0 or args.burn_in < 0 or not args.tol > 0:
        print("gadq: error: --samples and --tol must be positive, --burn-in non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gadq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
