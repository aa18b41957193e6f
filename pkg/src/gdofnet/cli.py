"""Command-line surface.

Every command reads exact rationals (decimal or "p/q" strings), prints one
canonical JSON document on stdout, and reports structured errors on
stderr.  Exit codes: 0 success, 1 failed verification, 2 precondition or
schema violation, 3 capability limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .errors import CapabilityError, GdofError, InfeasiblePowerError, PreconditionError
from .extremal import gain_ratio, regime_bound, search_extremal
from .network import (
    classify_regime,
    network_from_obj,
    require_snr_ordered,
)
from .polyhedra import (
    frac_str,
    linsystem_from_obj,
    linsystem_to_obj,
    max_dim_limit,
    parse_frac,
    fm_eliminate,
    remove_redundant,
    vertices,
)
from .power import power_slack_table, recover_powers
from .regions import (
    GdofTuple,
    homog_check,
    mbc_outer_sum_gdof,
    ptin_region,
    sls_outer_region,
    tin_sum_gdof,
    two_cell_sls_achievable,
)
from .verify import report_bytes, run_criteria


def canonical_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(obj):
    sys.stdout.write(canonical_dumps(obj))


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise PreconditionError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError("%s is not valid JSON: %s" % (path, exc)) from exc


def _load_network(path: str):
    net = network_from_obj(_load_json(path))
    require_snr_ordered(net)
    return net


def _cmd_classify(args) -> int:
    net = _load_network(args.network)
    _emit(classify_regime(net).to_obj())
    return 0


def _region_system(net, which: str):
    if which == "ptin":
        return ptin_region(net), {}
    if which == "sls-outer":
        return sls_outer_region(net), {}
    if which == "two-cell-sls":
        return two_cell_sls_achievable(net), {}
    if which == "homog":
        res = homog_check(net)
        return res.outer, {"achievable_equal": res.equal}
    raise PreconditionError("unknown region %r" % which)


_VERTEX_COMBO_BUDGET = 50_000


def _cmd_region(args) -> int:
    net = _load_network(args.network)
    system, extras = _region_system(net, args.which)
    obj = linsystem_to_obj(system)
    obj.update(extras)
    if len(system.vars) <= max_dim_limit():
        # enumerate on the pruned system (same feasible set, same vertices)
        # and only when the active-set search stays affordable
        reduced = remove_redundant(system)
        combos = math.comb(
            len(reduced.rows) + len(reduced.nonneg), len(reduced.vars)
        )
        if combos <= _VERTEX_COMBO_BUDGET:
            obj["vertices"] = [
                [frac_str(x) for x in point] for point in vertices(reduced)
            ]
    if args.svg:
        if len(system.vars) < 2:
            raise PreconditionError("--svg needs at least two variables")
        from .plots import render_region_figure

        render_region_figure(system, args.svg)
        obj["figure"] = args.svg
    _emit(obj)
    return 0


def _cmd_sumgdof(args) -> int:
    net = _load_network(args.network)
    _emit(
        {
            "tin": frac_str(tin_sum_gdof(net)),
            "mbc_outer": frac_str(mbc_outer_sum_gdof(net)),
        }
    )
    return 0


def _cmd_gain(args) -> int:
    net = _load_network(args.network)
    _emit(gain_ratio(net).to_obj())
    return 0


def _cmd_search(args) -> int:
    result = search_extremal(args.regime, args.K, args.L, args.budget, args.seed)
    csv_path = args.out + ".csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["index", "source", "ratio", "regime_margin", "ratio_float", "margin_float"]
        )
        for k, s in enumerate(result.samples):
            writer.writerow(
                [k, s.source, frac_str(s.ratio), frac_str(s.margin),
                 repr(float(s.ratio)), repr(float(s.margin))]
            )
    figure_path = args.out + ".svg"
    from .plots import render_search_figure

    render_search_figure(
        result.samples, regime_bound(result.best.regime, args.K), figure_path
    )
    obj = result.best.to_obj()
    obj["samples_csv"] = csv_path
    obj["figure"] = figure_path
    _emit(obj)
    return 0


def _parse_rates(net, text: str) -> GdofTuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != net.K * net.L:
        raise PreconditionError(
            "--d needs %d comma-separated values (cell-major: all users of "
            "cell 1 in SNR order, then cell 2, ...)" % (net.K * net.L)
        )
    return GdofTuple(net.K, net.L, tuple(parse_frac(p) for p in parts))


def _cmd_power(args) -> int:
    net = _load_network(args.network)
    d = _parse_rates(net, args.d)
    a = parse_frac(args.a)
    powers = recover_powers(net, d, a)
    obj = powers.to_obj()
    obj["slack"] = [
        {"constraint": name, "slack": frac_str(s)}
        for name, s in power_slack_table(net, d, powers, a)
    ]
    _emit(obj)
    return 0


def _cmd_verify(args) -> int:
    scale = 0.02 if args.quick else 1.0
    report = run_criteria(args.seed, scale=scale)
    sys.stdout.write(report_bytes(report).decode())
    return 0 if report["all_passed"] else 1


def _cmd_fm(args) -> int:
    system = linsystem_from_obj(_load_json(args.system))
    _emit(linsystem_to_obj(fm_eliminate(system, args.var)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gdofnet",
        description="Exact GDoF-region computations for K-cell networks "
        "under coarse transmitter CSI.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime membership of a network")
    p.add_argument("network", help="network JSON file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("region", help="emit a region as a linear system")
    p.add_argument("network")
    p.add_argument(
        "--which",
        required=True,
        choices=["ptin", "sls-outer", "two-cell-sls", "homog"],
    )
    p.add_argument("--svg", metavar="PATH", help="render a 2-D slice figure")
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("sumgdof", help="TIN and cooperative-outer sum rates")
    p.add_argument("network")
    p.set_defaults(func=_cmd_sumgdof)

    p = sub.add_parser("gain", help="cooperation-over-TIN gain report")
    p.add_argument("network")
    p.set_defaults(func=_cmd_gain)

    p = sub.add_parser("search", help="search a regime for extremal gains")
    p.add_argument("--regime", required=True, choices=["TIN", "CTIN", "SLS"])
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--L", type=int, default=1)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", default="0")
    p.add_argument(
        "--out",
        default="search",
        help="prefix for the sample CSV and figure written next to the report",
    )
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("power", help="synthesize power exponents for rates")
    p.add_argument("network")
    p.add_argument("--d", required=True, help="comma-separated rates, cell-major")
    p.add_argument("--a", default="0", help="shared attenuation level")
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--seed", default="0")
    p.add_argument("--quick", action="store_true", help="reduced trial counts")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fm", help="eliminate a variable from a system file")
    p.add_argument("system", help="LinSystem JSON file")
    p.add_argument("--var", required=True)
    p.set_defaults(func=_cmd_fm)

    return parser


def _error_obj(kind: str, exc: Exception) -> dict:
    obj = {"error": kind, "message": str(exc)}
    if isinstance(exc, InfeasiblePowerError):
        obj["witness_circuit"] = list(exc.circuit)
    return obj


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        sys.stderr.write(canonical_dumps(_error_obj("capability", exc)))
        return 3
    except PreconditionError as exc:
        sys.stderr.write(canonical_dumps(_error_obj("precondition", exc)))
        return 2
    except GdofError as exc:
        sys.stderr.write(canonical_dumps(_error_obj("error", exc)))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
