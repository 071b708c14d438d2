"""Command-line interface: matrix exports, duality certificates,
coarse-graining, population models, simulation and a verification suite.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
3 size cap exceeded.  The MOEBIUS_DUAL_MAX_STATES environment variable
overrides the default cap on constructed state-space sizes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cannings import (
    backward_kernel,
    coarsen_multiallelic,
    coarsen_to_cannings,
    exact_coarse_duality_value,
    forward_kernel,
    hypergeometric_inverse,
    hypergeometric_matrix,
    monte_carlo_duality,
    moran_law,
    multiallelic_kernels,
    verify_transpose_zeta_duality,
    wright_fisher_law,
)
from .coarse_graining import (
    coarse_partition_matrices,
    coarse_set_matrices,
    coarse_set_matrices_enumerated,
)
from .duality import (
    DualityVariant,
    Kernel,
    positivity_certificate,
    strong_condition_check,
)
from .errors import MoebiusDualError, SizeOverflow
from .lattices import bell_number, partition_lattice, subset_lattice
from .rational import RationalMatrix, format_fraction

DEFAULT_MAX_STATES = 4096

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_CONFIG = 2
EXIT_SIZE = 3


def _max_states() -> int:
    raw = os.environ.get("MOEBIUS_DUAL_MAX_STATES")
    if raw is None:
        return DEFAULT_MAX_STATES
    try:
        return int(raw)
    except ValueError as exc:
        raise MoebiusDualError(f"MOEBIUS_DUAL_MAX_STATES={raw!r} is not an integer") from exc


def _check_cap(states: int):
    cap = _max_states()
    if states > cap:
        raise SizeOverflow(f"{states} states exceed the cap {cap}")


def _emit(args, payload, *, matrix=None, labels=None):
    """Write the payload in the requested format to --output or stdout."""
    if args.format == "json":
        text = json.dumps(payload, indent=2, default=str) + "\n"
    elif args.format == "csv":
        if matrix is None:
            raise MoebiusDualError("csv output is only available for matrix commands")
        text = matrix.to_csv(row_labels=labels, col_labels=labels)
    else:  # pretty
        text = _pretty(payload)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pretty(payload, indent=0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines) + ("\n" if indent == 0 else "")
    if isinstance(payload, list):
        return "\n".join(
            _pretty(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}"
            for v in payload
        )
    return f"{pad}{payload}"


def _matrix_doc(m: RationalMatrix, labels=None) -> dict:
    doc = {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_fraction(v) for v in row] for row in m],
    }
    if labels is not None:
        doc["labels"] = [str(l) for l in labels]
    return doc


def _load_kernel(path: str) -> Kernel:
    with open(path) as fh:
        return Kernel.of(RationalMatrix.from_json(fh.read()))


def _variant(name: str) -> DualityVariant:
    return DualityVariant(name)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_lattice(args) -> int:
    if args.family == "subsets":
        _check_cap(1 << args.n)
        lat = subset_lattice(args.n)
        pair = lat.pair
        labels = [lat.label(m) for m in pair.poset.elements]
    else:
        _check_cap(bell_number(args.n))
        pair = partition_lattice(args.n).pair
        labels = [str(p) for p in pair.poset.elements]
    chosen = {"zeta": pair.zeta, "moebius": pair.moebius}[args.emit]
    _emit(args, _matrix_doc(chosen, labels), matrix=chosen, labels=labels)
    return EXIT_OK


def cmd_duality(args) -> int:
    if args.poset != "subsets":
        raise MoebiusDualError("only --poset subsets is supported for duality runs")
    _check_cap(1 << args.n)
    lat = subset_lattice(args.n)
    p = _load_kernel(args.kernel)
    if p.matrix.shape != (len(lat.poset), len(lat.poset)):
        raise MoebiusDualError(
            f"kernel is {p.matrix.rows}x{p.matrix.cols}, lattice has {len(lat.poset)} states"
        )
    variant = _variant(args.variant)
    cert = positivity_certificate(p, lat.pair, variant)
    strong = strong_condition_check(p, lat.pair, variant)
    report = {
        "poset": f"subsets(N={args.n})",
        "kernel_kind": p.kind,
        **cert.to_dict(),
        **strong.to_dict(),
        "Q": _matrix_doc(cert.q),
    }
    _emit(args, report, matrix=cert.q)
    return EXIT_OK


def cmd_coarsen(args) -> int:
    if args.family == "sets":
        cm = coarse_set_matrices(args.n)
        labels = [str(j) for j in range(args.n + 1)]
        report = {
            "relation": "cardinality",
            "classes": labels,
            "zeta": _matrix_doc(cm.zeta),
            "moebius": _matrix_doc(cm.moebius),
            "zeta_transpose": _matrix_doc(cm.zeta_transpose),
            "moebius_transpose": _matrix_doc(cm.moebius_transpose),
        }
        if args.n <= 12:
            enum = coarse_set_matrices_enumerated(args.n)
            report["enumeration_agrees"] = (
                enum.zeta == cm.zeta
                and enum.moebius == cm.moebius
                and enum.zeta_transpose == cm.zeta_transpose
                and enum.moebius_transpose == cm.moebius_transpose
            )
            if not report["enumeration_agrees"]:
                _emit(args, report, matrix=cm.zeta, labels=labels)
                return EXIT_VERIFICATION
        _emit(args, report, matrix=cm.zeta, labels=labels)
    else:
        skels, z, mo = coarse_partition_matrices(args.n)
        labels = [str(s) for s in skels]
        report = {
            "relation": "skeleton",
            "classes": labels,
            "zeta": _matrix_doc(z, labels),
            "moebius": _matrix_doc(mo, labels),
        }
        _emit(args, report, matrix=z, labels=labels)
    return EXIT_OK


def _build_law(model: str, n: int):
    return wright_fisher_law(n) if model == "wf" else moran_law(n)


def cmd_cannings(args) -> int:
    law = _build_law(args.model, args.N)
    _check_cap((args.T + 1) ** args.N if args.T > 1 else 1 << args.N)
    report = {"model": args.model, "N": args.N, "T": args.T}
    if args.T == 1:
        fk = forward_kernel(law)
        bk = backward_kernel(law)
        report["forward_stochastic"] = fk.kernel.is_stochastic
        report["backward_stochastic"] = bk.kernel.is_stochastic
        report["transpose_zeta_duality"] = verify_transpose_zeta_duality(fk, bk)
        cc = coarsen_to_cannings(fk, bk)
        report["coarse_forward"] = _matrix_doc(cc.p_coarse.matrix)
        report["hypergeometric"] = _matrix_doc(cc.h_coarse_hat)
        report["coarse_backward"] = _matrix_doc(cc.q_coarse_hh.matrix)
        report["coarse_duality_verified"] = True
        ok = report["transpose_zeta_duality"]
    else:
        ma = multiallelic_kernels(law, args.T, cap=_max_states())
        mc = coarsen_multiallelic(ma)
        report["forward_stochastic"] = ma.p_ext.is_stochastic
        report["backward_substochastic"] = ma.q.is_substochastic
        report["max_defect"] = format_fraction(max(ma.defect))
        report["classes"] = [str(c) for c in mc.classes]
        report["coarse_forward"] = _matrix_doc(mc.p_coarse.matrix)
        report["coarse_backward"] = _matrix_doc(mc.q_coarse_hh.matrix)
        report["coarse_duality_verified"] = True
        ok = True
    _emit(args, report)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_simulate(args) -> int:
    law = _build_law(args.model, args.N)
    a = (1 << args.start) - 1
    b = (1 << args.dual_start) - 1
    res = monte_carlo_duality(law, a, b, args.steps, args.reps, args.seed)
    exact = exact_coarse_duality_value(law, args.start, args.dual_start, args.steps)
    report = {
        "model": args.model,
        "N": args.N,
        "steps": args.steps,
        "reps": args.reps,
        "seed": args.seed,
        "start": args.start,
        "dual_start": args.dual_start,
        "forward_mean": res.forward_mean,
        "forward_stderr": res.forward_stderr,
        "backward_mean": res.backward_mean,
        "backward_stderr": res.backward_stderr,
        "exact": format_fraction(exact),
    }
    _emit(args, report)
    return EXIT_OK


def _verification_suite(max_n: int):
    """One (name, callable) pair per identity; callables raise on failure."""
    from .lattices import (
        enumerate_partitions,
        partition_moebius_closed_form,
    )

    checks = []

    def add(name):
        def deco(fn):
            checks.append((name, fn))
            return fn
        return deco

    @add(f"subset zeta inverse identities, N <= {max_n}")
    def _():
        for n in range(max_n + 1):
            pair = subset_lattice(n).pair
            assert pair.zeta @ pair.moebius == RationalMatrix.identity(1 << n)

    @add(f"subset Moebius closed form, N <= {max_n}")
    def _():
        for n in range(max_n + 1):
            lat = subset_lattice(n)
            for (a, b) in lat.poset.comparable_pairs():
                ea, eb = lat.poset.elements[a], lat.poset.elements[b]
                assert lat.pair.moebius[a, b] == lat.mu_closed_form(ea, eb)

    @add(f"partition Moebius closed form, n <= {min(max_n, 5)}")
    def _():
        for n in range(1, min(max_n, 5) + 1):
            pl = partition_lattice(n)
            for (a, b) in pl.poset.comparable_pairs():
                pa, pb = pl.poset.elements[a], pl.poset.elements[b]
                assert pl.pair.moebius[a, b] == partition_moebius_closed_form(pa, pb)

    @add("coarse set matrices: closed forms equal enumeration, N <= 8")
    def _():
        for n in range(min(max_n * 2, 8) + 1):
            cm, en = coarse_set_matrices(n), coarse_set_matrices_enumerated(n)
            assert cm.zeta == en.zeta and cm.moebius == en.moebius
            assert cm.zeta_transpose == en.zeta_transpose
            assert cm.moebius_transpose == en.moebius_transpose

    @add("coarse partition matrices invert each other, n <= 5")
    def _():
        for n in range(1, min(max_n, 5) + 1):
            skels, z, mo = coarse_partition_matrices(n)
            assert z @ mo == RationalMatrix.identity(len(skels))

    @add(f"transpose-zeta duality for WF and Moran, N <= {min(max_n, 4)}")
    def _():
        for n in range(2, min(max_n, 4) + 1):
            for law in (wright_fisher_law(n), moran_law(n)):
                fk, bk = forward_kernel(law), backward_kernel(law)
                assert verify_transpose_zeta_duality(fk, bk)

    @add(f"coarse Cannings pipeline and hypergeometric forms, N <= {min(max_n, 4)}")
    def _():
        for n in range(2, min(max_n, 4) + 1):
            for law in (wright_fisher_law(n), moran_law(n)):
                cc = coarsen_to_cannings(forward_kernel(law), backward_kernel(law))
                assert cc.h_coarse_hat == hypergeometric_matrix(n)
                assert cc.h_coarse_hat.inverse() == hypergeometric_inverse(n)
                assert cc.p_coarse.is_stochastic and cc.q_coarse_hh.is_stochastic

    @add("multi-allelic duality and substochastic coarse dual, WF N=2 T=2")
    def _():
        ma = multiallelic_kernels(wright_fisher_law(2), 2)
        mc = coarsen_multiallelic(ma)
        assert mc.q_coarse_hh.is_substochastic

    return checks


def cmd_verify_all(args) -> int:
    results = []
    failed = False
    for name, fn in _verification_suite(args.max_n):
        try:
            fn()
            results.append({"check": name, "ok": True})
        except (AssertionError, MoebiusDualError) as exc:
            failed = True
            results.append({"check": name, "ok": False, "witness": str(exc)})
    _emit(args, {"ok": not failed, "checks": results})
    return EXIT_VERIFICATION if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moebius-dual",
        description="Exact zeta/Moebius duality, coarse-graining and population models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--output", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("lattice", help="emit zeta or Moebius matrix of a lattice")
    p.add_argument("family", choices=("subsets", "partitions"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=("zeta", "moebius"), default="zeta")
    common(p)
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("duality", help="positivity certificate for a kernel")
    p.add_argument("--poset", choices=("subsets",), default="subsets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--variant",
        choices=[v.value for v in DualityVariant],
        default="zeta",
    )
    p.add_argument("--kernel", required=True, help="JSON file with p/q entries")
    common(p)
    p.set_defaults(fn=cmd_duality)

    p = sub.add_parser("coarsen", help="coarse zeta/Moebius matrices")
    p.add_argument("family", choices=("sets", "partitions"))
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_coarsen)

    p = sub.add_parser("cannings", help="population model kernels and verification")
    p.add_argument("--model", choices=("wf", "moran"), required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--T", type=int, default=1, help="1 = haploid, >= 2 = multi-allelic")
    p.add_argument("--verify", choices=("all",), default="all")
    common(p)
    p.set_defaults(fn=cmd_cannings)

    p = sub.add_parser("simulate", help="Monte Carlo duality estimates")
    p.add_argument("--model", choices=("wf", "moran"), default="wf")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--start", type=int, required=True, help="forward start cardinality")
    p.add_argument("--dual-start", type=int, required=True, help="backward start cardinality")
    common(p)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("verify-all", help="run the full verification suite")
    p.add_argument("--max-n", type=int, default=4)
    common(p)
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SizeOverflow as exc:
        print(json.dumps({"error": "size-cap", "detail": str(exc)}), file=sys.stderr)
        return EXIT_SIZE
    except AssertionError as exc:
        print(
            json.dumps({"error": "verification-failure", "witness": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_VERIFICATION
    except (MoebiusDualError, OSError, ValueError) as exc:
        print(json.dumps({"error": "invalid-config", "detail": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
