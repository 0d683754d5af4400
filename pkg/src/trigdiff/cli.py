"""Command-line interface.

Subcommands:

* ``diff``          differentiate a catalog example or a CSV of samples
* ``table1``        reproduce the published smooth-family accuracy grid
* ``table3``        reproduce the published discontinuous-family grid
* ``verify-bounds`` run the numerical verification sweeps, emit a CSV report
* ``plot``          emit figure data (CSV) and render it to PNG
* ``dump-matrix``   write one Galerkin matrix as CSV at full precision

All numeric output uses full-precision, locale-independent formatting.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bounds as bounds_mod
from .basis import SampledSignal, sobolev_norm_of_signal
from .experiments import (
    FIGURES,
    TABLE1_NOISE_FREQUENCY,
    TABLE3_NOISE_FREQUENCY,
    add_noise,
    catalog,
    catalog_ids,
    emit_plot_data,
    relative_error,
    run_table,
)
from .galerkin import assemble_matrix
from .oracle import inverse_operator_norm
from .regularize import (
    NO_PRIOR_PREFACTORS,
    BandlimitedRule,
    DiffProblem,
    DiffReport,
    FixedRule,
    NoPriorRule,
    SobolevPriorRule,
    differentiate,
)

SOBOLEV_NORM_CUTOFF = 100_000


def _parse_rule(text: str, delta_i: float):
    """Parse ``fixed:N | noprior:a[,prefactor] | sobolev:l,norm | band:N1,N2``.

    Returns a rule, or a list of rules for the no-prior prefactor sweep.
    ``sobolev`` accepts ``norm=auto`` (resolved later against the catalog
    derivative) and switches to the noisy-initial variant when delta_i > 0.
    """
    kind, _, args = text.partition(":")
    try:
        if kind == "fixed":
            return FixedRule(int(args))
        if kind == "band":
            n1, n2 = (int(v) for v in args.split(","))
            return BandlimitedRule(n1, n2)
        if kind == "noprior":
            parts = args.split(",")
            a = float(parts[0])
            if len(parts) > 1:
                return NoPriorRule(a, float(parts[1]))
            return [NoPriorRule(a, pref) for pref in NO_PRIOR_PREFACTORS]
        if kind == "sobolev":
            l_text, norm_text = args.split(",")
            if norm_text.strip() == "auto":
                return ("sobolev-auto", float(l_text))
            return SobolevPriorRule(float(l_text), float(norm_text), noisy_initial=delta_i > 0)
    except (ValueError, TypeError):
        pass
    raise SystemExit(f"cannot parse rule {text!r}; expected fixed:N, noprior:a[,prefactor], "
                     "sobolev:l,norm|auto, or band:N1,N2")


def _write_or_print(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_diff(args) -> int:
    delta, delta_i = args.delta, args.delta_i
    entry = None
    if args.example is not None:
        entry = catalog(args.example)
        if args.order is not None and args.order != entry.p:
            raise SystemExit(f"{entry.id} is a p={entry.p} example; drop --order or set it to {entry.p}")
        p = entry.p
        signal = add_noise(entry.y, delta, args.noise_freq)
        initial = tuple(v + delta_i for v in entry.exact_initial_data)
    else:
        if args.order is None:
            raise SystemExit("--order is required with --input")
        p = args.order
        signal = SampledSignal.from_csv(args.input)
        initial = (0.0,) * p
    if args.initial is not None:
        initial = tuple(float(v) for v in args.initial.split(","))

    rules = _parse_rule(args.rule, delta_i)
    sweep = isinstance(rules, list)
    for rule in rules if sweep else [rules]:
        if isinstance(rule, tuple) and rule[0] == "sobolev-auto":
            if entry is None:
                raise SystemExit("sobolev:l,auto needs --example (the norm comes from the exact derivative)")
            norm = sobolev_norm_of_signal(entry.exact_derivative, rule[1], SOBOLEV_NORM_CUTOFF)
            rule = SobolevPriorRule(rule[1], norm, noisy_initial=delta_i > 0)
        result = differentiate(DiffProblem(p, signal, initial, delta, delta_i), rule)
        report = result.report
        if entry is not None:
            r = relative_error(result.derivative, entry.exact_derivative)
            report = DiffReport(report.p, report.n, report.delta, report.delta_i,
                                report.rule, r, report.bound)
        print(report.to_json())

    if args.output and not sweep:
        t = np.linspace(0.0, 2.0 * np.pi, 2048)
        lines = ["t,derivative"] if entry is None else ["t,derivative,exact"]
        approx = result.derivative.eval(t)
        exact = entry.exact_derivative.eval(t) if entry is not None else None
        for i in range(len(t)):
            row = f"{t[i]:.17g},{approx[i]:.17g}"
            if exact is not None:
                row += f",{exact[i]:.17g}"
            lines.append(row)
        _write_or_print("\n".join(lines) + "\n", args.output)
    if args.coeffs and not sweep:
        poly = result.derivative
        lines = ["index,kind,coefficient", f"0,const,{poly.c0:.17g}"]
        for k in range(1, poly.degree + 1):
            lines.append(f"{k},cos,{poly.cos_coeffs[k - 1]:.17g}")
            lines.append(f"{k},sin,{poly.sin_coeffs[k - 1]:.17g}")
        _write_or_print("\n".join(lines) + "\n", args.coeffs)
    return 0


def _cmd_table(which: str, args) -> int:
    start = time.perf_counter()
    csv_text = run_table(which, args.freq)
    elapsed = time.perf_counter() - start
    _write_or_print(csv_text, args.out)
    print(f"{which}: {csv_text.count(chr(10)) - 1} cells in {elapsed:.2f}s wall", file=sys.stderr)
    return 0


def _cmd_verify_bounds(args) -> int:
    reports = {}
    if args.which in ("decay", "all"):
        for p in (1, 2, 3):
            n_lo = 5 if p == 3 else 1
            reports[f"decay_p{p}"] = bounds_mod.check_decay(p, range(n_lo, args.max_decay_n + 1),
                                                            args.multiplier)
    if args.which in ("kappa", "all"):
        for p in (1, 2, 3):
            reports[f"kappa_p{p}"] = bounds_mod.check_kappa_gamma(p, trials=args.trials)
    if args.which in ("propc1", "all"):
        reports["propc1"] = bounds_mod.check_prop_c1(args.max_const_n)
    if args.which in ("norm", "all"):
        rows = []
        growth = {1: np.sqrt(3.0), 2: 11.8040, 3: 345.0754}
        for p in (1, 2, 3):
            for n in range(1, args.max_norm_n + 1):
                value = inverse_operator_norm(p, n)
                bound = growth[p] * n ** p
                rows.append(bounds_mod.CheckRow("pinv_norm_growth", p, n, 0, value, bound,
                                                value <= bound * (1.0 + 1e-9)))
        margins = [row.bound - row.value for row in rows]
        reports["norm"] = bounds_mod.BoundReport(all(r.passed for r in rows), min(margins), rows)

    all_rows = bounds_mod.BoundReport(all(r.passed for r in reports.values()),
                                      min(r.worst_margin for r in reports.values()),
                                      [row for r in reports.values() for row in r.rows])
    _write_or_print(bounds_mod.report_to_csv(all_rows, include_passes=not args.failures_only), args.out)
    for name, rep in sorted(reports.items()):
        status = "pass" if rep.passed else "FAIL"
        print(f"{name}: {status} ({len(rep.rows)} checks, worst margin {rep.worst_margin:.3e})",
              file=sys.stderr)
    return 0 if all_rows.passed else 2


def _cmd_plot(args) -> int:
    entry_id, runs = FIGURES[args.figure]
    entry = catalog(entry_id)
    freq = TABLE3_NOISE_FREQUENCY if args.freq is None else args.freq
    csv_text = emit_plot_data(entry, runs, freq)
    csv_path = f"{args.out_dir}/fig{args.figure}.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(csv_text)
    print(f"wrote {csv_path}", file=sys.stderr)
    if not args.no_png:
        png_path = f"{args.out_dir}/fig{args.figure}.png"
        _render_figure(csv_text, entry_id, png_path)
        print(f"wrote {png_path}", file=sys.stderr)
    return 0


def _render_figure(csv_text: str, title: str, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    lines = csv_text.strip().split("\n")
    headers = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(data[:, 0], data[:, 1], "k-", lw=2, label="exact")
    for col in range(2, data.shape[1]):
        ax.plot(data[:, 0], data[:, col], lw=1, label=headers[col])
    ax.set_xlabel("t")
    ax.set_ylabel("derivative")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_dump_matrix(args) -> int:
    m = assemble_matrix(args.p, args.n).entries
    lines = [",".join(f"{v:.17g}" for v in row) for row in m]
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigdiff",
                                     description="Stable numerical differentiation on (0, 2*pi)")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diff", help="differentiate a catalog example or CSV samples")
    d.add_argument("--order", type=int, choices=(1, 2, 3), help="differentiation order p")
    src = d.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", choices=catalog_ids(), help="catalog signal (synthetic noise is injected)")
    src.add_argument("--input", help="CSV of t,value samples on a uniform 0..2*pi grid")
    d.add_argument("--delta", type=float, default=0.0, help="L2 noise level (injected in example mode)")
    d.add_argument("--delta-i", type=float, default=0.0, dest="delta_i",
                   help="initial-value noise level (added to every initial value in example mode)")
    d.add_argument("--rule", required=True,
                   help="fixed:N | noprior:a[,prefactor] | sobolev:l,norm|auto | band:N1,N2")
    d.add_argument("--initial", help="comma-separated initial values (default: catalog values, or zeros)")
    d.add_argument("--noise-freq", type=int, default=TABLE1_NOISE_FREQUENCY,
                   help="frequency of the injected sin noise in example mode")
    d.add_argument("--output", help="write t,derivative samples to this CSV")
    d.add_argument("--coeffs", help="write solution coefficients to this CSV")
    d.set_defaults(func=_cmd_diff)

    for which in ("table1", "table3"):
        t = sub.add_parser(which, help=f"reproduce the published {which} grid as CSV")
        t.add_argument("--freq", type=int, default=None, help="override the noise frequency")
        t.add_argument("--out", help="output CSV path (default: stdout)")
        t.set_defaults(func=lambda a, w=which: _cmd_table(w, a))

    v = sub.add_parser("verify-bounds", help="run numerical bound verification sweeps")
    v.add_argument("--which", choices=("decay", "kappa", "propc1", "norm", "all"), default="all")
    v.add_argument("--max-decay-n", type=int, default=20)
    v.add_argument("--multiplier", type=int, default=10)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--max-const-n", type=int, default=2000)
    v.add_argument("--max-norm-n", type=int, default=100)
    v.add_argument("--failures-only", action="store_true", help="emit only failing rows")
    v.add_argument("--out", help="output CSV path (default: stdout)")
    v.set_defaults(func=_cmd_verify_bounds)

    pl = sub.add_parser("plot", help="emit figure data and render it")
    pl.add_argument("--figure", type=int, choices=sorted(FIGURES), required=True)
    pl.add_argument("--out-dir", default=".")
    pl.add_argument("--freq", type=int, default=None, help="override the noise frequency")
    pl.add_argument("--no-png", action="store_true", help="emit the CSV only")
    pl.set_defaults(func=_cmd_plot)

    dm = sub.add_parser("dump-matrix", help="write one Galerkin matrix as CSV")
    dm.add_argument("--p", type=int, choices=(1, 2, 3), required=True)
    dm.add_argument("--n", type=int, required=True)
    dm.add_argument("--out", help="output CSV path (default: stdout)")
    dm.set_defaults(func=_cmd_dump_matrix)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"trigdiff: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
