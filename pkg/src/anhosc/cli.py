"""Command-line surface.

Subcommands: construct (model tables), coherent (normalized coherent-state
table plus verification report), verify (identity suite over a list of
alphas), generate (ODE-integrated superpotential against its closed form),
and fit (potential-expansion fitting from a CSV sample file).

Exit codes: 0 success or all checks passed, 1 verification or convergence
failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from ._format import fmt_float
from .errors import AnhoscError, InvalidParameterError
from .families import (
    make_generalized_kratzer_fues,
    make_generalized_morse,
    make_harmonic,
    make_kratzer_fues,
    make_wei_hua,
)
from .fit import PotentialSample, fit_expansion
from .generator import (
    FORM_CONSTANT,
    GeneratingSeries,
    closed_form_from_series,
    superpotential_from_series,
)
from .models import (
    WEI_HUA,
    OscillatorModel,
    closed_form_potential,
    describe,
    eval_superpotential_derivative,
)
from .models import eval_superpotential as model_superpotential
from .numerics import Grid, make_grid
from .states import auto_grid, coherent_state, ground_state, is_admissible, normalize
from .verify import Tolerances, format_complex, verify_coherent, verify_model

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_USAGE = 2

_fmt = fmt_float


def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bi' or 'a-bi' (no whitespace, locale-independent)."""
    cleaned = text.strip()
    if not cleaned or " " in cleaned:
        raise InvalidParameterError(f"malformed complex number {text!r}")
    try:
        return complex(cleaned.replace("i", "j"))
    except ValueError as exc:
        raise InvalidParameterError(f"malformed complex number {text!r}") from exc


def _parse_params(items: list[str] | None) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InvalidParameterError(f"expected --param name=value, got {item!r}")
        try:
            params[key] = float(value)
        except ValueError as exc:
            raise InvalidParameterError(f"non-numeric value in {item!r}") from exc
    return params


_FAMILY_PARAMS = {
    "harmonic": (),
    "morse": ("s", "xe"),
    "weihua": ("c0", "c1", "c2"),
    "kratzer": ("c1",),
    "gkf": ("c0", "c1"),
}


def _build_model(family: str, params: dict[str, float]) -> OscillatorModel:
    if family not in _FAMILY_PARAMS:
        raise InvalidParameterError(
            f"unknown family {family!r}; expected one of {sorted(_FAMILY_PARAMS)}"
        )
    expected = _FAMILY_PARAMS[family]
    missing = [name for name in expected if name not in params]
    if missing:
        raise InvalidParameterError(f"family {family!r} needs --param {missing[0]}=...")
    extra = [name for name in params if name not in expected]
    if extra:
        raise InvalidParameterError(f"unknown parameter {extra[0]!r} for family {family!r}")
    if family == "harmonic":
        return make_harmonic()
    if family == "morse":
        return make_generalized_morse(params["s"], params["xe"])
    if family == "weihua":
        return make_wei_hua(params["c0"], params["c1"], params["c2"])
    if family == "kratzer":
        return make_kratzer_fues(params["c1"])
    return make_generalized_kratzer_fues(params["c0"], params["c1"])


def _resolve_grid(args, model: OscillatorModel, alpha: complex = 0.0) -> Grid:
    explicit = args.qmin is not None or args.qmax is not None
    if explicit:
        if args.qmin is None or args.qmax is None:
            raise InvalidParameterError("--qmin and --qmax must be given together")
        grid = make_grid(args.qmin, args.qmax, args.n)
        _warn_if_truncation_loose(model, grid, alpha)
        return grid
    return auto_grid(model, alpha=alpha, n=args.n)


def _warn_if_truncation_loose(model: OscillatorModel, grid: Grid, alpha: complex) -> None:
    try:
        psi = coherent_state(model, alpha) if alpha else ground_state(model)
        mag = np.abs(psi.sample(grid).values)
    except AnhoscError:
        return
    peak = float(mag.max())
    if peak > 0.0 and (mag[0] > 1e-12 * peak or mag[-1] > 1e-12 * peak):
        print(
            "warning: explicit grid edge magnitude exceeds 1e-12 of the peak; "
            "normalization may reject this grid",
            file=sys.stderr,
        )


def _model_header_lines(model: OscillatorModel) -> list[str]:
    lines = [f"# model: {describe(model)}"]
    consts = [f"e0={_fmt(model.e0)}"]
    if model.d_const is not None:
        consts.append(f"d={_fmt(model.d_const)}")
    p = model.params
    if model.family == WEI_HUA:
        consts += [
            f"W={_fmt(p.w)}", f"B={_fmt(p.b)}", f"C={_fmt(p.big_c)}",
            f"c={_fmt(p.c)}", f"q0={_fmt(p.q0)}",
        ]
    elif hasattr(p, "c0"):
        consts += [f"c0={_fmt(p.c0)}", f"c1={_fmt(p.c1)}"]
        if hasattr(p, "s"):
            consts.append(f"s={_fmt(p.s)}")
    lines.append("# constants: " + " ".join(consts))
    lines.append(f"# domain: ({_fmt(model.q_lower)}, {_fmt(model.q_upper)})")
    return lines


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _write_table(path: str, header_lines: list[str], columns: list[str], rows) -> None:
    lines = list(header_lines)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(value) for value in row))
    _write_text(path, "\n".join(lines) + "\n")


def _write_plotscript(table_path: str, columns: list[str]) -> None:
    import os

    base = os.path.basename(table_path)
    lines = [
        "# gnuplot script for " + base,
        'set datafile separator ","',
        "set grid",
        'set xlabel "q"',
        "plot " + ", \\\n     ".join(
            f'"{base}" using 1:{idx} with lines title "{name}"'
            for idx, name in enumerate(columns[1:], start=2)
        ),
    ]
    _write_text(table_path + ".gp", "\n".join(lines) + "\n")


def cmd_construct(args) -> int:
    model = _build_model(args.family, _parse_params(args.param))
    grid = _resolve_grid(args, model)
    q = grid.points()
    x = model_superpotential(model, q)
    dx = eval_superpotential_derivative(model, q)
    v = closed_form_potential(model, q)
    psi0 = ground_state(model).sample(grid).values.real
    columns = ["q", "x", "dx_dq", "v_minus_e0", "psi0"]
    header = ["# anhosc construct"] + _model_header_lines(model)
    _write_table(args.out, header, columns, zip(q, x, dx, v, psi0))
    if args.emit == "plotscript":
        _write_plotscript(args.out, columns)
    return _EXIT_OK


def cmd_coherent(args) -> int:
    model = _build_model(args.family, _parse_params(args.param))
    alpha = parse_complex(args.alpha)
    grid = _resolve_grid(args, model, alpha)
    psi = normalize(coherent_state(model, alpha), grid)
    values = psi.sample(grid).values
    q = grid.points()
    columns = ["q", "psi_re", "psi_im", "abs2"]
    header = ["# anhosc coherent"] + _model_header_lines(model)
    header.append(f"# alpha: {format_complex(alpha)}")
    header.append(f"# norm_before_scaling: {_fmt(psi.norm)}")
    rows = zip(q, values.real, values.imag, np.abs(values) ** 2)
    _write_table(args.out, header, columns, rows)
    if args.emit == "plotscript":
        _write_plotscript(args.out, columns)
    report = verify_coherent(model, alpha, grid, _tolerances(args))
    _write_text(args.report, report.to_text())
    return _EXIT_OK if report.passed else _EXIT_CHECK_FAILED


def _tolerances(args) -> Tolerances:
    tol = Tolerances()
    overrides = {}
    for item in args.tol or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidParameterError(f"expected --tol name=value, got {item!r}")
        if key not in tol.__dataclass_fields__:
            raise InvalidParameterError(f"unknown tolerance {key!r}")
        try:
            overrides[key] = float(value)
        except ValueError as exc:
            raise InvalidParameterError(f"non-numeric tolerance in {item!r}") from exc
    return replace(tol, **overrides) if overrides else tol


def cmd_verify(args) -> int:
    model = _build_model(args.family, _parse_params(args.param))
    alphas = [parse_complex(item) for item in args.alphas.split(",") if item]
    if not alphas:
        raise InvalidParameterError("--alphas must list at least one value")
    tol = _tolerances(args)
    sections: list[str] = []
    all_passed = True
    grid0 = _resolve_grid(args, model)
    report = verify_model(model, grid0, tol)
    all_passed &= report.passed
    sections.append(report.to_text())
    for alpha in alphas:
        if not is_admissible(model, alpha):
            sections.append(
                f"model: {describe(model)}\nalpha: {format_complex(alpha)}\n"
                "result: skipped (inadmissible)\n"
            )
            continue
        grid = _resolve_grid(args, model, alpha)
        rep = verify_coherent(model, alpha, grid, tol)
        all_passed &= rep.passed
        sections.append(rep.to_text())
    _write_text(args.report, "---\n".join(sections))
    return _EXIT_OK if all_passed else _EXIT_CHECK_FAILED


def cmd_generate(args) -> int:
    params = _parse_params(args.param)
    series = GeneratingSeries(
        form=args.form,
        c0=params.get("c0", 0.0),
        c1=params.get("c1", 0.0),
        c2=params.get("c2", 0.0),
        x0=params.get("x0"),
    )
    grid = make_grid(0.0, args.qmax, args.n)
    numeric = superpotential_from_series(series, grid)
    header = ["# anhosc generate", f"# form: {args.form}"]
    header.append(
        "# coefficients: "
        + " ".join(f"{k}={_fmt(params[k])}" for k in sorted(params))
    )
    columns = ["q", "x_numeric"]
    rows: list[tuple[float, ...]] = list(zip(grid.points(), numeric.values))
    try:
        model = closed_form_from_series(series)
    except AnhoscError as exc:
        header.append(f"# closed_form: unavailable ({exc})")
    else:
        header.append(f"# closed_form: {describe(model)}")
        closed = model_superpotential(model, grid.points())
        if series.form == FORM_CONSTANT:
            closed = closed + series.initial_value()
        max_dev = float(np.max(np.abs(numeric.values - closed)))
        header.append(f"# max_deviation: {_fmt(max_dev)}")
        columns.append("x_closed")
        rows = [(*row, c) for row, c in zip(rows, closed)]
    _write_table(args.out, header, columns, rows)
    if args.emit == "plotscript":
        _write_plotscript(args.out, columns)
    return _EXIT_OK


def _read_samples(path: str) -> list[PotentialSample]:
    samples: list[PotentialSample] = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                parts = text.split(",")
                if len(parts) != 2:
                    raise InvalidParameterError(
                        f"{path}:{line_no}: expected 'r,v', got {text!r}"
                    )
                try:
                    samples.append(PotentialSample(float(parts[0]), float(parts[1])))
                except ValueError as exc:
                    raise InvalidParameterError(
                        f"{path}:{line_no}: non-numeric row {text!r}"
                    ) from exc
    except OSError as exc:
        raise InvalidParameterError(f"cannot read {path}: {exc}") from exc
    return samples


def cmd_fit(args) -> int:
    samples = _read_samples(args.data)
    result = fit_expansion(samples, order=args.order)
    lines = [
        f"data: {args.data}",
        f"order: {args.order}",
        f"samples: {len(samples)}",
        "params:",
        f"  r_e: {_fmt(result.params.r_e)}",
        f"  s: {_fmt(result.params.s)}",
        f"  c0: {_fmt(result.params.c0)}",
    ]
    for idx, c in enumerate(result.params.c_n, start=1):
        lines.append(f"  c{idx}: {_fmt(c)}")
    lines += [
        f"equilibrium: {_fmt(result.params.r_e * (result.params.s + 1.0))}",
        f"rss: {_fmt(result.rss)}",
        f"iterations: {result.iterations}",
        f"converged: {'true' if result.converged else 'false'}",
    ]
    _write_text(args.out, "\n".join(lines) + "\n")
    return _EXIT_OK if result.converged else _EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anhosc",
        description="Anharmonic-oscillator superpotentials, coherent states, "
        "and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", required=True, help="harmonic|morse|weihua|kratzer|gkf")
        p.add_argument("--param", action="append", metavar="NAME=VALUE")
        p.add_argument("--qmin", type=float, default=None)
        p.add_argument("--qmax", type=float, default=None)
        p.add_argument("--n", type=int, default=4001)
        p.add_argument("--grid", choices=["auto"], default="auto",
                       help="auto truncation (default when --qmin/--qmax absent)")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE")
        p.add_argument("--emit", choices=["csv", "report", "plotscript"], default="csv")

    p_construct = sub.add_parser("construct", help="emit q, x, x', V-E0, psi0 table")
    add_model_flags(p_construct)
    p_construct.add_argument("--out", default="construct.csv")
    p_construct.set_defaults(func=cmd_construct)

    p_coherent = sub.add_parser("coherent", help="emit normalized coherent state and report")
    add_model_flags(p_coherent)
    p_coherent.add_argument("--alpha", required=True, help="complex, e.g. 0.1+0.2i")
    p_coherent.add_argument("--out", default="coherent.csv")
    p_coherent.add_argument("--report", default="coherent_report.txt")
    p_coherent.set_defaults(func=cmd_coherent)

    p_verify = sub.add_parser("verify", help="run the identity suite for a list of alphas")
    add_model_flags(p_verify)
    p_verify.add_argument("--alphas", required=True, help="comma list, e.g. 0,0.1,0.1+0.2i")
    p_verify.add_argument("--report", default="verify_report.txt")
    p_verify.set_defaults(func=cmd_verify)

    p_generate = sub.add_parser("generate", help="integrate dx/dq = -f(x) and compare")
    p_generate.add_argument("--form", required=True,
                            help="constant|linear|parabolic|squared_linear")
    p_generate.add_argument("--param", action="append", metavar="NAME=VALUE")
    p_generate.add_argument("--qmax", type=float, default=5.0)
    p_generate.add_argument("--n", type=int, default=5001)
    p_generate.add_argument("--emit", choices=["csv", "report", "plotscript"], default="csv")
    p_generate.add_argument("--out", default="generate.csv")
    p_generate.set_defaults(func=cmd_generate)

    p_fit = sub.add_parser("fit", help="fit the potential expansion to r,v samples")
    p_fit.add_argument("--data", required=True)
    p_fit.add_argument("--order", type=int, default=0)
    p_fit.add_argument("--out", default="fit.txt")
    p_fit.set_defaults(func=cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (AnhoscError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    app()
