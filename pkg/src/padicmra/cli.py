"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import serialize as ser
from .basisgen import (
    REAL_KINDS,
    GammaVector,
    UnitarityError,
    WaveletFamily,
    alphas_from_gamma,
    family_wavelet,
    parse_gamma_entry,
    real_family,
)
from .funcspace import constancy_and_support, fourier, haar_integral, inverse_fourier
from .mra import WaveletIndex
from .padic import (
    additive_character,
    check_prime,
    digit_expansion,
    enumerate_shifts,
    frac_part,
    parse_rational,
    valuation_and_norm,
)
from .scalar import ACCEPT_TOL, Scalar
from .verify import NotLizorkinError, expand, gram, parseval_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    p: int = 2
    backend: str = "exact"
    tol: float = ACCEPT_TOL
    seed: int = 0
    format: str = "json"
    out: str | None = None
    jobs: int = 1

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        if self.backend == "exact":
            d["tol"] = None  # ignored on the exact backend
        return d

    @property
    def check_tol(self) -> float:
        return 0.0 if self.backend == "exact" else self.tol


def _config(args) -> RunConfig:
    return RunConfig(
        p=getattr(args, "p", 2),
        backend=args.backend,
        tol=args.tol,
        seed=args.seed,
        format=args.format,
        out=args.out,
        jobs=args.jobs,
    )


def _emit(cfg: RunConfig, payload: dict, csv_text: str | None = None, pretty: str | None = None):
    if cfg.format == "csv" and csv_text is not None:
        text = csv_text
    elif cfg.format == "pretty" and pretty is not None:
        text = pretty if pretty.endswith("\n") else pretty + "\n"
    else:
        text = ser.dumps({"config": cfg.to_json(), **payload})
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _read_function(path: str, cfg: RunConfig):
    obj = _read_json(path)
    try:
        f = ser.function_from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad function file {path}: {exc}") from exc
    return f.to_float() if cfg.backend == "float" else f


def _read_family(source: str, cfg: RunConfig) -> WaveletFamily:
    if source == "haar":
        fam = WaveletFamily.haar()
    else:
        obj = _read_json(source)
        try:
            fam = ser.family_from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad family file {source}: {exc}") from exc
    if cfg.backend == "float":
        fam = WaveletFamily(fam.s, tuple(a.to_float() for a in fam.alphas), fam.gamma)
    return fam


# -- padic eval -------------------------------------------------------------


def cmd_padic_eval(args, cfg: RunConfig) -> int:
    check_prime(cfg.p)
    q = parse_rational(args.x)
    p = cfg.p
    val, nrm = valuation_and_norm(q, p)
    payload = {
        "x": args.x,
        "p": p,
        "valuation": None if q == 0 else val,
        "norm": str(nrm),
    }
    try:
        fp = frac_part(q, p)
        chi = additive_character(q, p)
        payload["frac_part"] = str(fp.to_fraction())
        payload["character"] = ser.scalar_to_json(chi.to_float() if cfg.backend == "float" else chi)
    except ValueError:
        payload["frac_part"] = None
        payload["character"] = None
    if q != 0:
        g, digits = digit_expansion(q, args.digits, p)
        payload["digits"] = digits
        payload["digits_gamma"] = g
    else:
        payload["digits"] = None
    pretty = "\n".join(
        [
            f"x = {args.x} in Q_{p}",
            f"valuation = {'inf' if q == 0 else val}",
            f"|x|_{p} = {nrm}",
            f"frac part = {payload['frac_part']}",
            f"chi(x) = {chi if payload['character'] is not None else None}",
            f"digits = {payload['digits']}" + (f" (times {p}^{payload['digits_gamma']})" if q != 0 else ""),
        ]
    )
    _emit(cfg, payload, pretty=pretty)
    return EXIT_OK


# -- basis gen / verify -----------------------------------------------------


def parse_gamma_list(text: str) -> list[Scalar]:
    """Comma-separated entries; a ``kind:`` prefix carries over to later entries."""
    kind = "exact"
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise InputError("empty gamma entry")
        value, kind = parse_gamma_entry(item, kind)
        out.append(value)
    return out


def _angle(text: str):
    text = text.strip()
    if text.startswith("pi:"):
        return parse_rational(text[3:])
    text = text.removeprefix("rad:")
    return float(text)


def _family_pretty(fam: WaveletFamily) -> str:
    ok, defect, worst, value = fam.unitarity()
    lines = [f"s = {fam.s}"]
    for k, a in enumerate(fam.alphas):
        lines.append(f"alpha_{k} = {a}")
    if fam.gamma is not None:
        for r, g in enumerate(fam.gamma.entries):
            lines.append(f"gamma_{r} = {g}")
    lines.append(f"unitary = {ok} (max defect {defect:.3g})")
    return "\n".join(lines)


def cmd_basis_gen(args, cfg: RunConfig) -> int:
    if args.real:
        if args.theta is not None:
            fam = real_family(args.s, _angle(args.theta), args.kind)
        elif args.s == 1:
            if args.theta1 is None:
                raise InputError("--real with s = 1 needs --theta")
            fam = real_family(1, _angle(args.theta1))
        else:
            if args.theta1 is None or args.theta2 is None:
                raise InputError("--real with s = 2 needs --theta1 and --theta2 (or --theta and --kind)")
            fam = real_family(2, (_angle(args.theta1), _angle(args.theta2)))
    elif args.gamma is not None:
        entries = parse_gamma_list(args.gamma)
        fam = alphas_from_gamma(GammaVector(args.s, tuple(entries)))
    elif args.random:
        import random

        fam = alphas_from_gamma(GammaVector.random(args.s, random.Random(cfg.seed), cfg.backend == "exact"))
    else:
        raise InputError("give --gamma, --real or --random")
    if cfg.backend == "float":
        fam = WaveletFamily(
            fam.s,
            tuple(a.to_float() for a in fam.alphas),
            GammaVector(fam.s, tuple(g.to_float() for g in fam.gamma.entries)) if fam.gamma else None,
        )
    payload = ser.family_to_json(fam)
    _emit(cfg, payload, csv_text=ser.family_to_csv(fam), pretty=_family_pretty(fam))
    return EXIT_OK if payload["checks"]["unitary"] else EXIT_FAIL


def cmd_basis_verify(args, cfg: RunConfig) -> int:
    fam = _read_family(args.family, cfg)
    ok, defect, worst, value = fam.unitarity()
    lo, hi = args.gamma_min, args.gamma_max
    if lo > hi:
        raise InputError("--gamma-min exceeds --gamma-max")
    labels, funcs = [], []
    for g in range(lo, hi + 1):
        for a in enumerate_shifts(args.max_denom_exp, 2):
            labels.append(WaveletIndex(g, a))
            funcs.append(family_wavelet(fam, g, a))
    rep = gram(funcs, labels, jobs=cfg.jobs)
    tol = cfg.check_tol
    gram_ok = rep.is_identity(tol) if cfg.backend == "float" else rep.exact_identity
    passed = gram_ok and (ok or (cfg.backend == "float" and defect <= cfg.tol))
    payload = {
        "family": ser.family_to_json(fam),
        "window": {"gamma_min": lo, "gamma_max": hi, "max_denom_exp": args.max_denom_exp},
        "gram": ser.gram_to_json(rep, include_matrix=args.matrix),
        "passed": passed,
    }
    worst_entry = rep.worst_entry()
    if worst_entry is not None:
        i, j, x = worst_entry
        payload["worst_entry"] = {
            "row": ser.index_to_json(rep.labels[i]),
            "col": ser.index_to_json(rep.labels[j]),
            "value": ser.scalar_to_json(x),
        }
    pretty = "\n".join(
        [
            f"family s = {fam.s}, D unitary = {ok} (defect {defect:.3g})",
            f"window: gamma in [{lo}, {hi}], shift denominators <= 2^{args.max_denom_exp}",
            f"Gram size {rep.size}, backend {rep.backend}",
            f"max off-diagonal = {rep.max_off_diagonal:.3g}, max diagonal deviation = {rep.max_diagonal_deviation:.3g}",
            f"result: {'PASS' if passed else 'FAIL'}",
        ]
    )
    _emit(cfg, payload, csv_text=ser.matrix_to_csv(rep.matrix), pretty=pretty)
    if not passed:
        print(f"verification failed: max defect {rep.max_defect:.6g}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


# -- expand / fourier / selfcheck -------------------------------------------


def cmd_expand(args, cfg: RunConfig) -> int:
    f = _read_function(args.input, cfg)
    fam = _read_family(args.family, cfg)
    tol = cfg.check_tol
    try:
        e = expand(f, fam, subtract_mean=args.subtract_mean, tol=tol)
    except NotLizorkinError as exc:
        raise InputError(f"{exc} (use --subtract-mean to remove it)") from exc
    if args.subtract_mean:
        integral = haar_integral(f)
        if not integral.is_zero(tol):
            from .funcspace import TestFunction, support_ball

            ball = support_ball(f)
            f = f - TestFunction.indicator(ball, integral * Scalar.of(1 / ball.measure()))
    rep = parseval_report(f, e)
    passed = rep.ok(tol)
    payload = {"expansion": ser.expansion_to_json(e), "parseval": ser.parseval_to_json(rep), "passed": passed}
    pretty_lines = [f"{len(e.coeffs)} nonzero coefficients, gamma window {list(e.gamma_range)}"]
    for idx, c in e.sorted_items():
        pretty_lines.append(f"  gamma={idx.gamma:>3} a={idx.shift}: {c}")
    pretty_lines.append(f"||f||^2 = {rep.norm2}, sum |c|^2 = {rep.energy}, defect = {rep.defect}")
    _emit(cfg, payload, csv_text=ser.coefficients_to_csv(e), pretty="\n".join(pretty_lines))
    return EXIT_OK if passed else EXIT_FAIL


def cmd_fourier(args, cfg: RunConfig) -> int:
    f = _read_function(args.input, cfg)
    g = inverse_fourier(f) if args.inverse else fourier(f)
    payload = ser.function_to_json(g)
    if not g.is_zero():
        l, n = constancy_and_support(g)
        pretty = f"transform has constancy {l}, support B_{n}\n  {g}"
    else:
        pretty = "transform is zero"
    _emit(cfg, payload, csv_text=ser.function_to_csv(g), pretty=pretty)
    return EXIT_OK


def cmd_selfcheck(args, cfg: RunConfig) -> int:
    from .selfcheck import run_selfcheck

    summary = run_selfcheck(cfg.seed, args.suite or None)
    pretty = "\n".join(
        f"{'PASS' if r['passed'] else 'FAIL'} {name}: {r['detail']}" for name, r in summary["suites"].items()
    )
    _emit(cfg, summary, pretty=pretty)
    return EXIT_OK if summary["passed"] else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--tol", type=float, default=ACCEPT_TOL, help="float-backend tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for Gram matrices")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="padicmra", description="p-adic MRA and wavelet toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    padic = sub.add_parser("padic", help="p-adic number utilities")
    psub = padic.add_subparsers(dest="action", required=True)
    ev = psub.add_parser("eval", parents=[common], help="norm, valuation, digits and character of x")
    ev.add_argument("--p", type=int, default=2)
    ev.add_argument("--x", required=True)
    ev.add_argument("--digits", type=int, default=8)
    ev.set_defaults(func=cmd_padic_eval)

    basis = sub.add_parser("basis", help="wavelet families")
    bsub = basis.add_subparsers(dest="action", required=True)
    gen = bsub.add_parser("gen", parents=[common], help="build a family from gamma or angles")
    gen.add_argument("--s", type=int, required=True)
    gen.add_argument("--gamma", help="comma-separated entries: exact:k/N, float:z, rad:t, pi:q")
    gen.add_argument("--real", action="store_true", help="real family from angles")
    gen.add_argument("--theta", help="single angle (s = 1, or s = 2 with --kind)")
    gen.add_argument("--theta1")
    gen.add_argument("--theta2")
    gen.add_argument("--kind", choices=REAL_KINDS)
    gen.add_argument("--random", action="store_true", help="seeded random gamma")
    gen.set_defaults(func=cmd_basis_gen)

    ver = bsub.add_parser("verify", parents=[common], help="Gram check over a finite index window")
    ver.add_argument("--family", default="haar", help="family JSON file or 'haar'")
    ver.add_argument("--gamma-min", type=int, default=-3)
    ver.add_argument("--gamma-max", type=int, default=3)
    ver.add_argument("--max-denom-exp", type=int, default=4)
    ver.add_argument("--matrix", action="store_true", help="include the full matrix in JSON")
    ver.set_defaults(func=cmd_basis_verify)

    exp = sub.add_parser("expand", parents=[common], help="wavelet expansion of a function file")
    exp.add_argument("--in", dest="input", required=True)
    exp.add_argument("--family", default="haar")
    exp.add_argument("--subtract-mean", action="store_true")
    exp.set_defaults(func=cmd_expand)

    fo = sub.add_parser("fourier", parents=[common], help="exact Fourier transform of a function file")
    fo.add_argument("--in", dest="input", required=True)
    fo.add_argument("--inverse", action="store_true")
    fo.set_defaults(func=cmd_fourier)

    sc = sub.add_parser("selfcheck", parents=[common], help="seeded run of the invariant suites")
    sc.add_argument("--suite", action="append", help="restrict to named suites")
    sc.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_INPUT
    cfg = _config(args)
    try:
        return args.func(args, cfg)
    except (InputError, ValueError, TypeError, UnitarityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
