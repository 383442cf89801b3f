"""JSON and CSV encodings for scalars, functions, families and reports.

Output is deterministic: keys are sorted and collections are emitted in
their canonical order, so re-runs produce byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .basisgen import GammaVector, WaveletFamily, is_real_family, parse_gamma_entry
from .funcspace import TestFunction
from .mra import WaveletIndex
from .padic import Ball, PAdicRational, parse_rational
from .scalar import Scalar


def _num(x: float) -> float:
    return 0.0 if x == 0 else x  # avoid "-0.0"


# -- scalars ----------------------------------------------------------------


def scalar_to_json(x: Scalar):
    z = complex(x)
    value = [_num(z.real), _num(z.imag)]
    if not x.is_exact:
        return {"float": value}
    out = {
        "conductor": x.conductor,
        "coeffs": [str(c) for c in x.coeffs],
        "value": value,
        "text": str(x),
    }
    if x.half_power:
        out["half_power"] = x.half_power
        out["prime"] = x.prime
    return out


def scalar_from_json(obj) -> Scalar:
    """Inverse of :func:`scalar_to_json`; also accepts shorthand inputs.

    Shorthand: an int, a rational string ``"n/d"``, a float, ``[re, im]``,
    or a prefixed string ``"root:k/N"`` (``exp(2 pi i k/N)``),
    ``"float:z"``, ``"rad:t"``, ``"pi:q"``.
    """
    if isinstance(obj, Scalar):
        return obj
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        return Scalar.of(obj)
    if isinstance(obj, float):
        return Scalar.from_float(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return Scalar.from_float(complex(float(obj[0]), float(obj[1])))
    if isinstance(obj, str):
        text = obj.strip()
        if text.startswith("root:"):
            text = "exact:" + text[5:]
        if ":" in text:
            return parse_gamma_entry(text)[0]
        return Scalar.of(parse_rational(text))
    if isinstance(obj, dict):
        if "float" in obj:
            re_, im = obj["float"]
            return Scalar.from_float(complex(float(re_), float(im)))
        if "coeffs" in obj:
            return Scalar.from_coeffs(
                [Fraction(c) for c in obj["coeffs"]],
                int(obj["conductor"]),
                int(obj.get("half_power", 0)),
                int(obj.get("prime", 0)),
            )
    raise ValueError(f"cannot read a scalar from {obj!r}")


# -- p-adic objects ---------------------------------------------------------


def padic_to_json(x: PAdicRational) -> str:
    return str(x)


def padic_from_json(obj, p: int) -> PAdicRational:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return PAdicRational(obj, 0, p)
    if isinstance(obj, str):
        return PAdicRational.parse(obj, p)
    raise ValueError(f"cannot read a p-adic rational from {obj!r}")


def function_to_json(f: TestFunction, normalize: bool = True) -> dict:
    g = f.normalize() if normalize else f
    return {
        "p": g.p,
        "terms": [
            {
                "coeff": scalar_to_json(t.coeff),
                "mod": padic_to_json(t.mod),
                "ball": {"center": padic_to_json(t.ball.center), "gamma": t.ball.gamma},
            }
            for t in g.terms
        ],
    }


def function_from_json(obj: dict) -> TestFunction:
    """Read ``{"p": p, "terms": [{"coeff", "mod", "ball": {"center", "gamma"}}]}``.

    ``coeff`` defaults to 1 and ``mod`` to 0.
    """
    if not isinstance(obj, dict) or "terms" not in obj:
        raise ValueError("function JSON needs a 'terms' list")
    p = int(obj.get("p", 2))
    terms = []
    for t in obj["terms"]:
        ball = t["ball"]
        center = padic_from_json(ball.get("center", 0), p)
        terms.append(
            (
                scalar_from_json(t.get("coeff", 1)),
                padic_from_json(t.get("mod", 0), p),
                Ball(center, int(ball["gamma"])),
            )
        )
    return TestFunction(p, terms)


def index_to_json(idx: WaveletIndex) -> dict:
    out = {"gamma": idx.gamma, "shift": padic_to_json(idx.shift)}
    if idx.branch != 1 or idx.shift.p != 2:
        out["branch"] = idx.branch
        out["p"] = idx.shift.p
    return out


def index_from_json(obj: dict) -> WaveletIndex:
    p = int(obj.get("p", 2))
    return WaveletIndex(int(obj["gamma"]), padic_from_json(obj.get("shift", 0), p), int(obj.get("branch", 1)))


# -- families and reports ---------------------------------------------------


def family_to_json(fam: WaveletFamily) -> dict:
    ok, defect, worst, _ = fam.unitarity()
    return {
        "s": fam.s,
        "alpha": [scalar_to_json(a) for a in fam.alphas],
        "gamma": [scalar_to_json(g) for g in fam.gamma.entries] if fam.gamma is not None else None,
        "checks": {"unitary": ok, "real": is_real_family(fam), "max_defect": defect},
    }


def family_from_json(obj: dict) -> WaveletFamily:
    """Read a family; ``alpha`` wins over ``gamma`` when both are present."""
    if not isinstance(obj, dict) or "s" not in obj:
        raise ValueError("family JSON needs 's'")
    s = int(obj["s"])
    gamma = None
    if obj.get("gamma") is not None:
        gamma = GammaVector(s, tuple(scalar_from_json(g) for g in obj["gamma"]))
    if obj.get("alpha") is not None:
        return WaveletFamily(s, tuple(scalar_from_json(a) for a in obj["alpha"]), gamma)
    if gamma is None:
        raise ValueError("family JSON needs 'alpha' or 'gamma'")
    from .basisgen import alphas_from_gamma

    return alphas_from_gamma(gamma)


def _label_to_json(label):
    if isinstance(label, WaveletIndex):
        return index_to_json(label)
    return label


def gram_to_json(report, include_matrix: bool = True) -> dict:
    out = {
        "size": report.size,
        "labels": [_label_to_json(x) for x in report.labels],
        "backend": report.backend,
        "identity": report.exact_identity if report.backend == "exact" else None,
        "max_off_diagonal": report.max_off_diagonal,
        "max_diagonal_deviation": report.max_diagonal_deviation,
    }
    if include_matrix:
        out["matrix"] = [[scalar_to_json(x) for x in row] for row in report.matrix]
    return out


def expansion_to_json(e) -> dict:
    return {
        "family": family_to_json(e.family),
        "gamma_range": list(e.gamma_range),
        "shift_bounds": {str(g): b for g, b in sorted(e.shift_bounds.items())},
        "coefficients": [
            {**index_to_json(idx), "value": scalar_to_json(c)} for idx, c in e.sorted_items()
        ],
        "energy": scalar_to_json(e.energy),
    }


def parseval_to_json(rep) -> dict:
    return {
        "norm2": scalar_to_json(rep.norm2),
        "energy": scalar_to_json(rep.energy),
        "defect": scalar_to_json(rep.defect),
        "residual_norm2": scalar_to_json(rep.residual_norm2),
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- CSV --------------------------------------------------------------------


def _complex_cell(x: Scalar) -> str:
    z = complex(x)
    return f"{_num(z.real)!r}{'+' if _num(z.imag) >= 0 else '-'}{abs(z.imag)!r}j"


def matrix_to_csv(matrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in matrix:
        w.writerow([_complex_cell(x) for x in row])
    return buf.getvalue()


def coefficients_to_csv(e) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["gamma", "shift", "re", "im", "exact"])
    for idx, c in e.sorted_items():
        z = complex(c)
        w.writerow([idx.gamma, str(idx.shift), repr(_num(z.real)), repr(_num(z.imag)), str(c) if c.is_exact else ""])
    return buf.getvalue()


def family_to_csv(fam: WaveletFamily) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "alpha_re", "alpha_im", "alpha_exact", "gamma_re", "gamma_im"])
    for k, a in enumerate(fam.alphas):
        za = complex(a)
        g = complex(fam.gamma.entries[k]) if fam.gamma is not None else None
        w.writerow(
            [
                k,
                repr(_num(za.real)),
                repr(_num(za.imag)),
                str(a) if a.is_exact else "",
                repr(_num(g.real)) if g is not None else "",
                repr(_num(g.imag)) if g is not None else "",
            ]
        )
    return buf.getvalue()


def function_to_csv(f: TestFunction) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["center", "gamma", "mod", "re", "im", "exact"])
    for t in f.normalize().terms:
        z = complex(t.coeff)
        w.writerow(
            [str(t.ball.center), t.ball.gamma, str(t.mod), repr(_num(z.real)), repr(_num(z.imag)),
             str(t.coeff) if t.coeff.is_exact else ""]
        )
    return buf.getvalue()
