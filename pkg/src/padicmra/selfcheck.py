"""A compact seeded run of the library's invariants, for the ``selfcheck`` command."""
from __future__ import annotations

import random
import time

from .basisgen import (
    REAL_KINDS,
    GammaVector,
    UnitarityError,
    WaveletFamily,
    alphas_from_gamma,
    build_A,
    commutant,
    family_wavelet,
    gamma_from_alphas,
    is_real_family,
    matmul,
    matrices_equal,
    psi_s,
    real_family,
    shifted_family,
)
from .funcspace import (
    TestFunction,
    affine_pullback,
    constancy_and_support,
    fourier,
    inner_product,
    reflect,
)
from .mra import (
    WaveletIndex,
    check_refinement,
    haar_wavelet,
    kozyrev_coeffs,
    kozyrev_from_refinement,
    kozyrev_theta,
    psi0,
    refinable_phi,
)
from .padic import enumerate_shifts
from .sampling import random_function, random_lizorkin, random_unit
from .scalar import ACCEPT_TOL, Scalar
from .verify import expand, gram, parseval_report


def _refinement(rng):
    return all(check_refinement(p) for p in (2, 3, 5)), "p in {2,3,5}"


def _haar_gram(rng):
    idx = [WaveletIndex(g, a) for g in range(-3, 4) for a in enumerate_shifts(4)]
    rep = gram([haar_wavelet(i) for i in idx], idx)
    return rep.exact_identity, f"{rep.size} functions"


def _families(rng):
    for s in (1, 2, 3):
        for exact in (True, False):
            g = GammaVector.random(s, rng, exact)
            fam = alphas_from_gamma(g)
            if not fam.is_unitary():
                return False, f"D not unitary at s={s}"
            a, b = build_A(s).dense(), commutant(g)
            tol = 0.0 if exact else ACCEPT_TOL
            if not matrices_equal(matmul(a, b), matmul(b, a), tol):
                return False, f"AB != BA at s={s}"
            if not gram(shifted_family(fam)).is_identity(None if not exact else 0.0):
                return False, f"shift Gram not identity at s={s}"
            fs = [family_wavelet(fam, gm, sh) for gm in range(-2, 3) for sh in enumerate_shifts(s + 2)]
            if not gram(fs).is_identity(None if not exact else 0.0):
                return False, f"mixed-scale Gram not identity at s={s}"
            back = gamma_from_alphas(fam)
            if not all((x - y).is_zero(tol) for x, y in zip(back.entries, g.entries)):
                return False, f"gamma round trip failed at s={s}"
    return True, "s in {1,2,3}, exact and float"


def _closed_forms(rng):
    for _ in range(5):
        t = rng.uniform(-3.14, 3.14)
        fam = alphas_from_gamma(GammaVector.from_angles(1, (-t, t)))
        cs = real_family(1, t)
        if not all(a.close(b, 1e-12) for a, b in zip(fam.alphas, cs.alphas)):
            return False, "s=1 closed form"
    for kind in REAL_KINDS:
        fam = real_family(2, rng.uniform(-3, 3), kind)
        if not (is_real_family(fam) and fam.is_unitary()):
            return False, kind
    for s in (1, 2, 3, 4):
        fam = alphas_from_gamma(GammaVector.ones(s))
        if not (fam.alphas[0] == 1 and all(a.is_zero() for a in fam.alphas[1:]) and psi_s(fam) == psi0()):
            return False, f"identity at s={s}"
    return True, "real families and identity degenerations"


def _kozyrev(rng):
    for p in (2, 3, 5):
        for j in range(1, p):
            h = kozyrev_coeffs(p, j)
            tol = 0.0 if p == 2 else ACCEPT_TOL
            if not kozyrev_from_refinement(p, h).equals(kozyrev_theta(p, j), tol):
                return False, f"p={p} j={j}"
    return kozyrev_theta(2, 1) == psi0(), "p in {2,3,5}"


def _fourier(rng):
    omega = TestFunction.unit_ball(2)
    if fourier(omega) != omega:
        return False, "F[Omega]"
    for _ in range(10):
        f, g = random_function(rng), random_function(rng)
        if inner_product(fourier(f), fourier(g)) != inner_product(f, g):
            return False, "Plancherel"
        if fourier(fourier(f)) != reflect(f):
            return False, "double transform"
        l, n = constancy_and_support(f.normalize())
        l2, n2 = constancy_and_support(fourier(f))
        if l2 < -n or n2 > -l:
            return False, "support/constancy swap"
    return True, "Omega, Plancherel, reflection, support swap"


def _expansion(rng):
    for _ in range(10):
        f = random_lizorkin(rng)
        if not parseval_report(f, expand(f)).ok():
            return False, "Parseval"
    return True, "10 random functions in D^-3_2"


def _symmetry(rng):
    phi, psi = refinable_phi(2), psi0()
    for _ in range(10):
        xi = random_unit(rng)
        if affine_pullback(phi, 0, -xi) != phi or affine_pullback(psi, 0, -xi) != -psi:
            return False, f"xi={xi}"
    return True, "10 random unit shifts"


def _negative_control(rng):
    r = Scalar.sqrt_prime_power(2, -1)
    fam = WaveletFamily(1, (r, r * Scalar.root_of_unity(1, 4)))
    try:
        gamma_from_alphas(fam)
        return False, "accepted a non-unitary family"
    except UnitarityError:
        pass
    return not gram(shifted_family(fam)).exact_identity, "alpha = (1/sqrt2, i/sqrt2) rejected"


SUITES = {
    "refinement": _refinement,
    "haar_gram": _haar_gram,
    "families": _families,
    "closed_forms": _closed_forms,
    "kozyrev": _kozyrev,
    "fourier": _fourier,
    "expansion": _expansion,
    "symmetry": _symmetry,
    "negative_control": _negative_control,
}


def run_selfcheck(seed: int = 0, suites=None, timings: bool = False) -> dict:
    """Run each suite with its own ``Random(seed)``; returns a JSON-ready summary."""
    results = {}
    for name, fn in SUITES.items():
        if suites and name not in suites:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn(random.Random(f"{seed}:{name}"))
        except Exception as exc:  # a crash is a failed suite, not a crashed run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        entry = {"passed": bool(ok), "detail": detail}
        if timings:
            entry["seconds"] = round(time.perf_counter() - start, 3)
        results[name] = entry
    return {"seed": seed, "passed": all(r["passed"] for r in results.values()), "suites": results}


__all__ = ["SUITES", "run_selfcheck"]
