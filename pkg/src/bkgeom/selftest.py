"""Deterministic self-test battery behind the `selftest` CLI command.

Runs a trimmed version of every acceptance check with a single seeded
generator and returns a report of named residual channels plus pass
flags at the acceptance thresholds.  Identical (seed, scale) inputs
produce identical reports, byte for byte once serialized.
"""

from __future__ import annotations

import numpy as np

from . import cone, curvature, grading, hermitian, orbits, sasaki, tower


def _classifier_channel(seed: int, per_profile: int, dims=(2, 3)) -> dict:
    expected = {
        "diagonal-imaginary": "1",
        "rank1": "2a",
        "jordan2": "2a",
        "jordan3": "3",
        "split-real": "4",
    }
    total = correct = invariant = conj_checks = 0
    for n in dims:
        space = hermitian.HermitianSpace(n)
        for profile, tag in expected.items():
            for k in range(per_profile):
                A = hermitian.random_su(seed + 1000 * n + k, space, profile)
                ot = orbits.classify(A)
                total += 1
                correct += int(ot.tag == tag)
                G = hermitian.group_conjugator(
                    np.random.default_rng(seed + 7000 + k), space)
                Ac = hermitian.su_element(
                    hermitian.su_project(G @ A.matrix @ np.linalg.inv(G), space), space)
                oc = orbits.classify(Ac)
                conj_checks += 1
                invariant += int((oc.tag, oc.epsilon) == (ot.tag, ot.epsilon))
            # the negated rank-one orbit is the other sign class
            if profile == "rank1":
                A = hermitian.random_su(seed + 1000 * n, space, profile)
                An = hermitian.su_element(-A.matrix, space)
                total += 1
                correct += int(orbits.classify(An).tag == "2b")
    return {
        "total": total,
        "correct": correct,
        "conjugation_checks": conj_checks,
        "conjugation_invariant": invariant,
        "pass": bool(correct == total and invariant == conj_checks),
    }


def _charpoly_channel(seed: int) -> dict:
    n = 2
    space = hermitian.HermitianSpace(n + 1)
    cp = grading.cp_generator(space)
    pc = orbits.char_poly(cp)
    target = np.poly(np.concatenate([
        np.full(n + 1, -1j / (2 * (n + 2))), [1j * (n + 1) / (2 * (n + 2))]]))
    cp_err = float(np.abs(pc.coefficients - target).max())

    sp3 = hermitian.HermitianSpace(3)
    A = hermitian.random_su(seed, sp3, "generic")
    G = hermitian.group_conjugator(np.random.default_rng(seed + 1), sp3)
    Ac = hermitian.su_element(
        hermitian.su_project(G @ A.matrix @ np.linalg.inv(G), sp3), sp3)
    ca = orbits.char_poly(A).coefficients
    cc = orbits.char_poly(Ac).coefficients
    inv_err = float(np.abs(ca - cc).max() / np.abs(ca).max())
    return {
        "cp_coefficient_error": cp_err,
        "conjugation_residual": inv_err,
        "pass": bool(cp_err <= 1e-12 and inv_err <= 1e-9),
    }


def _curvature_channel(seed: int, count: int) -> dict:
    rng = np.random.default_rng(seed)
    worst_sym = worst_fit = 0.0
    ranks_ok = True
    for n in (1, 2, 3):
        km = curvature.KaehlerModel(n)
        basis = curvature.unitary_algebra_basis(n)
        for _ in range(count):
            rho = sum(rng.standard_normal() * b for b in basis)
            R = curvature.curvature_from_rho(rho, km)
            worst_sym = max(worst_sym, max(R.symmetry_residuals(km).values()))
            fit, _ = curvature.fit_rho(R, km)
            worst_fit = max(worst_fit, float(np.abs(fit - rho).max()))
        rank, expect = curvature.rho_map_rank(km)
        ranks_ok = ranks_ok and rank == expect
    return {
        "max_symmetry_residual": worst_sym,
        "max_fit_error": worst_fit,
        "ranks_full": ranks_ok,
        "pass": bool(worst_sym <= 1e-10 and worst_fit <= 1e-9 and ranks_ok),
    }


def _directionflat_channel(seed: int, count: int) -> dict:
    rng = np.random.default_rng(seed)
    kernels = []
    for n in (1, 2, 3):
        km = curvature.KaehlerModel(n)
        for _ in range(count):
            X0 = rng.standard_normal(2 * n)
            rep = curvature.direction_flat_check(np.zeros((2 * n, 2 * n)), X0, km)
            kernels.append(rep.kernel_dimension)
    return {"max_kernel_dimension": max(kernels), "pass": bool(max(kernels) == 0)}


def _sasaki_channel(seed: int, fd_step: float) -> dict:
    rep = sasaki.cpn_pipeline(1, fd_step, seed=seed, samples=2)
    bad = sasaki.sasaki_residual(sasaki.hopf_sphere(3, 2.0),
                                 np.array([0.2, -0.1, 0.3]), fd_step)
    cone_e = sasaki.ellipsoid_chart(np.array([1.0, 1.3, 1.6, 0.8]))
    from .fdgeom import cone_metric_chart, riemann
    neg = float(np.abs(riemann(cone_metric_chart(cone_e),
                               np.array([0.2, -0.1, 0.3, 1.1]), fd_step)).max())
    d = rep.to_dict()
    d["radius2_identity_residual"] = bad.identity_residual
    d["ellipsoid_cone_curvature"] = neg
    d["pass"] = bool(
        max(rep.sasaki.max_residual(), rep.cone_flatness,
            rep.cone_relation_residual, rep.quotient_hs_spread) <= 1e-3
        and bad.identity_residual >= 0.1 and neg >= 0.1)
    return d


def _proposition_channel(seed: int, fd_step: float, samples: int) -> dict:
    reports = {}
    ok = True
    for name, model in [("cp", cone.cp_cone_model(2)),
                        ("random", cone.random_type1_cone_model(2, seed))]:
        rep = cone.verify_curvature_prop(model, samples, fd_step, seed=seed)
        reports[name + "_max_residual"] = rep.max_residual
        reports[name + "_control_ratio"] = rep.min_control_ratio
        ok = ok and rep.max_residual <= 1e-3 and rep.min_control_ratio >= 10.0
    reports["pass"] = bool(ok)
    return reports


def _tower_channel(seed: int, fd_step: float) -> dict:
    n = 2
    model = cone.cp_cone_model(n)
    lam0 = -1.0 / (2 * (n + 2))
    rep = tower.verify_tower_geodesic(model, lam0, samples=2, fd_step=fd_step, seed=seed)
    rand_rep = tower.verify_tower_geodesic(cone.random_type1_cone_model(2, seed + 3),
                                           0.3, samples=2, fd_step=fd_step, seed=seed)
    A = model.generator()
    D0 = tower.embed_generator(A, 0.0).matrix
    D1 = tower.embed_generator(A, 1.0).matrix
    Dh = tower.embed_generator(A, 0.5).matrix
    affinity = float(np.abs(0.5 * (D0 + D1) - Dh).max())
    out = {
        "cp_max_ii": rep.max_ii,
        "cp_min_control": rep.min_control,
        "random_max_ii": rand_rep.max_ii,
        "affinity_error": affinity,
        "isometry_residual": max(rep.max_isometry_residual,
                                 rand_rep.max_isometry_residual),
    }
    out["pass"] = bool(max(rep.max_ii, rand_rep.max_ii) <= 1e-3
                       and min(rep.min_control, rand_rep.min_control) >= 0.05
                       and affinity <= 1e-14)
    return out


def _duality_channel(seed: int, count: int) -> dict:
    rng = np.random.default_rng(seed)
    worst_t = worst_sq = 0.0
    untwisted = 0.0
    for _ in range(count):
        m = int(rng.integers(2, 4))
        a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        a = 0.5 * (a - a.conj().T)
        rep = tower.duality_action_check(a, samples=3, seed=seed, timesteps=16)
        worst_t = max(worst_t, rep.twisted_residual)
        worst_sq = max(worst_sq, rep.sq_equivariance)
        untwisted = max(untwisted, rep.untwisted_residual)
    return {
        "max_twisted_residual": worst_t,
        "max_untwisted_residual": untwisted,
        "max_square_equivariance": worst_sq,
        "pass": bool(worst_t <= 1e-6 and worst_sq <= 1e-10),
    }


def run_selftest(seed: int = 42, scale: int = 1, fd_step: float = 1e-4) -> dict:
    """Full battery; `scale` multiplies the per-channel sample counts."""
    report = {
        "seed": int(seed),
        "scale": int(scale),
        "fd_step": float(fd_step),
        "classifier": _classifier_channel(seed, 4 * scale),
        "charpoly": _charpoly_channel(seed),
        "curvature": _curvature_channel(seed, 3 * scale),
        "directionflat": _directionflat_channel(seed, 3 * scale),
        "sasaki": _sasaki_channel(seed, fd_step),
        "proposition": _proposition_channel(seed, fd_step, 2 * scale),
        "tower": _tower_channel(seed, fd_step),
        "duality": _duality_channel(seed, 2 * scale),
    }
    report["pass"] = bool(all(
        report[k]["pass"] for k in
        ("classifier", "charpoly", "curvature", "directionflat",
         "sasaki", "proposition", "tower", "duality")))
    return report
