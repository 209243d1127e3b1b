"""Algebraic Bochner-Kaehler curvature templates on R^(2n).

The flat Kaehler model identifies C^n with R^(2n) by stacking real parts
over imaginary parts, so J0 = [[0, -I], [I, 0]], g0 is the identity and
omega0(x, y) = g0(x, J0 y).

Two equivalent templates produce the admissible curvature tensors:

    R_h(X,Y)   = 2 omega(X,Y) h + X o (hY) - Y o (hX)
    R_rho(X,Y) = 2 g(X,JY) rho + 2 g(X,rho Y) J + (rho Y ^ JX)
                 - (rho X ^ JY) + (X ^ J rho Y) - (Y ^ J rho X)

with (X ^ Y)Z = g(X,Z)Y - g(Y,Z)X and the circle product

    (X o Y)Z = omega(X,Z)Y + omega(Y,Z)X + omega(JX,Z)JY
               + omega(JY,Z)JX + omega(JX,Y)JZ.

Whether the two agree exactly or up to a constant is measured by the test
suite rather than assumed (they agree exactly; see tests).  A metric is
Bochner-Kaehler iff its curvature lies in the image of rho |-> R_rho,
which `fit_rho` decides by least squares.

Tensors are stored dense as R[i,j,k,l] = g(R(e_i, e_j) e_k, e_l).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KaehlerModel:
    """Flat Kaehler structure on R^(2n): g0 = I, J0 standard, omega0 = g0(., J0 .)."""

    n: int

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def J(self) -> np.ndarray:
        n = self.n
        J = np.zeros((2 * n, 2 * n))
        J[:n, n:] = -np.eye(n)
        J[n:, :n] = np.eye(n)
        return J

    def omega(self, x, y) -> float:
        return float(np.dot(x, self.J @ y))


def is_unitary_algebra(h, model: KaehlerModel, tol: float = 1e-10) -> bool:
    """h in u(n): commutes with J0 and is g0-skew."""
    h = np.asarray(h, dtype=float)
    J = model.J
    s = max(1.0, float(np.linalg.norm(h)))
    return (np.linalg.norm(h @ J - J @ h) <= tol * s
            and np.linalg.norm(h + h.T) <= tol * s)


def unitary_algebra_basis(n: int) -> list[np.ndarray]:
    """Real basis of u(n) acting on R^(2n); dimension n^2.

    S + iT skew-hermitian (S real skew, T real symmetric) acts as
    [[S, -T], [T, S]] in the stacked identification.
    """
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            S = np.zeros((n, n))
            S[i, j], S[j, i] = 1.0, -1.0
            M = np.zeros((2 * n, 2 * n))
            M[:n, :n] = S
            M[n:, n:] = S
            out.append(M)
    for i in range(n):
        for j in range(i, n):
            T = np.zeros((n, n))
            T[i, j] = T[j, i] = 1.0
            M = np.zeros((2 * n, 2 * n))
            M[:n, n:] = -T
            M[n:, :n] = T
            out.append(M)
    return out


def complex_to_real_endo(C) -> np.ndarray:
    """Complex n x n matrix to its real 2n x 2n action in the stacked model."""
    C = np.atleast_2d(np.asarray(C, dtype=complex))
    A, B = C.real, C.imag
    return np.block([[A, -B], [B, A]])


def circle(X, Y, model: KaehlerModel) -> np.ndarray:
    """The u(n)-valued circle product as an endomorphism of R^(2n)."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    J = model.J
    JX, JY = J @ X, J @ Y
    # omega(A, Z) = (J^T A) . Z appears as a row covector
    def co(A):
        return J.T @ A
    M = (np.outer(Y, co(X)) + np.outer(X, co(Y))
         + np.outer(JY, co(JX)) + np.outer(JX, co(JY))
         + model.omega(JX, Y) * J)
    return M


@dataclass(frozen=True)
class CurvatureTensor:
    """Dense rank-4 tensor with Kaehler curvature symmetries."""

    n: int
    entries: np.ndarray  # shape (2n, 2n, 2n, 2n)

    @property
    def dim(self) -> int:
        return 2 * self.n

    def endo(self, X, Y) -> np.ndarray:
        """R(X, Y) as an endomorphism (returns the matrix acting on Z)."""
        m = np.einsum("ijkl,i,j->kl", self.entries, X, Y)
        return m.T  # entries are g(R(X,Y)e_k, e_l); action matrix is transpose

    def sectional(self, X, Y) -> float:
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        num = np.einsum("ijkl,i,j,k,l->", self.entries, X, Y, Y, X)
        den = (X @ X) * (Y @ Y) - (X @ Y) ** 2
        if den <= 1e-14 * max(1.0, X @ X) * max(1.0, Y @ Y):
            raise ValueError("degenerate plane")
        return float(num / den)

    def holomorphic_sectional(self, X, model: KaehlerModel) -> float:
        return self.sectional(X, model.J @ np.asarray(X, dtype=float))

    def symmetry_residuals(self, model: KaehlerModel) -> dict[str, float]:
        R = self.entries
        J = model.J
        rj = np.einsum("ia,jb,abkl->ijkl", J, J, R)
        return {
            "antisym_first": float(np.abs(R + np.swapaxes(R, 0, 1)).max()),
            "antisym_last": float(np.abs(R + np.swapaxes(R, 2, 3)).max()),
            "pair_symmetry": float(np.abs(R - np.transpose(R, (2, 3, 0, 1))).max()),
            "bianchi": float(np.abs(R + np.transpose(R, (1, 2, 0, 3))
                                    + np.transpose(R, (2, 0, 1, 3))).max()),
            "j_invariance": float(np.abs(rj - R).max()),
        }


def _tensor_from_pair_endos(model: KaehlerModel, endo_of_pair) -> CurvatureTensor:
    d = model.dim
    R = np.zeros((d, d, d, d))
    eye = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            E = endo_of_pair(eye[i], eye[j])
            R[i, j] = E.T  # [k,l] = g(E e_k, e_l) = E[l,k]
            R[j, i] = -E.T
    return CurvatureTensor(model.n, R)


def curvature_from_h(h, model: KaehlerModel, tol: float = 1e-10) -> CurvatureTensor:
    """Template R_h built from the circle product; rejects h outside u(n)."""
    h = np.asarray(h, dtype=float)
    if not is_unitary_algebra(h, model, tol):
        raise ValueError("h is not in u(n)")

    def endo(X, Y):
        return (2.0 * model.omega(X, Y) * h
                + circle(X, h @ Y, model) - circle(Y, h @ X, model))

    return _tensor_from_pair_endos(model, endo)


def rho_template_endo(rho, X, Y, model: KaehlerModel) -> np.ndarray:
    """R_rho(X, Y) as an endomorphism, straight from the template."""
    rho = np.asarray(rho, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    J = model.J

    def wedge(a, b):
        return np.outer(b, a) - np.outer(a, b)

    JX, JY = J @ X, J @ Y
    rX, rY = rho @ X, rho @ Y
    return (2.0 * float(X @ JY) * rho + 2.0 * float(X @ rY) * J
            + wedge(rY, JX) - wedge(rX, JY)
            + wedge(X, J @ rY) - wedge(Y, J @ rX))


def curvature_from_rho(rho, model: KaehlerModel, tol: float = 1e-10) -> CurvatureTensor:
    """Template R_rho (the defining Bochner-Kaehler form); rejects rho outside u(n)."""
    rho = np.asarray(rho, dtype=float)
    if not is_unitary_algebra(rho, model, tol):
        raise ValueError("rho is not in u(n)")
    return _tensor_from_pair_endos(model, lambda X, Y: rho_template_endo(rho, X, Y, model))


def _design_matrix(model: KaehlerModel) -> tuple[np.ndarray, list[np.ndarray]]:
    basis = unitary_algebra_basis(model.n)
    cols = [curvature_from_rho(b, model).entries.ravel() for b in basis]
    return np.array(cols).T, basis


def fit_rho(R: CurvatureTensor, model: KaehlerModel | None = None):
    """Least-squares inverse of rho |-> R_rho.

    Returns (rho, residual): rho minimizing ||R - R_rho||_F and the attained
    Frobenius residual.  The normal equations are strictly convex (the map
    is injective; see `rho_map_rank`), so the minimizer is unique.
    """
    model = model or KaehlerModel(R.n)
    A, basis = _design_matrix(model)
    coef, _, rank, _ = np.linalg.lstsq(A, R.entries.ravel(), rcond=None)
    if rank < len(basis):
        raise np.linalg.LinAlgError("curvature template family is rank-deficient")
    rho = sum(c * b for c, b in zip(coef, basis))
    resid = float(np.linalg.norm(A @ coef - R.entries.ravel()))
    return rho, resid


def rho_map_rank(model: KaehlerModel, rtol: float = 1e-8) -> tuple[int, int]:
    """(numerical rank, expected rank n^2) of the linear map rho -> R_rho."""
    A, basis = _design_matrix(model)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > rtol * s[0]))
    return rank, len(basis)


@dataclass(frozen=True)
class DirectionFlatReport:
    """Mechanization of: R(X0, JX0) = 0 for one direction forces flatness."""

    direction_norm: float      # ||R_rho(X0, JX0)||
    rho_norm: float
    kernel_dimension: int      # of rho |-> R_rho(X0, JX0); 0 forces global flatness
    hypothesis_holds: bool
    conclusion_flat: bool


def direction_flat_check(rho, X0, model: KaehlerModel,
                         tol: float = 1e-10) -> DirectionFlatReport:
    """Evaluate R_rho(X0, JX0) and the kernel of the direction-evaluation map.

    The kernel dimension is computed from the matrix whose columns are the
    direction evaluations of a u(n) basis; full column rank means the only
    rho with R_rho(X0, JX0) = 0 is rho = 0, i.e. the curvature vanishes
    identically whenever it vanishes on one complex direction.
    """
    rho = np.asarray(rho, dtype=float)
    if not is_unitary_algebra(rho, model, tol=1e-8):
        raise ValueError("rho is not in u(n)")
    X0 = np.asarray(X0, dtype=float)
    X0 = X0 / np.linalg.norm(X0)
    E = rho_template_endo(rho, X0, model.J @ X0, model)
    basis = unitary_algebra_basis(model.n)
    cols = np.array([
        rho_template_endo(b, X0, model.J @ X0, model).ravel() for b in basis]).T
    s = np.linalg.svd(cols, compute_uv=False)
    kernel_dim = len(basis) - int(np.sum(s > 1e-8 * s[0]))
    dn = float(np.linalg.norm(E))
    rn = float(np.linalg.norm(np.asarray(rho, dtype=float)))
    holds = dn <= tol * max(1.0, rn)
    return DirectionFlatReport(dn, rn, kernel_dim, holds, holds and kernel_dim == 0)
