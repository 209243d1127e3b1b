"""The su(n,1) cone geometry: sections, contact frames and quotient curvature.

The adjoint cone of a maximal root element is modeled as C^n - 0 via the
S^1-normalized null-vector representative (x, ||x||); its projectivization
is S^(2n-1).  A diagonal generator diag(i lam_1, ..., i lam_n, -i sigma)
acts on the cone through the matrix

    act = diag(i (lam_j + sigma)),    sigma = sum lam_j,

and cuts out the section

    Sigma = { x : sum_j (lam_j + sigma) |x_j|^2 = s },   s = +-1.

Both quadric levels s = +1 and s = -1 are supported via `sigma_sign`;
the equal-coefficient projective-space models only have solutions on the
s = -1 branch, and the test suite records that this is the branch
reproducing their geometry.  All geometric formulas below use the action
matrix `act` (the trace-twisted generator), the reading under which the
eta-correction vanishes on the projective-space model:

    J_M(X)     = JX - (X, act p) p - ((X,p)/|p|^2) Jp
    g_D(X, Y)  = (X, Y) - (X,p)(Y,p)/|p|^2
    eta        = act Jp - |act p|^2 p
    rho(X)     = act X + (X, xi0) eta + (X, act^2 Jp) p,   xi0 = act p

Quotient charts: the local slice through p is the affine span of a contact
frame, renormalized radially onto Sigma; slice tangents are projected onto
the contact distribution along xi0 and paired with g_D.  The curvature of
that chart metric is compared against the template

    R approx QUOTIENT_TEMPLATE_SCALE * R_(rho/2 + |act p|^2 J / 4)

where QUOTIENT_TEMPLATE_SCALE = -2 is a single measured global
normalization constant (model- and point-independent; see tests and the
negative control in `verify_curvature_prop`).

Real coordinates stack Re over Im, matching the curvature module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import KaehlerModel, curvature_from_rho
from .fdgeom import ChartMetric, riemann
from .hermitian import HermitianSpace, SuElement, su_element

# global normalization between the finite-difference quotient curvature and
# the rho-map template; measured once, asserted model-independent by tests
QUOTIENT_TEMPLATE_SCALE = -2.0

TRANSVERSALITY_THRESHOLD = 1e-6


class EmptySectionError(ValueError):
    """The section quadric has no solutions for the chosen sign."""


class TangencyError(RuntimeError):
    """The symmetry direction is not transversal to the contact distribution."""


class ChartFailureError(RuntimeError):
    """The local quotient slice degenerated."""


def to_real(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag])


def to_complex(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = v.size // 2
    return v[:n] + 1j * v[n:]


def flat_inner(x, y) -> float:
    """g(x, y) = Re <x, y>, the flat Kaehler metric on C^n."""
    return float(np.vdot(y, x).real)


@dataclass(frozen=True)
class ConeModel:
    """Diagonal type-1 generator data for the cone C^n - 0."""

    lambdas: np.ndarray
    sigma_sign: int = 1          # +1: quadric = +1 (as displayed); -1: flipped

    def __post_init__(self):
        lam = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        object.__setattr__(self, "lambdas", lam)
        if self.sigma_sign not in (1, -1):
            raise ValueError("sigma_sign must be +-1")

    @property
    def n(self) -> int:
        return self.lambdas.size

    @property
    def sigma(self) -> float:
        return float(self.lambdas.sum())

    @property
    def action_coefficients(self) -> np.ndarray:
        """alpha_j = lam_j + sigma; the action is x_j -> i alpha_j x_j."""
        return self.lambdas + self.sigma

    @property
    def target(self) -> float:
        return float(self.sigma_sign)

    def coherent(self) -> "ConeModel":
        """The time direction in which the section formulas cohere.

        The J_M / eta / rho formulas are mutually consistent exactly when
        (p, act Jp) = +1 on the section, i.e. on the quadric = -1 branch.
        A quadric = +1 model describes the same section with the reversed
        flow, so its geometry is computed through the negated generator.
        (Equal-coefficient models land on the -1 branch directly, which
        is where their projective-space geometry lives.)
        """
        if self.sigma_sign == -1:
            return self
        return ConeModel(-self.lambdas, sigma_sign=-1)

    def generator(self, space: HermitianSpace | None = None) -> SuElement:
        space = space or HermitianSpace(self.n)
        diag = np.concatenate([1j * self.lambdas, [-1j * self.sigma]])
        return su_element(np.diag(diag), space)

    def act(self, x) -> np.ndarray:
        return 1j * self.action_coefficients * np.asarray(x, dtype=complex)

    def act2(self, x) -> np.ndarray:
        return -(self.action_coefficients ** 2) * np.asarray(x, dtype=complex)

    def act_norm2(self, x) -> float:
        return float(np.sum(self.action_coefficients ** 2 * np.abs(x) ** 2))

    def quadric(self, x) -> float:
        return float(np.sum(self.action_coefficients * np.abs(np.asarray(x)) ** 2))


def cp_cone_model(n: int) -> ConeModel:
    """Equal-coefficient model whose quotient is projective (n-1)-space.

    lam_j = -1/(2(n+1)) gives action -(i/2) x and the flipped-sign section,
    a round sphere of radius sqrt(2).
    """
    return ConeModel(np.full(n, -1.0 / (2.0 * (n + 1))), sigma_sign=-1)


def random_type1_cone_model(n: int, seed: int) -> ConeModel:
    """A generic well-conditioned diagonal model with a nonempty section."""
    rng = np.random.default_rng(seed)
    lam = rng.uniform(0.25, 1.0, n)
    return ConeModel(lam, sigma_sign=1)


# -- cone representatives ------------------------------------------------------


def cone_rep(y, space: HermitianSpace, tol: float = 1e-10) -> np.ndarray:
    """S^1-orbit representative of a null vector: last coordinate real positive.

    Returns the C^n truncation x with lift (x, ||x||).
    """
    y = np.asarray(y, dtype=complex)
    hy = space.herm(y, y)
    if abs(hy) > tol * max(1.0, float(np.vdot(y, y).real)):
        raise ValueError("cone representatives require a null vector")
    last = y[-1]
    if abs(last) < tol:
        raise ValueError("null vector with vanishing last coordinate")
    return (y / (last / abs(last)))[:-1]


def cone_lift(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return np.concatenate([x, [np.linalg.norm(x)]])


def sphere_proj(x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ValueError("cannot project the zero vector")
    return x / nx


def group_action(G, x, tol: float = 1e-9) -> np.ndarray:
    """U(n) action on the cone: x -> det(G) G x."""
    G = np.asarray(G, dtype=complex)
    resid = np.linalg.norm(G.conj().T @ G - np.eye(G.shape[0]))
    if resid > tol * max(1.0, np.linalg.norm(G)):
        raise ValueError(f"matrix is not unitary (residual {resid:.3e})")
    return np.linalg.det(G) * (G @ np.asarray(x, dtype=complex))


def algebra_action(a, x) -> np.ndarray:
    """u(n) action on the cone tangent: a . x = (tr(a) I + a) x."""
    a = np.asarray(a, dtype=complex)
    x = np.asarray(x, dtype=complex)
    return np.trace(a) * x + a @ x


def contact_form(X, p) -> float:
    """lambda(X) at p: g(X, Jp); equals the quadric value on xi0."""
    return flat_inner(np.asarray(X, dtype=complex), 1j * np.asarray(p, dtype=complex))


# -- the section Sigma ---------------------------------------------------------


def sigma_membership(p, model: ConeModel) -> float:
    """Signed residual of the section equation at p."""
    return model.quadric(p) - model.target


def sigma_sample(model: ConeModel, seed: int, count: int = 1) -> list[np.ndarray]:
    """Deterministic points on Sigma by radial scaling of random directions."""
    alpha = model.action_coefficients
    if model.target > 0 and np.all(alpha <= 0):
        raise EmptySectionError("all action coefficients nonpositive; quadric empty")
    if model.target < 0 and np.all(alpha >= 0):
        raise EmptySectionError("all action coefficients nonnegative; quadric empty")
    rng = np.random.default_rng(seed)
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 100000:
            raise EmptySectionError("rejection sampling failed to hit the quadric")
        v = rng.standard_normal(model.n) + 1j * rng.standard_normal(model.n)
        q = model.quadric(v)
        if q * model.target <= 1e-9:
            continue
        out.append(v * np.sqrt(model.target / q))
    return out


# -- pointwise geometry on Sigma -------------------------------------------------


def j_m(p, X, model: ConeModel) -> np.ndarray:
    """The lifted complex structure on the contact distribution of Sigma."""
    model = model.coherent()
    p = np.asarray(p, dtype=complex)
    X = np.asarray(X, dtype=complex)
    ap = model.act(p)
    p2 = float(np.vdot(p, p).real)
    return 1j * X - flat_inner(X, ap) * p - (flat_inner(X, p) / p2) * (1j * p)


def induced_metric(p, X, Y, model: ConeModel) -> float:
    """Degenerate metric on Sigma; positive definite on the contact distribution."""
    p = np.asarray(p, dtype=complex)
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    p2 = float(np.vdot(p, p).real)
    return flat_inner(X, Y) - flat_inner(X, p) * flat_inner(Y, p) / p2


def eta_vector(p, model: ConeModel) -> np.ndarray:
    model = model.coherent()
    p = np.asarray(p, dtype=complex)
    return model.act(1j * p) - model.act_norm2(p) * p


def rho_map(p, X, model: ConeModel) -> np.ndarray:
    """The curvature-generating endomorphism of the contact distribution."""
    model = model.coherent()
    p = np.asarray(p, dtype=complex)
    X = np.asarray(X, dtype=complex)
    xi0 = model.act(p)
    eta = eta_vector(p, model)
    return (model.act(X) + flat_inner(X, xi0) * eta
            + flat_inner(X, model.act2(1j * p)) * p)


@dataclass(frozen=True)
class DistributionFrame:
    """J_M-adapted orthonormal frame of the contact distribution at p.

    vectors holds 2n-2 complex columns ordered (v_1..v_(n-1),
    J_M v_1..J_M v_(n-1)), orthonormal for the induced metric, so the
    frame matrix of J_M is the standard block J0 and the frame metric is
    the identity.
    """

    point: np.ndarray
    vectors: np.ndarray   # complex, shape (n, 2n-2)
    model: ConeModel

    @property
    def count(self) -> int:
        return self.vectors.shape[1]

    def metric_gram(self) -> np.ndarray:
        k = self.count
        G = np.empty((k, k))
        for a in range(k):
            for b in range(k):
                G[a, b] = induced_metric(self.point, self.vectors[:, a],
                                         self.vectors[:, b], self.model)
        return G

    def matrix_of(self, endo) -> np.ndarray:
        """Frame matrix of a D -> D map given as a callable on complex vectors."""
        k = self.count
        M = np.empty((k, k))
        for b in range(k):
            w = endo(self.vectors[:, b])
            for a in range(k):
                M[a, b] = induced_metric(self.point, w, self.vectors[:, a], self.model)
        return M


def _distribution_projector(p, model: ConeModel):
    """Flat-orthonormalized normals of the two contact constraints at p."""
    normals = [1j * np.asarray(p, dtype=complex), 1j * model.act(p)]
    ortho = []
    for m in normals:
        w = m.copy()
        for o in ortho:
            w = w - flat_inner(w, o) * o
        nw = np.sqrt(flat_inner(w, w))
        if nw < 1e-12:
            raise TangencyError("contact constraints are degenerate at p")
        ortho.append(w / nw)

    def project(X):
        X = np.asarray(X, dtype=complex)
        for o in ortho:
            X = X - flat_inner(X, o) * o
        return X

    return project


def contact_frame(p, model: ConeModel, preset=None,
                  tol: float = 1e-9) -> DistributionFrame:
    """Build a J_M-adapted induced-metric-orthonormal frame of D_p.

    `preset` may hold already-built frame columns (ordered as in
    DistributionFrame) to be preserved exactly, e.g. an embedded frame of
    a smaller model; the remaining directions are filled from the standard
    basis.  Raises TangencyError when xi0 fails the transversality
    threshold.
    """
    model = model.coherent()
    p = np.asarray(p, dtype=complex)
    n = model.n
    if n < 2:
        raise ChartFailureError("the quotient geometry needs n >= 2")
    lam_xi = contact_form(model.act(p), p)
    if abs(lam_xi) < TRANSVERSALITY_THRESHOLD:
        raise TangencyError(f"lambda(xi0) = {lam_xi:.3e} below threshold")
    project = _distribution_projector(p, model)

    held: list[np.ndarray] = []
    jheld: list[np.ndarray] = []
    if preset is not None:
        k = preset.shape[1] // 2
        held = [preset[:, a] for a in range(k)]
        jheld = [preset[:, k + a] for a in range(k)]

    def deflate(w):
        for u in held + jheld:
            w = w - induced_metric(p, w, u, model) * u
        return w

    cands = [np.eye(n, dtype=complex)[:, j] * s for j in range(n) for s in (1.0, 1.0j)]
    ci = 0
    while len(held) < n - 1:
        if ci >= len(cands):
            raise ChartFailureError("could not complete the contact frame")
        w = deflate(project(cands[ci]))
        ci += 1
        nw = induced_metric(p, w, w, model)
        if nw < 0.05:
            continue
        v = w / np.sqrt(nw)
        jv = deflate(j_m(p, v, model))
        njv = induced_metric(p, jv, jv, model)
        if njv < 0.05:
            raise ChartFailureError("J_M image collapsed during frame construction")
        held.append(v)
        jheld.append(jv / np.sqrt(njv))

    frame = DistributionFrame(p, np.array(held + jheld).T, model)
    G = frame.metric_gram()
    JF = frame.matrix_of(lambda X: j_m(p, X, model))
    J0 = KaehlerModel(n - 1).J
    if (np.abs(G - np.eye(frame.count)).max() > tol
            or np.abs(JF - J0).max() > 1e-6):
        raise ChartFailureError("frame failed orthonormality or J-adaptation checks")
    return frame


# -- quotient charts and the curvature proposition -----------------------------


def quotient_chart(frame: DistributionFrame) -> ChartMetric:
    """Local chart of Sigma / flow with the submersion metric.

    The slice is the radial renormalization of the affine span of the
    frame; slice tangents are pushed into the contact distribution along
    xi0 before pairing with the induced metric.
    """
    model = frame.model
    p0 = frame.point
    F = frame.vectors
    k = frame.count

    def ev(s):
        psi = p0 + F @ s.astype(complex)
        q_val = model.quadric(psi)
        ratio = model.target / q_val if q_val != 0.0 else -1.0
        if ratio <= 0.0:
            raise ChartFailureError("slice left the section's radial domain")
        t = np.sqrt(ratio)
        q = t * psi
        grad = model.action_coefficients * psi   # quadric gradient direction
        xi0 = model.act(q)
        lam_xi = contact_form(xi0, q)
        cols = []
        for a in range(k):
            e = F[:, a]
            dt = -t * flat_inner(e, grad) / q_val
            V = t * e + dt * psi
            c = contact_form(V, q) / lam_xi
            cols.append(V - c * xi0)
        g = np.empty((k, k))
        for a in range(k):
            for b in range(a, k):
                g[a, b] = g[b, a] = induced_metric(q, cols[a], cols[b], model)
        return g

    return ChartMetric(k, ev)


def rho_frame_matrix(frame: DistributionFrame) -> np.ndarray:
    p, model = frame.point, frame.model
    return frame.matrix_of(lambda X: rho_map(p, X, model))


def curvature_template_at(frame: DistributionFrame,
                          half_rho: bool = True) -> np.ndarray:
    """Template tensor scale * R_(rho/2 + |act p|^2 J/4) in frame coordinates.

    half_rho=False is the deliberately wrong variant (rho instead of
    rho/2) used as a negative control.
    """
    model = frame.model
    m = model.n - 1
    km = KaehlerModel(m)
    rho_m = rho_frame_matrix(frame)
    rho_m = 0.5 * (rho_m - rho_m.T)        # symmetrize away roundoff
    coeff = 0.5 if half_rho else 1.0
    total = coeff * rho_m + 0.25 * model.act_norm2(frame.point) * km.J
    return QUOTIENT_TEMPLATE_SCALE * curvature_from_rho(total, km, tol=1e-6).entries


@dataclass(frozen=True)
class PropositionPointReport:
    point: np.ndarray
    residual: float
    control_residual: float
    fd_scale: float
    frame_conditioning: float   # deviation of the frame Gram from identity


@dataclass(frozen=True)
class PropositionReport:
    model: ConeModel
    fd_step: float
    points: tuple[PropositionPointReport, ...]

    @property
    def max_residual(self) -> float:
        return max(r.residual for r in self.points)

    @property
    def min_control_ratio(self) -> float:
        return min(r.control_residual / max(r.residual, 1e-300) for r in self.points)

    def to_dict(self) -> dict:
        return {
            "fd_step": self.fd_step,
            "max_residual": self.max_residual,
            "min_control_ratio": self.min_control_ratio,
            "points": [
                {"residual": r.residual, "control_residual": r.control_residual,
                 "fd_scale": r.fd_scale, "frame_conditioning": r.frame_conditioning}
                for r in self.points
            ],
        }


def verify_curvature_prop(model: ConeModel, sample_points=6, fd_step: float = 1e-4,
                          seed: int = 0) -> PropositionReport:
    """Finite-difference curvature of the quotient chart vs the rho template.

    sample_points may be an integer (seeded sampling on Sigma) or an
    explicit list of section points.  Each report entry carries the
    relative residual of the matched template and of the half-coefficient
    negative control.
    """
    if isinstance(sample_points, int):
        pts = sigma_sample(model, seed, sample_points)
    else:
        pts = [np.asarray(q, dtype=complex) for q in sample_points]
    reports = []
    for p in pts:
        frame = contact_frame(p, model)
        chart = quotient_chart(frame)
        R_fd = riemann(chart, np.zeros(frame.count), fd_step)
        scale = float(np.abs(R_fd).max())
        R_t = curvature_template_at(frame, half_rho=True)
        R_bad = curvature_template_at(frame, half_rho=False)
        resid = float(np.abs(R_fd - R_t).max() / max(scale, 1e-300))
        control = float(np.abs(R_fd - R_bad).max() / max(scale, 1e-300))
        cond = float(np.abs(frame.metric_gram() - np.eye(frame.count)).max())
        reports.append(PropositionPointReport(p, resid, control, scale, cond))
    return PropositionReport(model, fd_step, tuple(reports))
