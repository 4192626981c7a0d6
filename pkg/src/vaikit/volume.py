"""Monte Carlo volume estimation on concrete homogeneous space models.

Each model packages a space Z with an invariant measure, a base point,
a curve t -> a_t z0, an exact membership test "is w reachable from z by
a group element in the ball B_r", and an adaptive sampling box.  The
ball is B_r = {g in SL(2,R): ||g - 1||_F <= r}; for determinant-one
2x2 matrices ||g^{-1} - 1||_F = ||g - 1||_F, so B_r is automatically
inverse-closed and membership is symmetric in (z, w).

Estimation is hit-or-miss: sample the box uniformly, weight hits by the
invariant density of the chart, multiply by box measure.  Sampling is
batched with substreams keyed by (seed, point index, batch index), so
results are bit-identical for a fixed seed at any thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import EmptyBox, InputError, TooFewPoints

BATCH = 16384


def _thread_count() -> int:
    raw = os.environ.get("VAI_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"VAI_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _quartic_roots(a4, a3, a2, a1, a0):
    """Real roots of batched quartics via companion eigenvalues.

    Returns an (N, 4) array with non-real or absent roots set to nan.
    Coefficients are normalized per sample; a vanishing leading
    coefficient is nudged, which sends the lost root to a huge value
    that downstream evaluation treats like the point at infinity.
    """
    stack = np.stack([a4, a3, a2, a1, a0])
    scale = np.abs(stack).max(axis=0)
    scale = np.where(scale > 0.0, scale, 1.0)
    a4, a3, a2, a1, a0 = (c / scale for c in stack)
    lead = np.where(np.abs(a4) < 1e-13, np.where(a4 >= 0, 1e-13, -1e-13), a4)
    b3, b2, b1, b0 = a3 / lead, a2 / lead, a1 / lead, a0 / lead
    n = len(b3)
    comp = np.zeros((n, 4, 4))
    comp[:, 0, 0] = -b3
    comp[:, 0, 1] = -b2
    comp[:, 0, 2] = -b1
    comp[:, 0, 3] = -b0
    comp[:, 1, 0] = 1.0
    comp[:, 2, 1] = 1.0
    comp[:, 3, 2] = 1.0
    roots = np.linalg.eigvals(comp)
    real = np.abs(roots.imag) <= 1e-8 * (1.0 + np.abs(roots.real))
    return np.where(real, roots.real, np.nan)


class SpaceModel:
    """Shared plumbing; concrete models fill in the geometry."""

    name = "abstract"
    chart_dim = 0

    def base_point(self):
        raise NotImplementedError

    def curve(self, t: float):
        raise NotImplementedError

    def chart_box(self, z, radius: float):
        raise NotImplementedError

    def from_chart(self, coords: np.ndarray):
        return coords

    def density_chart(self, coords: np.ndarray) -> np.ndarray:
        return np.ones(len(coords))

    def membership_chart(self, z, coords: np.ndarray, radius: float) -> np.ndarray:
        raise NotImplementedError

    def membership(self, z, w, radius: float) -> bool:
        raise NotImplementedError

    def apply(self, g: np.ndarray, point):
        raise NotImplementedError

    def __repr__(self):
        return f"SpaceModel({self.name})"


# ---------------------------------------------------------------------------
# R^2 minus the origin: the model of SL(2,R)/N


class PlaneModel(SpaceModel):
    """Z = R^2 \\ {0} with the linear SL(2,R) action and Lebesgue measure.

    Membership has a closed form: solutions of g z = w in SL(2,R) form
    the affine line g(s) = g0 + s * w (z-perp)^T, and ||g(s) - 1||_F^2
    is an explicit quadratic in s.
    """

    name = "sl2-mod-n"
    chart_dim = 2

    def base_point(self):
        return np.array([1.0, 0.0])

    def curve(self, t: float):
        return np.array([math.exp(t), 0.0])

    def chart_box(self, z, radius: float):
        z = np.asarray(z, dtype=float)
        nz = float(np.hypot(z[0], z[1]))
        half = 2.0 * radius * nz
        if not (half > 0.0 and np.isfinite(half)):
            raise EmptyBox("point too close to the deleted origin")
        return z - half, z + half

    def membership_chart(self, z, coords, radius):
        z = np.asarray(z, dtype=float)
        w1, w2 = coords[:, 0], coords[:, 1]
        z1, z2 = float(z[0]), float(z[1])
        nz2 = z1 * z1 + z2 * z2
        nw2 = w1 * w1 + w2 * w2
        ok = nw2 > 0.0
        lam = np.where(ok, nz2 / np.where(ok, nw2, 1.0), 0.0)
        # g0 = [w | lam*w_perp] [z | z_perp]^{-1}, the det-1 particular solution
        a = (z1 * w1 + z2 * lam * w2) / nz2
        b = (z2 * w1 - z1 * lam * w2) / nz2
        c = (z1 * w2 - z2 * lam * w1) / nz2
        d = (z2 * w2 + z1 * lam * w1) / nz2
        # direction D = w (z_perp)^T; f(s) = ||G + s D||^2 with G = g0 - 1
        ga, gb, gc, gd = a - 1.0, b, c, d - 1.0
        da, db = -z2 * w1, z1 * w1
        dc, dd = -z2 * w2, z1 * w2
        g_dot_d = ga * da + gb * db + gc * dc + gd * dd
        d_norm2 = np.where(ok, nw2 * nz2, 1.0)
        g_norm2 = ga * ga + gb * gb + gc * gc + gd * gd
        fmin = g_norm2 - g_dot_d * g_dot_d / d_norm2
        return ok & (fmin <= radius * radius)

    def membership(self, z, w, radius):
        return bool(self.membership_chart(z, np.asarray(w, dtype=float)[None, :],
                                          radius)[0])

    def apply(self, g, point):
        return np.asarray(g, dtype=float) @ np.asarray(point, dtype=float)


# ---------------------------------------------------------------------------
# unit-determinant positive matrices: the model of SL(2,R)/SO(2)


class SPD2Model(SpaceModel):
    """Z = {P symmetric positive definite, det P = 1}, action g.P = gPg^T.

    Chart (u, tau) = (P12, log P22) carries the invariant measure as the
    plain Lebesgue measure du dtau.  Membership reduces to minimizing
    ||q R(phi) p^{-1} - 1||_F^2 over the rotation angle, a trig
    polynomial with harmonics at phi and 2*phi (the second harmonic
    vanishes only at the identity base point).  Its critical points are
    the real roots of a quartic in tan(phi/2), so the global minimum is
    found exactly; grid search misses the razor-thin valleys that appear
    once the base point is strongly stretched.
    """

    name = "spd2"
    chart_dim = 2

    def base_point(self):
        return np.eye(2)

    def curve(self, t: float):
        return np.diag([math.exp(2.0 * t), math.exp(-2.0 * t)])

    @staticmethod
    def _sqrt_spd(p: np.ndarray) -> np.ndarray:
        # closed form for 2x2 SPD with det 1: sqrt(P) = (P + I)/sqrt(tr P + 2)
        return (p + np.eye(2)) / math.sqrt(p[0, 0] + p[1, 1] + 2.0)

    def to_chart(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return np.array([p[0, 1], math.log(p[1, 1])])

    def from_chart(self, coords):
        return coords

    def chart_box(self, z, radius: float):
        p = np.asarray(z, dtype=float)
        evals = np.linalg.eigvalsh(p)
        sig = math.sqrt(float(evals[-1]))
        lam_min = float(evals[0])
        if lam_min <= 0.0:
            raise EmptyBox("base point is not positive definite")
        sq11, sq22 = math.sqrt(p[0, 0]), math.sqrt(p[1, 1])
        # exact reachability bounds: w22 = ||L(e2+v)||^2 with ||v|| <= r,
        # w12 = (L(e1+v'), L(e2+v)); the linearized box misses the
        # quadratic term that dominates for stretched base points
        u_half = radius * sig * (sq11 + sq22 + radius * sig)
        w22_hi = (sq22 + radius * sig) ** 2
        w22_lo = lam_min * (1.0 - radius) ** 2
        if not (w22_lo > 0.0 and u_half > 0.0):
            raise EmptyBox("degenerate base point")
        lo = np.array([p[0, 1] - 2.0 * u_half, math.log(w22_lo)])
        hi = np.array([p[0, 1] + 2.0 * u_half, math.log(w22_hi)])
        return lo, hi

    def _min_distance(self, z, coords):
        p = np.asarray(z, dtype=float)
        p_inv = np.linalg.inv(self._sqrt_spd(p))
        big_p_inv = np.linalg.inv(p)
        beta = (big_p_inv[0, 0] + big_p_inv[1, 1]) / 2.0
        b1 = big_p_inv[0, 0] - beta
        b2 = big_p_inv[0, 1]

        u, tau = coords[:, 0], coords[:, 1]
        w22 = np.exp(tau)
        w11 = (1.0 + u * u) / w22
        alpha = (w11 + w22) / 2.0
        a1 = (w11 - w22) / 2.0
        a2 = u
        # q = sqrt(W) = (W + I)/sqrt(tr W + 2); C = p^{-1/2-inv} q
        s = np.sqrt(w11 + w22 + 2.0)
        q11, q12, q22 = (w11 + 1.0) / s, u / s, (w22 + 1.0) / s
        c11 = p_inv[0, 0] * q11 + p_inv[0, 1] * q12
        c12 = p_inv[0, 0] * q12 + p_inv[0, 1] * q22
        c21 = p_inv[1, 0] * q11 + p_inv[1, 1] * q12
        c22 = p_inv[1, 0] * q12 + p_inv[1, 1] * q22

        k0 = 2.0 * alpha * beta + 2.0
        p2 = 2.0 * (a1 * b1 + a2 * b2)
        q2 = 2.0 * (a2 * b1 - a1 * b2)
        p1 = -2.0 * (c11 + c22)
        q1 = -2.0 * (c12 - c21)

        # critical points: with t = tan(phi/2), f'(phi)(1+t^2)^2 is the
        # quartic below; phi = pi is the one point the substitution misses
        roots = _quartic_roots(2.0 * q2 - q1, 8.0 * p2 - 2.0 * p1,
                               -12.0 * q2, -8.0 * p2 - 2.0 * p1,
                               2.0 * q2 + q1)
        phi = 2.0 * np.arctan(np.where(np.isnan(roots), 0.0, roots))
        vals = (k0[:, None] + p2[:, None] * np.cos(2.0 * phi)
                + q2[:, None] * np.sin(2.0 * phi)
                + p1[:, None] * np.cos(phi) + q1[:, None] * np.sin(phi))
        vals = np.where(np.isnan(roots), np.inf, vals)
        at_pi = k0 + p2 - p1
        return np.minimum(vals.min(axis=1), at_pi)

    def membership_chart(self, z, coords, radius):
        return self._min_distance(z, coords) <= radius * radius

    def membership(self, z, w, radius):
        w = np.asarray(w, dtype=float)
        coords = np.array([[w[0, 1], math.log(w[1, 1])]])
        return bool(self.membership_chart(z, coords, radius)[0])

    def apply(self, g, point):
        g = np.asarray(g, dtype=float)
        return g @ np.asarray(point, dtype=float) @ g.T


# ---------------------------------------------------------------------------
# adjoint orbits in sl(2,R) ~ R^3, points (a, b, c) <-> [[a, b], [c, -a]]


def _orbit_matrix(point) -> np.ndarray:
    a, b, c = (float(x) for x in point)
    return np.array([[a, b], [c, -a]])


def _orbit_coords(m: np.ndarray):
    return np.array([m[0, 0], m[0, 1], m[1, 0]])


class ConeModel(SpaceModel):
    """The nilpotent adjoint orbit of E: {a^2 + bc = 0, (b, c) != (0, 0),
    b >= 0 >= c}, i.e. the image of R^2 \\ {0} under the equivariant
    double cover z -> z (z-perp)^T.  The orbit measure pulls back to
    half of Lebesgue measure; sampling one sheet of the cover around the
    lift of z with density 1 counts each orbit point exactly once.
    """

    name = "sl2-orbit-cone"
    chart_dim = 2
    _plane = PlaneModel()

    def base_point(self):
        return np.array([0.0, 1.0, 0.0])  # the matrix E

    def curve(self, t: float):
        return np.array([0.0, math.exp(2.0 * t), 0.0])

    @staticmethod
    def _lift(point) -> np.ndarray:
        a, b, c = (float(x) for x in point)
        if b >= -c:
            if b <= 0.0:
                raise EmptyBox("point is not on the punctured cone")
            z1 = math.sqrt(b)
            return np.array([z1, -a / z1])
        z2 = math.sqrt(-c)
        return np.array([-a / z2, z2])

    def chart_box(self, z, radius: float):
        return self._plane.chart_box(self._lift(z), radius)

    def membership_chart(self, z, coords, radius):
        lift = self._lift(z)
        return (self._plane.membership_chart(lift, coords, radius)
                | self._plane.membership_chart(lift, -coords, radius))

    def membership(self, z, w, radius):
        return bool(self.membership_chart(
            z, self._lift(w)[None, :], radius)[0])

    def apply(self, g, point):
        g = np.asarray(g, dtype=float)
        return _orbit_coords(g @ _orbit_matrix(point) @ np.linalg.inv(g))


class HyperboloidModel(SpaceModel):
    """The adjoint orbit of H: the one-sheeted quadric {a^2 + bc = 1},
    the model of SL(2,R)/SO(1,1).

    With beta = (b+c)/2 and delta = (b-c)/2 the quadric reads
    a^2 + beta^2 - delta^2 = 1; cylindrical coordinates (psi, delta),
    a = rho cos psi, beta = rho sin psi, rho = sqrt(1 + delta^2), give a
    global chart in which the Gelfand-Leray measure of a^2 + bc (i.e.
    da db dc / |grad|) is exactly dpsi ddelta.  Membership: one
    conjugator g0 is built from
    eigenvector matrices, the stabilizer is {+-exp(s X_z)}, and
    ||g0 exp(s X_z) - 1||_F^2 = P cosh 2s + Q sinh 2s + R -+ 2(D cosh s
    + E sinh s) is minimized over s on both sign components; with
    u = e^s the critical points are positive real roots of a quartic,
    so the global minimum is exact.
    """

    name = "sl2-orbit-hyperboloid"
    chart_dim = 2

    def base_point(self):
        return np.array([1.0, 0.0, 0.0])  # the matrix H

    def curve(self, t: float):
        # Ad(exp(t(E+F))) H = cosh(2t) H - sinh(2t) (E - F)
        return np.array([math.cosh(2.0 * t), -math.sinh(2.0 * t),
                         math.sinh(2.0 * t)])

    @staticmethod
    def _diagonalizer(point) -> np.ndarray:
        """p with point = p H p^{-1}, det p = 1 (scalar, exactish floats)."""
        a, b, c = (float(x) for x in point)
        if a >= 0.0:
            v_plus = np.array([1.0 + a, c])
            v_minus = np.array([b, -(1.0 + a)])
        else:
            v_plus = np.array([b, 1.0 - a])
            v_minus = np.array([1.0 - a, -c])
        p = np.column_stack([v_plus, v_minus])
        det = float(np.linalg.det(p))
        if det == 0.0:
            raise EmptyBox("point is not on the a > 0 sheet")
        if det < 0.0:
            p[:, 1] = -p[:, 1]
            det = -det
        return p / math.sqrt(det)

    @staticmethod
    def to_chart(point) -> np.ndarray:
        a, b, c = (float(x) for x in point)
        return np.array([math.atan2((b + c) / 2.0, a), (b - c) / 2.0])

    def chart_box(self, z, radius: float):
        a, b, c = (float(x) for x in z)
        beta = (b + c) / 2.0
        delta = (b - c) / 2.0
        rho2 = a * a + beta * beta
        # norms of the bracket rows u -> [u, X] measured in ||u||_F
        bd_a = math.sqrt(2.0 * beta * beta + 2.0 * delta * delta)
        bd_beta = math.sqrt(2.0 * delta * delta + 2.0 * a * a)
        bd_delta = math.sqrt(2.0 * beta * beta + 2.0 * a * a)
        half_psi = 2.0 * radius * (abs(a) * bd_beta + abs(beta) * bd_a) / rho2
        half_psi = min(half_psi, math.pi)
        half_delta = 2.0 * radius * bd_delta
        if not (half_psi > 0.0 and half_delta > 0.0
                and np.isfinite(half_delta)):
            raise EmptyBox("degenerate orbit point")
        psi = math.atan2(beta, a)
        lo = np.array([psi - half_psi, delta - half_delta])
        hi = np.array([psi + half_psi, delta + half_delta])
        return lo, hi

    def from_chart(self, coords):
        psi, delta = coords[:, 0], coords[:, 1]
        rho = np.sqrt(1.0 + delta * delta)
        a = rho * np.cos(psi)
        beta = rho * np.sin(psi)
        return np.column_stack([a, beta + delta, beta - delta])

    def density_chart(self, coords):
        return np.ones(len(coords))

    def membership_chart(self, z, coords, radius):
        return self._membership_points(z, self.from_chart(coords), radius)

    def _membership_points(self, z, points, radius):
        p_z = self._diagonalizer(z)
        p_z_inv = np.linalg.inv(p_z)
        x_z = _orbit_matrix(z)

        a, b, c = points[:, 0], points[:, 1], points[:, 2]
        # per-sample eigenvector matrix q with w = q H q^{-1}, det 1
        pos = a >= 0.0
        v1x = np.where(pos, 1.0 + a, b)
        v1y = np.where(pos, c, 1.0 - a)
        v2x = np.where(pos, b, 1.0 - a)
        v2y = np.where(pos, -(1.0 + a), -c)
        det = v1x * v2y - v1y * v2x
        flip = det < 0.0
        v2x = np.where(flip, -v2x, v2x)
        v2y = np.where(flip, -v2y, v2y)
        det = np.abs(det)
        good = det > 1e-300
        scale = 1.0 / np.sqrt(np.where(good, det, 1.0))
        v1x, v1y, v2x, v2y = (v * scale for v in (v1x, v1y, v2x, v2y))

        # g0 = q p_z^{-1}; G' = g0 X_z
        i11, i12, i21, i22 = p_z_inv.ravel()
        g11 = v1x * i11 + v2x * i21
        g12 = v1x * i12 + v2x * i22
        g21 = v1y * i11 + v2y * i21
        g22 = v1y * i12 + v2y * i22
        x11, x12, x21, x22 = x_z.ravel()
        h11 = g11 * x11 + g12 * x21
        h12 = g11 * x12 + g12 * x22
        h21 = g21 * x11 + g22 * x21
        h22 = g21 * x12 + g22 * x22

        norm_g = g11 ** 2 + g12 ** 2 + g21 ** 2 + g22 ** 2
        norm_h = h11 ** 2 + h12 ** 2 + h21 ** 2 + h22 ** 2
        cross = g11 * h11 + g12 * h12 + g21 * h21 + g22 * h22
        tr_g = g11 + g22
        tr_h = h11 + h22

        p_co = (norm_g + norm_h) / 2.0
        q_co = cross
        r_co = (norm_g - norm_h) / 2.0 + 2.0

        best = np.full(len(points), np.inf)
        for sign in (1.0, -1.0):
            # with u = e^s, f'(s) * 2u^2 is the quartic below; only
            # positive real roots correspond to real s
            roots = _quartic_roots(p_co + q_co,
                                   -sign * (tr_g + tr_h),
                                   np.zeros_like(p_co),
                                   sign * (tr_g - tr_h),
                                   q_co - p_co)
            ok_root = ~np.isnan(roots) & (roots > 0.0)
            s = np.log(np.where(ok_root, roots, 1.0))
            vals = (p_co[:, None] * np.cosh(2.0 * s)
                    + q_co[:, None] * np.sinh(2.0 * s) + r_co[:, None]
                    - 2.0 * sign * (tr_g[:, None] * np.cosh(s)
                                    + tr_h[:, None] * np.sinh(s)))
            vals = np.where(ok_root, vals, np.inf)
            best = np.minimum(best, vals.min(axis=1))
        return good & (best <= radius * radius)

    def membership(self, z, w, radius):
        pt = np.asarray(w, dtype=float)[None, :]
        return bool(self._membership_points(z, pt, radius)[0])

    def apply(self, g, point):
        g = np.asarray(g, dtype=float)
        return _orbit_coords(g @ _orbit_matrix(point) @ np.linalg.inv(g))


SPACES = {
    PlaneModel.name: PlaneModel,
    SPD2Model.name: SPD2Model,
    ConeModel.name: ConeModel,
    HyperboloidModel.name: HyperboloidModel,
}


def get_model(name: str) -> SpaceModel:
    if name not in SPACES:
        raise InputError(
            f"unknown space {name!r}; choose one of {sorted(SPACES)}")
    return SPACES[name]()


# ---------------------------------------------------------------------------
# the estimator


def _batch_partial(model, z, lo, hi, radius, seed, point_index, batch_index,
                   count):
    rng = np.random.default_rng(
        np.random.SeedSequence([seed, point_index, batch_index]))
    coords = rng.uniform(lo, hi, size=(count, model.chart_dim))
    weights = model.density_chart(coords)
    hits = model.membership_chart(z, coords, radius)
    vals = weights * hits
    return float(vals.sum()), float((vals * vals).sum())


def estimate_volume(model: SpaceModel, z, radius: float = 0.3,
                    samples: int = 100_000, seed: int = 0,
                    point_index: int = 0) -> tuple[float, float]:
    """Hit-or-miss volume of the orbit patch B_r . z.

    Returns (estimate, stderr).  Estimate = box measure times the mean
    of density * hit over uniform box samples; stderr propagates the
    sample variance of that weighted indicator.
    """
    if radius <= 0.0:
        raise InputError("radius must be positive")
    if samples < 1000:
        raise InputError("need at least 1000 samples")
    lo, hi = model.chart_box(z, radius)
    box_measure = float(np.prod(hi - lo))
    if not (box_measure > 0.0 and np.isfinite(box_measure)):
        raise EmptyBox("sampling box has no volume")

    counts = [BATCH] * (samples // BATCH)
    if samples % BATCH:
        counts.append(samples % BATCH)
    jobs = list(enumerate(counts))
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(
                lambda job: _batch_partial(model, z, lo, hi, radius, seed,
                                           point_index, job[0], job[1]),
                jobs))
    else:
        partials = [_batch_partial(model, z, lo, hi, radius, seed,
                                   point_index, bi, n) for bi, n in jobs]
    # fixed-order reduction keeps float results independent of thread count
    total = 0.0
    total_sq = 0.0
    for s, s2 in partials:
        total += s
        total_sq += s2
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    estimate = box_measure * mean
    stderr = box_measure * math.sqrt(var / samples)
    return estimate, stderr


@dataclass
class VolumeSeries:
    """Estimates along a curve plus the fitted log-slope."""

    t_values: list[float]
    estimates: list[float]
    stderrs: list[float]
    samples: int
    seed: int
    radius: float
    space: str
    slope: float | None = None
    intercept: float | None = None
    slope_half_width: float | None = None

    def to_csv(self) -> str:
        lines = ["t,estimate,stderr,samples,seed"]
        for t, est, err in zip(self.t_values, self.estimates, self.stderrs):
            lines.append(f"{t:.17g},{est:.17g},{err:.17g},"
                         f"{self.samples},{self.seed}")
        return "\n".join(lines) + "\n"


def fit_log_slope(series: VolumeSeries) -> tuple[float, float]:
    """OLS slope of log(estimate) against t, over positive estimates.

    Returns (slope, half_width) with half_width twice the standard
    error of the fitted slope.
    """
    pts = [(t, math.log(v)) for t, v in zip(series.t_values, series.estimates)
           if v > 0.0]
    if len(pts) < 4:
        raise TooFewPoints(
            f"need at least 4 positive estimates to fit, have {len(pts)}")
    ts = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    t_bar = ts.mean()
    s_tt = float(((ts - t_bar) ** 2).sum())
    if s_tt == 0.0:
        raise TooFewPoints("grid points must not coincide")
    slope = float(((ts - t_bar) * (ys - ys.mean())).sum() / s_tt)
    intercept = float(ys.mean() - slope * t_bar)
    resid = ys - (intercept + slope * ts)
    dof = max(len(pts) - 2, 1)
    se = math.sqrt(float((resid ** 2).sum()) / dof / s_tt)
    return slope, 2.0 * se


def volume_along_curve(model: SpaceModel, curve=None, t_grid=(),
                       radius: float = 0.3, samples: int = 100_000,
                       seed: int = 0) -> VolumeSeries:
    """estimate_volume at each grid point, with a log-slope fit.

    Substream index i is the grid position, so per-point results do not
    depend on the grid being re-sliced.
    """
    curve = curve or model.curve
    t_values = [float(t) for t in t_grid]
    estimates = []
    stderrs = []
    for i, t in enumerate(t_values):
        est, err = estimate_volume(model, curve(t), radius=radius,
                                   samples=samples, seed=seed, point_index=i)
        estimates.append(est)
        stderrs.append(err)
    series = VolumeSeries(t_values, estimates, stderrs, samples, seed,
                          radius, model.name)
    try:
        series.slope, series.slope_half_width = fit_log_slope(series)
        pts = [(t, math.log(v)) for t, v in zip(t_values, estimates) if v > 0]
        series.intercept = float(
            np.mean([y for _, y in pts])
            - series.slope * np.mean([t for t, _ in pts]))
    except TooFewPoints:
        pass
    return series


# ---------------------------------------------------------------------------
# the unbounded function with finite L^p norm


def chi_partial(model: SpaceModel, big_k: int, radius: float = 0.3,
                p: float = 2.0, samples: int = 100_000,
                seed: int = 0) -> tuple[float, float, float]:
    """Partial sums of the step-function counterexample on the plane model.

    chi_k is the indicator of the patch B . a_{-k} z0; the partial sum
    sum_{k<=K} k chi_k has L^p norm ((sum k^p vol_k))^{1/p} because the
    patches are pairwise disjoint for radius < (1 - 1/e)/(1 + 1/e), and
    its sup is exactly K, attained at the K-th base point.

    Returns (norm_p, sup_value, tail_ratio) with tail_ratio the ratio of
    the K-th to (K-1)-th term of k * ||chi_k||_p.
    """
    if not isinstance(model, PlaneModel):
        raise InputError("chi_partial is defined on the sl2-mod-n model")
    if big_k < 3:
        raise InputError("need K >= 3")
    if p < 1.0:
        raise InputError("need p >= 1")
    disjoint_limit = (1.0 - math.exp(-1.0)) / (1.0 + math.exp(-1.0))
    if radius >= disjoint_limit:
        raise InputError(
            f"radius {radius} is too large for disjoint patches "
            f"(limit {disjoint_limit:.4f})")

    base_points = [model.curve(-k) for k in range(1, big_k + 1)]
    vols = []
    for k, z in enumerate(base_points, start=1):
        est, _ = estimate_volume(model, z, radius=radius, samples=samples,
                                 seed=seed, point_index=k)
        vols.append(est)

    norm_p = float(sum(float(k) ** p * v
                       for k, v in zip(range(1, big_k + 1), vols))) ** (1.0 / p)
    # sup of the partial sum over the base points, by exact membership
    sup_value = 0.0
    for j, zj in enumerate(base_points, start=1):
        val = sum(k for k, zk in enumerate(base_points, start=1)
                  if model.membership(zk, zj, radius))
        sup_value = max(sup_value, float(val))
    term_last = big_k * vols[-1] ** (1.0 / p)
    term_prev = (big_k - 1) * vols[-2] ** (1.0 / p)
    tail_ratio = term_last / term_prev
    return norm_p, sup_value, tail_ratio
