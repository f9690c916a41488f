"""Closed forms for the symmetric two-jump profile (0, alpha, 0).

With interfaces at 0 and x2 the 4x4 interface system collapses: the four
spectral unknowns have explicit numerators over the single denominator
D = P^2 e^{2 i nu x2} - M^2,  P = nu - i kappa,  M = nu + i kappa,
where nu is the middle-region root.  D is proportional to the trigonometric
combination whose real zeros mark the bound states when alpha < 0:

    D = -2i e^{i nu x2} * [(alpha + 2 kappa^2) sin(x2 nu) + 2 kappa nu cos(x2 nu)]

The same data build the transmission-normalization coefficient a(xi) of the
stationary problem; a vanishes at xi = i beta exactly where that
trigonometric factor vanishes at kappa = beta, and `bound_states`
enumerates those beta.

WellSolver evaluates the time evolution from the closed forms, either with
every term on the fourth-quadrant sector boundary in kappa ('d4') or mapped
region by region onto the first/third-quadrant boundaries in the local
variable ('quadrant').  Profiles with nonzero outer levels or asymmetric
outer levels belong to GeneralSolver.
"""

import numpy as np

from .contours import rotated_boundary
from .kernels import SolutionSample, nu
from .step import IntegralTerm, choose_truncation, eval_terms
from .transforms import free_term, hat_transform

__all__ = ["WellSolver", "scattering_a", "bound_states", "trig_denominator"]

_TWO_PI = 2.0 * np.pi


def scattering_a(alpha, x2, xi):
    """Transmission-normalization coefficient of the stationary problem.

    a(xi) = e^{i xi x2} (cosh(x2 m) - i (2 xi^2 - alpha) sinh(x2 m) / (2 xi m))
    with m = sqrt(alpha - xi^2).  The expression is even in m, so the branch
    of the square root never matters; a small-argument series keeps
    sinh(x2 m)/m stable near m = 0.  xi may be complex (xi = i beta probes
    the bound states); xi = 0 is outside the domain.
    """
    xi = np.asarray(xi, dtype=complex)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)
    if np.any(xi == 0.0):
        raise ValueError("a(xi) is undefined at xi = 0")
    m = np.sqrt(alpha - xi * xi + 0j)
    w = x2 * m
    small = np.abs(w) < 1e-4
    ws = np.where(small, w, 0.0)
    shc = np.where(small,
                   x2 * (1.0 + ws * ws / 6.0 + ws ** 4 / 120.0),
                   np.sinh(np.where(small, 1.0, w)) / np.where(small, 1.0, m))
    out = np.exp(1j * xi * x2) * (np.cosh(w) - 1j * (2.0 * xi * xi - alpha)
                                  / (2.0 * xi) * shc)
    return complex(out[0]) if scalar else out


def trig_denominator(alpha, x2, kappa):
    """(alpha + 2 kappa^2) sin(x2 nu) + 2 kappa nu cos(x2 nu), nu the middle root.

    Real kappa inside the branch cut of a negative alpha is evaluated with
    the one-sided root from below, nu = +sqrt(|alpha| - kappa^2), which is
    where the bound-state zeros sit.
    """
    kap = np.asarray(kappa, dtype=complex)
    scalar = kap.ndim == 0
    kap = np.atleast_1d(kap)
    nuv = np.empty(kap.shape, dtype=complex)
    if alpha < 0.0:
        on_cut = (kap.imag == 0.0) & (np.abs(kap.real) < np.sqrt(-alpha))
        nuv[on_cut] = np.sqrt(-alpha - kap[on_cut].real ** 2)
        rest = ~on_cut
        if np.any(rest):
            nuv[rest] = nu(alpha, kap[rest])
    else:
        nuv[:] = nu(alpha, kap)
    out = (alpha + 2.0 * kap * kap) * np.sin(x2 * nuv) \
        + 2.0 * kap * nuv * np.cos(x2 * nuv)
    return complex(out[0]) if scalar else out


def bound_states(alpha, x2, grid=1000):
    """Bound-state parameters beta in (0, sqrt(-alpha)), increasing.

    The eigenvalues of the well sit at energy -beta^2 where
    2 beta q cos(x2 q) + (2 beta^2 + alpha) sin(x2 q) = 0, q = sqrt(-alpha
    - beta^2).  Sign changes on a fine grid are polished by bisection.
    Nonnegative alpha binds nothing and returns an empty array.
    """
    if alpha >= 0.0:
        return np.array([])
    from scipy.optimize import brentq

    bmax = np.sqrt(-alpha)

    def f(beta):
        q = np.sqrt(max(-alpha - beta * beta, 0.0))
        return 2.0 * beta * q * np.cos(x2 * q) \
            + (2.0 * beta * beta + alpha) * np.sin(x2 * q)

    bs = np.linspace(bmax * 1e-6, bmax * (1.0 - 1e-9), grid)
    fs = np.array([f(b) for b in bs])
    roots = []
    for i in range(len(bs) - 1):
        if fs[i] == 0.0:
            roots.append(bs[i])
        elif fs[i] * fs[i + 1] < 0.0:
            roots.append(brentq(f, bs[i], bs[i + 1], xtol=1e-12, rtol=1e-15))
    return np.array(roots)


class WellSolver:
    """Time evolution over the profile (0, alpha, 0) with jumps at 0 and x2."""

    def __init__(self, potential, ic, representation="d4", tolerance=1e-8,
                 radius=None, delta=np.pi / 8.0):
        if potential.njumps != 2:
            raise ValueError("WellSolver needs exactly two interfaces")
        if potential.levels[0] != 0.0 or potential.levels[2] != 0.0:
            raise ValueError("WellSolver covers outer levels 0 only; "
                             "use GeneralSolver for other profiles")
        if representation not in ("d4", "quadrant"):
            raise ValueError("unknown representation {!r}".format(representation))
        self.potential = potential
        self.ic = ic
        self.alpha = potential.levels[1]
        self.x2 = potential.interfaces[1]
        self.representation = representation
        self.tolerance = float(tolerance)
        self.delta = float(delta)
        lam = potential.lam
        self.radius = float(radius) if radius is not None else \
            max(1.0, 1.25 * np.sqrt(2.0 * lam))
        if not self.radius > np.sqrt(2.0 * lam):
            raise ValueError(
                "radius {} does not clear the branch scale sqrt(2*Lambda) = {:.6g}".format(
                    self.radius, np.sqrt(2.0 * lam)))
        self._term_cache = {}

    # -- closed-form pieces ------------------------------------------------

    def _data(self, kap, nuv):
        """The four transform inputs, each bounded on the integration path."""
        ic, pot, x2 = self.ic, self.potential, self.x2
        p = -hat_transform(ic, pot, 1, 1j * kap)
        qs = -hat_transform(ic, pot, 2, nuv, origin=x2)
        r = -hat_transform(ic, pot, 2, -nuv)
        sp = -hat_transform(ic, pot, 3, -1j * kap, origin=x2)
        return p, qs, r, sp

    def _numerators(self, kap, nuv, which):
        """Selected spectral numerator over the common denominator."""
        al, x2 = self.alpha, self.x2
        P = nuv - 1j * kap
        M = nuv + 1j * kap
        Ep = np.exp(1j * nuv * x2)
        e2 = Ep * Ep
        D = P * P * e2 - M * M
        p, qs, r, sp = self._data(kap, nuv)
        if which == "B1":
            N = 1j * al * p * (e2 - 1.0) + 2.0 * kap * P * Ep * qs \
                + 2.0 * kap * M * r + 4.0 * kap * nuv * Ep * sp
        elif which == "B3":
            N = -1j * al * sp * (e2 - 1.0) - 4.0 * kap * nuv * Ep * p \
                - 2.0 * kap * M * qs - 2.0 * kap * P * Ep * r
        elif which == "A":
            N = 2.0 * nuv * P * Ep * p + P * P * Ep * r - al * qs \
                + 2.0 * nuv * M * sp
        else:
            N = -2.0 * nuv * M * p - P * P * Ep * qs + al * r \
                - 2.0 * nuv * P * Ep * sp
        return N / D

    # -- weights -----------------------------------------------------------

    def _w_d4(self, region, t):
        al = self.alpha

        def W(z, tag):
            kap = np.atleast_1d(np.asarray(z, dtype=complex))
            nuv = nu(al, kap)
            grow = np.exp(1j * kap * kap * t)
            if region == 1:
                return -grow * self._numerators(kap, nuv, "B1") / _TWO_PI
            if region == 3:
                return grow * self._numerators(kap, nuv, "B3") / _TWO_PI
            raise ValueError("region 2 uses two dedicated weights")
        return W

    def _w_d4_mid(self, which, t):
        al = self.alpha
        sgn = -1.0 if which == "A" else 1.0

        def W(z, tag):
            kap = np.atleast_1d(np.asarray(z, dtype=complex))
            nuv = nu(al, kap)
            grow = np.exp(1j * kap * kap * t)
            return sgn * grow * (kap / nuv) * self._numerators(kap, nuv, which) \
                / _TWO_PI
        return W

    def _w_quad_outer(self, region, t):
        al = self.alpha

        def W(z, tag):
            k = np.atleast_1d(np.asarray(z, dtype=complex))
            kap = 1j * k if region == 1 else -1j * k
            nuv = nu(al, kap)
            damp = np.exp(-1j * k * k * t)
            which = "B1" if region == 1 else "B3"
            return -0.5j * damp * self._numerators(kap, nuv, which) / np.pi
        return W

    def _w_quad_mid(self, which, t):
        # kappa and the local variable k trade places through the same root
        # function: on the third-quadrant path kappa = nu(alpha, k) makes
        # nu(alpha, kappa) = -k, on the first-quadrant path kappa =
        # -nu(alpha, k) makes it +k, and (kappa/nu) dkappa turns into +-dk.
        al = self.alpha

        def W(z, tag):
            k = np.atleast_1d(np.asarray(z, dtype=complex))
            if which == "A":
                kap = nu(al, k)
                nuv = -k
            else:
                kap = -nu(al, k)
                nuv = k
            damp = np.exp(-1j * (al + k * k) * t)
            return -damp * self._numerators(kap, nuv, which) / _TWO_PI
        return W

    # -- term assembly -------------------------------------------------------

    def _terms(self, region, t, derivative, xmax):
        xb = 2.0 ** np.ceil(np.log2(max(1.0, xmax)))
        key = (self.representation, region, float(t), bool(derivative), xb)
        if key in self._term_cache:
            return self._term_cache[key]
        R, dlt, tol = self.radius, self.delta, self.tolerance
        lam = self.potential.lam
        al, x2 = self.alpha, self.x2

        def sector(quad):
            return lambda T: (rotated_boundary(quad, R, T, dlt, lam=lam),
                              {"generic": [(0, True)],
                               "osc": [(2, ((-1j, -1j) if quad == 4 else
                                            ((-1.0, -1.0) if quad == 3 else
                                             (1.0, 1.0)),), T)]})

        specs = []
        if self.representation == "d4":
            if region == 1:
                specs.append((self._w_d4(1, t),
                              lambda z, tag: -1j * np.asarray(z, dtype=complex),
                              0.0, sector(4)))
            elif region == 3:
                specs.append((self._w_d4(3, t),
                              lambda z, tag: 1j * np.asarray(z, dtype=complex),
                              x2, sector(4)))
            else:
                specs.append((self._w_d4_mid("A", t),
                              lambda z, tag: -nu(al, np.asarray(z, dtype=complex)),
                              x2, sector(4)))
                specs.append((self._w_d4_mid("B", t),
                              lambda z, tag: nu(al, np.asarray(z, dtype=complex)),
                              0.0, sector(4)))
        else:
            ident = lambda z, tag: np.asarray(z, dtype=complex)
            if region == 1:
                specs.append((self._w_quad_outer(1, t), ident, 0.0, sector(3)))
            elif region == 3:
                specs.append((self._w_quad_outer(3, t), ident, x2, sector(1)))
            else:
                specs.append((self._w_quad_mid("A", t), ident, x2, sector(3)))
                specs.append((self._w_quad_mid("B", t), ident, 0.0, sector(1)))

        lo, hi = self.potential.region_bounds(region)
        lo = max(lo, -xb)
        hi = min(hi, xb)
        out = []
        for Wf, xc, x0, builder in specs:
            path, tails = choose_truncation(builder, Wf, xc, t, x0, (lo, hi),
                                            tol / len(specs), 2.0 * R,
                                            derivative=derivative)
            out.append(IntegralTerm(path, Wf, xc, x0, tails))
        if len(self._term_cache) > 16:
            self._term_cache.clear()
        self._term_cache[key] = out
        return out

    def _budget(self, t, xspan, T):
        cycles = (T * T * abs(t) + T * xspan) / _TWO_PI
        return int(min(40000, max(2000, 3.0 * cycles + 500)))

    def evaluate(self, x, t, region=None, derivative=False):
        return self.evaluate_grid([x], t, region=region, derivative=derivative)[0]

    def evaluate_grid(self, xs, t, region=None, derivative=False):
        """Solution samples at the points xs and a single time t >= 0."""
        xs = np.asarray(xs, dtype=float)
        t = float(t)
        if t < 0.0:
            raise ValueError("t must be nonnegative")
        if t == 0.0:
            v = self.ic.evaluate(xs)
            dv = self.ic.derivative(xs) if derivative else [None] * xs.size
            return [SolutionSample(float(x), 0.0, complex(v[i]), 0.0,
                                   psi_x=(complex(dv[i]) if derivative else None))
                    for i, x in enumerate(xs)]
        regions = np.full(xs.shape, region if region is not None else 0, dtype=int)
        if region is None:
            for i, x in enumerate(xs):
                regions[i] = self.potential.region_of(x)
        samples = [None] * xs.size
        for j in np.unique(regions):
            idx = np.where(regions == j)[0]
            sub = xs[idx]
            terms = self._terms(int(j), t, derivative, float(np.max(np.abs(sub))))
            T = max(abs(leg.end()) for tm in terms for leg in tm.path.legs)
            budget = self._budget(t, float(np.ptp(sub)) + 1.0, T)
            out = eval_terms(terms, sub, self.tolerance, max_panels=budget,
                             derivative=derivative)
            if derivative:
                vals, errs, dvals, derrs = out
            else:
                vals, errs = out
            for row, i in enumerate(idx):
                if derivative:
                    F, dF = free_term(self.ic, self.potential, int(j), float(xs[i]),
                                      t, derivative=True)
                    samples[i] = SolutionSample(
                        float(xs[i]), t, complex(F + vals[row]), float(errs[row]),
                        psi_x=complex(dF + dvals[row]), psi_x_error=float(derrs[row]))
                else:
                    F = free_term(self.ic, self.potential, int(j), float(xs[i]), t)
                    samples[i] = SolutionSample(
                        float(xs[i]), t, complex(F + vals[row]), float(errs[row]))
        return samples
