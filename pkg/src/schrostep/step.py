"""Contour solver for a single potential jump, in three representations.

d4        both regions written as integrals along the fourth-quadrant
          sector boundary in the kappa variable, where exp(i kappa^2 t) is
          shared by every term; the real leg is tilted up by delta so that
          factor decays along it.
quadrant  each region in its own spectral variable: region 1 along the
          third-quadrant sector boundary, region 2 along the first-quadrant
          one, with the imaginary leg tilted into the adjacent decay sector.
realline  the quadrant paths collapsed onto the real axis: a principal
          value integral plus branch-cut pieces (one-sided integrand over
          the real cut for region 1, an explicit jump integral up the
          imaginary cut for region 2).  No arcs appear, so this form stays
          accurate at large t where a sector arc would amplify roundoff;
          it requires the jump to step up (alpha_2 >= alpha_1), otherwise
          mirror the problem first (see `mirrored`).

The half-line transforms in the weights decay only like 1/kappa, so the
legs that stay on an axis carry oscillatory tails that no absolute
truncation can afford.  Those legs are cut at a moderate point and the
remainder is summed by repeated integration by parts in the phase
exp(i(-t u^2 + c(u) x)); the magnitude of the last kept correction doubles
as the error estimate, and a sampled-decay bound takes over whenever the
expansion is not safely convergent.

The module also carries the scaffolding shared by the other solvers: an
integral term is W(kappa) * exp(i c(kappa) (x - x0)) over a contour, with
W independent of x, so a whole grid of x values reuses one set of
quadrature nodes and one batch of transform evaluations.
"""

import numpy as np

from .contours import (KeyholeSpec, QuadratureError, build_node_table,
                       deform_to_real_line, rotated_boundary, table_integral)
from .kernels import SolutionSample, nu, omega
from .transforms import free_term, hat_transform

__all__ = ["StepSolver", "sigma", "sigma_below", "step_coefficients", "mirrored"]

_TWO_PI = 2.0 * np.pi


def sigma(delta_alpha, k):
    """sqrt(1 + delta_alpha / k^2) with the principal branch, even in k."""
    k = np.asarray(k, dtype=complex)
    return nu(delta_alpha, k) / (1j * k)


def sigma_below(a, k_real):
    """One-sided value of sqrt(1 - a / k^2) on the cut, approached from below.

    Valid for real k with 0 < |k| < sqrt(a), a > 0: the limit from Im k < 0
    is -i sgn(k) sqrt(a / k^2 - 1).
    """
    k = np.asarray(k_real, dtype=float)
    mag = np.sqrt(a / np.maximum(k * k, 1e-280) - 1.0)
    return -1j * np.sign(k) * np.minimum(mag, 1e12)


def step_coefficients(potential, k, region=1):
    """Spectral reflection-type and transmission-type factors of the jump.

    Returns the pair ((1 - sigma)/(1 + sigma), 2/(1 + sigma)) built from the
    sigma of the requested region (1 by default, matching data launched on
    the left of the jump).
    """
    if potential.njumps != 1:
        raise ValueError("step coefficients are defined for a single jump")
    a1, a2 = potential.levels
    d = a1 - a2 if region == 1 else a2 - a1
    s = sigma(d, k)
    return (1.0 - s) / (1.0 + s), 2.0 / (1.0 + s)


def mirrored(potential, ic):
    """Reflect a single-jump problem through x = 0.

    Returns (potential', ic') with psi'(x, t) = psi(-x, t).  Used to bring a
    downward step into the upward form the realline representation needs.
    """
    if potential.njumps != 1:
        raise ValueError("mirroring is implemented for a single interface at 0")
    from .kernels import PiecewisePotential
    from .transforms import InitialCondition

    pot2 = PiecewisePotential(potential.levels[::-1], (0.0,))
    if ic.kind == "gaussian":
        ic2 = InitialCondition.gaussian(amplitude=ic.amplitude, center=-ic.center,
                                        width=ic.width, momentum=-ic.momentum)
    else:
        ic2 = InitialCondition.tabulated(-ic.x_table[::-1], ic.values_table[::-1])
    return pot2, ic2


# ----------------------------------------------------------------------
# tail handling


def _pair_tail(f_outer, f_inner, dist, span):
    """Decay-length tail estimate from two integrand samples near the end."""
    if f_outer == 0.0:
        return 0.0
    if f_inner <= f_outer * (1.0 + 1e-9):
        return f_outer * span
    ell = dist / np.log(f_inner / f_outer)
    return f_outer * min(ell, span)


def _leg_tail(leg, weight, outer_at_start, span):
    s = np.array([0.0, 0.1]) if outer_at_start else np.array([1.0, 0.9])
    z = leg.point(s)
    d = abs(z[1] - z[0])
    f = np.abs(weight(z, leg.tag))
    return _pair_tail(float(f[0]), float(f[1]), d, span)


class _OscTail:
    """Integration-by-parts tail of one on-axis ray, cut at u = K.

    The missing piece is int_K^inf A(u) exp(i phi(u, x)) du with
    phi = -t u^2 + c(u) (x - x0) and A slowly varying (the known quadratic
    phase has been stripped from the weight).  Three integrations by parts
    give the correction; the magnitude of the last term is the residual
    estimate.  Outside the safely convergent regime the correction is
    dropped and a sampled-decay bound on |A| is returned instead.
    """

    def __init__(self, weight, xcoef, direction, jacobian, K, t, sign,
                 x_offset, tag):
        h = min(1.0, max(0.05, 0.02 * K))
        u = K - h * np.arange(4.0)
        z = direction * u
        qa = np.exp(1j * t * u * u)
        self.A = np.asarray(weight(z, tag), dtype=complex) * jacobian * qa
        self.c = np.asarray(xcoef(z, tag), dtype=complex).real
        self.h = h
        self.K = K
        self.t = t
        self.sign = sign
        self.x0 = x_offset

    def _fd(self, v):
        h = self.h
        d1 = (11.0 * v[0] - 18.0 * v[1] + 9.0 * v[2] - 2.0 * v[3]) / (6.0 * h)
        d2 = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h)
        d3 = (v[0] - 3.0 * v[1] + 3.0 * v[2] - v[3]) / (h ** 3)
        return d1, d2, d3

    def estimate(self, x, derivative=False):
        """Tail correction and error estimate at one evaluation point."""
        A = self.A * (1j * self.c) if derivative else self.A
        gen = _pair_tail(abs(A[0]), abs(A[1]), self.h, self.K)
        X = x - self.x0
        c1, c2, c3 = self._fd(self.c)
        p1 = -2.0 * self.t * self.K + c1 * X
        # a stationary point must not hide beyond the cut
        if abs(2.0 * self.t * self.K) < 1.3 * abs(c1 * X) or abs(p1) < 1e-12:
            return 0.0j, gen
        a1, a2, a3 = self._fd(A)
        g = 1j * p1
        gp = 1j * (-2.0 * self.t + c2 * X)
        gpp = 1j * (c3 * X)
        B1 = A[0] / g
        B2 = a1 / g ** 2 - A[0] * gp / g ** 3
        B3 = (a2 / g ** 3 - 3.0 * a1 * gp / g ** 4 - A[0] * gpp / g ** 4
              + 3.0 * A[0] * gp * gp / g ** 5)
        if abs(B2) > 0.5 * abs(B1) or abs(B3) > 0.7 * abs(B2) + 1e-300:
            return 0.0j, gen
        err = abs(B3) + 1e-13 * abs(B1)
        if gen <= err:
            return 0.0j, gen
        phi0 = -self.t * self.K * self.K + float(self.c[0]) * X
        corr = self.sign * np.exp(1j * phi0) * (-B1 + B2 - B3)
        return corr, err


class _TailModel:
    """All truncation tails of one integral term."""

    def __init__(self, path, spec, weight, xcoef, t, x_offset, span):
        self.generic = 0.0
        self.generic_deriv = 0.0
        self.oscs = []
        for leg_idx, outer_at_start in spec.get("generic", ()):
            leg = path.legs[leg_idx]
            self.generic += _leg_tail(leg, weight, outer_at_start, span)
            wd = lambda z, tag: weight(z, tag) * np.abs(xcoef(z, tag))
            self.generic_deriv += _leg_tail(leg, wd, outer_at_start, span)
        for leg_idx, rays, K in spec.get("osc", ()):
            for d, jac in rays:
                self.oscs.append(_OscTail(weight, xcoef, d, jac, K, t,
                                          path.sign, x_offset,
                                          path.legs[leg_idx].tag))

    def worst(self, xs, derivative=False):
        """Largest tail error estimate over the probe points (for acceptance)."""
        out = self.generic_deriv if derivative else self.generic
        for x in xs:
            tot = self.generic_deriv if derivative else self.generic
            for o in self.oscs:
                tot += o.estimate(x, derivative)[1]
            out = max(out, tot)
        return out

    def at(self, x, derivative=False):
        corr = 0.0j
        err = self.generic_deriv if derivative else self.generic
        for o in self.oscs:
            c, e = o.estimate(x, derivative)
            corr += c
            err += e
        return corr, err


class IntegralTerm:
    """One contour integral contributing to the solution in one region."""

    def __init__(self, path, weight, xcoef, x_offset, tails):
        self.path = path
        self.weight = weight
        self.xcoef = xcoef
        self.x_offset = x_offset
        self.tails = tails


def choose_truncation(builder, weight, xcoef, t, x_offset, x_probe, tolerance,
                      T0, derivative=False, max_T=4000.0):
    """Grow the truncation until every tail estimate clears the tolerance.

    builder(T) returns (path, spec); spec lists the open legs, as
    "generic" entries (leg_index, outer_at_start) for exponentially
    decaying legs and "osc" entries (leg_index, ((direction, jacobian), ...), K)
    for on-axis rays handled by the integration-by-parts tail.  A line leg's
    jacobian is its direction; a principal-value leg's two rays both carry
    jacobian +1 because substituting k = -u flips the limits as well.
    """
    target = 0.05 * tolerance
    T = T0
    best = None
    for _ in range(22):
        path, spec = builder(T)
        tails = _TailModel(path, spec, weight, xcoef, t, x_offset, span=T)
        w = tails.worst(x_probe, derivative=False)
        if derivative:
            w = max(w, tails.worst(x_probe, derivative=True))
        best = (path, tails)
        if w <= target or T >= max_T:
            return best
        T = min(1.6 * T, max_T)
    return best


def _panel_cache(table, fn):
    """Evaluate fn(z, tag) panel by panel over a node table."""
    out = np.empty(len(table.z), dtype=complex)
    start = 0
    for i in range(table.n_panels):
        m = table.panel == i
        n = int(np.sum(m))
        out[start:start + n] = fn(table.z[start:start + n], table.tags[i])
        start += n
    return out


def eval_terms(terms, xs, tolerance, max_panels=2000, derivative=False):
    """Sum the integral terms over a batch of x values.

    Returns (values, errors) or (values, errors, dvalues, derrors) with one
    entry per x.  Every term builds one node table from three probe points
    and then reuses its transform evaluations for all x.
    """
    xs = np.asarray(xs, dtype=float)
    vals = np.zeros(xs.shape, dtype=complex)
    errs = np.zeros(xs.shape, dtype=float)
    dvals = np.zeros(xs.shape, dtype=complex) if derivative else None
    derrs = np.zeros(xs.shape, dtype=float) if derivative else None
    tol_term = tolerance / max(1, len(terms))
    for term in terms:
        off = term.x_offset
        probe_xs = {float(xs.min()), float(xs.max()), float(xs[len(xs) // 2])}
        probes = []
        for xp in sorted(probe_xs):
            def probe(z, tag, _xp=xp):
                return term.weight(z, tag) * np.exp(1j * term.xcoef(z, tag) * (_xp - off))
            probes.append(probe)
        try:
            table = build_node_table(term.path, probes, tol_term,
                                     max_panels=max_panels)
        except QuadratureError:
            # out of budget; take what the budget buys, the per-point error
            # estimates stay honest
            table = build_node_table(term.path, probes, tol_term * 1e4,
                                     max_panels=max_panels)
        W = _panel_cache(table, term.weight)
        C = _panel_cache(table, term.xcoef)
        for i, x in enumerate(xs):
            ph = np.exp(1j * C * (x - off))
            v, e = table_integral(table, W * ph)
            corr, tail = term.tails.at(x)
            vals[i] += v + corr
            errs[i] += e + tail
            if derivative:
                dv, de = table_integral(table, W * 1j * C * ph)
                dcorr, dtail = term.tails.at(x, derivative=True)
                dvals[i] += dv + dcorr
                derrs[i] += de + dtail
    if derivative:
        return vals, errs, dvals, derrs
    return vals, errs


class StepSolver:
    """Solution of the jump problem with levels (alpha_1, alpha_2) at x = 0.

    representation picks the contour form: 'd4', 'quadrant' or 'realline'.
    tolerance is the absolute quadrature target per evaluated point; the
    reported error estimate adds truncation residuals, so it stays honest
    when the target is out of reach.
    """

    def __init__(self, potential, ic, representation="d4", tolerance=1e-8,
                 radius=None, delta=np.pi / 8.0):
        if potential.njumps != 1:
            raise ValueError("StepSolver handles exactly one interface; "
                             "use GeneralSolver for more")
        if representation not in ("d4", "quadrant", "realline"):
            raise ValueError("unknown representation {!r}".format(representation))
        if representation == "realline" and potential.levels[1] < potential.levels[0]:
            raise ValueError(
                "the realline representation needs an upward jump "
                "(alpha_2 >= alpha_1); mirror the problem with mirrored() first")
        self.potential = potential
        self.ic = ic
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

    # -- weights ---------------------------------------------------------

    def _w_d4(self, region, t):
        a1, a2 = self.potential.levels
        ic, pot = self.ic, self.potential

        def W(z, tag):
            z = np.asarray(z, dtype=complex)
            n1 = nu(a1, z)
            n2 = nu(a2, z)
            grow = np.exp(1j * z * z * t)
            h1 = hat_transform(ic, pot, 1, n1)
            h2 = hat_transform(ic, pot, 2, -n2)
            if region == 1:
                return grow * (-z / np.pi * h2 - z * (n1 - n2) /
                               (_TWO_PI * n1) * h1) / (n1 + n2)
            return grow * (-z / np.pi * h1 + z * (n1 - n2) /
                           (_TWO_PI * n2) * h2) / (n1 + n2)
        return W

    def _sigma1(self, k):
        a1, a2 = self.potential.levels
        d1 = a1 - a2
        k = np.asarray(k, dtype=complex)
        if d1 >= 0.0:
            return sigma(d1, k)
        a = -d1
        on_cut = (k.imag == 0.0) & (np.abs(k.real) < np.sqrt(a))
        out = np.empty(k.shape, dtype=complex)
        if np.any(on_cut):
            out[on_cut] = sigma_below(a, k[on_cut].real)
        rest = ~on_cut
        if np.any(rest):
            out[rest] = sigma(d1, k[rest])
        return out

    def _w_quadrant(self, region, t):
        a1, a2 = self.potential.levels
        ic, pot = self.ic, self.potential

        if region == 1:
            def W(z, tag):
                z = np.asarray(z, dtype=complex)
                s1 = self._sigma1(z)
                damp = np.exp(-omega(a1, z) * t)
                h1 = hat_transform(ic, pot, 1, -z)
                h2 = hat_transform(ic, pot, 2, z * s1)
                return damp * (-(1.0 - s1) * h1 - 2.0 * h2) / (_TWO_PI * (1.0 + s1))
            return W

        def W(z, tag):
            z = np.asarray(z, dtype=complex)
            s2 = sigma(a2 - a1, z)
            damp = np.exp(-omega(a2, z) * t)
            h1 = hat_transform(ic, pot, 1, z * s2)
            h2 = hat_transform(ic, pot, 2, -z)
            return damp * (2.0 * h1 + (1.0 - s2) * h2) / (_TWO_PI * (1.0 + s2))
        return W

    def _w_cut_jump(self, t):
        a1, a2 = self.potential.levels
        a = a2 - a1
        ic, pot = self.ic, self.potential

        def W(z, tag):
            y = np.asarray(z, dtype=complex).imag
            q = np.sqrt(np.maximum(a - y * y, 0.0))
            s = np.minimum(q / np.maximum(y, 1e-280), 1e12)
            A = hat_transform(ic, pot, 2, -1j * y)
            bm = hat_transform(ic, pot, 1, -q)
            bp = hat_transform(ic, pot, 1, q)
            jump = (-4j * s * A + 2.0 * (bm - bp) - 2j * s * (bm + bp)) / (1.0 + s * s)
            return jump * np.exp(-1j * (a2 - y * y) * t) / _TWO_PI
        return W

    def _realline_weight(self, region, t):
        base = self._w_quadrant(region, t)
        if region == 1:
            return base
        cutw = self._w_cut_jump(t)

        def W(z, tag):
            if tag == "cut-difference":
                return cutw(z, tag)
            return base(z, tag)
        return W

    # -- term assembly ---------------------------------------------------

    def _terms(self, region, t, derivative, xmax):
        xb = 2.0 ** np.ceil(np.log2(max(1.0, xmax)))
        key = (self.representation, region, float(t), bool(derivative), xb)
        if key in self._term_cache:
            return self._term_cache[key]
        R, dlt, tol = self.radius, self.delta, self.tolerance
        lam = self.potential.lam
        a1, a2 = self.potential.levels

        if self.representation == "d4":
            W = self._w_d4(region, t)
            alpha_here = a1 if region == 1 else a2
            sgn = -1.0 if region == 1 else 1.0
            xc = lambda z, tag: sgn * nu(alpha_here, np.asarray(z, dtype=complex))
            builder = lambda T: (rotated_boundary(4, R, T, dlt, lam=lam),
                                 {"generic": [(0, True)],
                                  "osc": [(2, ((-1j, -1j),), T)]})
            T0 = 2.0 * R
        elif self.representation == "quadrant":
            W = self._w_quadrant(region, t)
            xc = lambda z, tag: np.asarray(z, dtype=complex)
            quad = 3 if region == 1 else 1
            d = -1.0 if region == 1 else 1.0
            builder = lambda T: (rotated_boundary(quad, R, T, dlt, lam=lam),
                                 {"generic": [(0, True)],
                                  "osc": [(2, ((d, d),), T)]})
            T0 = 2.0 * R
        else:
            W = self._realline_weight(region, t)
            xc = lambda z, tag: np.asarray(z, dtype=complex)
            a = a2 - a1
            cut = None
            if a > 0.0:
                cut = KeyholeSpec("real" if region == 1 else "imag", np.sqrt(a))
            quad = 3 if region == 1 else 1
            builder = lambda L: (deform_to_real_line(quad, L, cut=cut),
                                 {"osc": [(0, ((1.0, 1.0), (-1.0, 1.0)), L)]})
            T0 = max(4.0, 2.0 * R)

        x_probe = (-xb, 0.0) if region == 1 else (xb, 0.0)
        path, tails = choose_truncation(builder, W, xc, t, 0.0, x_probe, tol,
                                        T0, derivative=derivative)
        out = [IntegralTerm(path, W, xc, 0.0, tails)]
        if len(self._term_cache) > 16:
            self._term_cache.clear()
        self._term_cache[key] = out
        return out

    # -- public evaluation ------------------------------------------------

    def _budget(self, t, xmax, T):
        cycles = (T * T * abs(t) + T * abs(xmax)) / _TWO_PI
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
            budget = self._budget(t, np.max(np.abs(sub)), T)
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
