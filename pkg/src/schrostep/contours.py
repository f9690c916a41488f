"""Oriented contour paths in the complex plane and quadrature along them.

The solution representations integrate along boundaries of quarter-plane
sectors of radius-R "keystone" shape: two straight legs joined by a
quarter-circle arc of radius R, traversed with the sector interior on the
left.  Deformed variants replace a sector boundary by the real line (as a
principal value) plus contributions hugging a branch cut.

Quadrature is adaptive Gauss-Kronrod 7-15 with worst-panel-first refinement.
Integrands are evaluated in batches (a whole panel of nodes per call) and the
final sum runs in a fixed order so repeated runs give bit-identical results.
"""

import heapq
from dataclasses import dataclass, field

import numpy as np

from .kernels import BranchCutError

__all__ = [
    "Leg",
    "ContourPath",
    "KeyholeSpec",
    "QuadratureError",
    "boundary_of_DR",
    "rotated_boundary",
    "deform_to_real_line",
    "check_cut_clearance",
    "integrate",
    "build_node_table",
    "table_integral",
    "NodeTable",
]

# Gauss-Kronrod 7-15 on [-1, 1].  Nodes and weights are the standard
# QUADPACK constants; the Gauss-7 rule lives on the odd-indexed nodes.
_XK_HALF = np.array([
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
])
_WK_HALF = np.array([
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
])
_WG_HALF = np.array([
    0.0,
    0.129484966168870,
    0.0,
    0.279705391489277,
    0.0,
    0.381830050505119,
    0.0,
    0.417959183673469,
])

_XK = np.concatenate([-_XK_HALF[:-1], [0.0], _XK_HALF[:-1][::-1]])
_WK = np.concatenate([_WK_HALF[:-1], [_WK_HALF[-1]], _WK_HALF[:-1][::-1]])
_WG = np.concatenate([_WG_HALF[:-1], [_WG_HALF[-1]], _WG_HALF[:-1][::-1]])


class QuadratureError(RuntimeError):
    """Adaptive refinement ran out of budget without meeting the tolerance."""

    def __init__(self, message, leg_index=None, leg_label=""):
        self.leg_index = leg_index
        self.leg_label = leg_label
        super().__init__(message)


@dataclass
class Leg:
    """One smooth piece of a contour.

    kind 'line'  straight z0 -> z1
    kind 'arc'   radius * exp(i theta), theta from th0 to th1, centred at 0
    kind 'pv'    principal-value pass through `center` along the real
                 direction, half-width `half`; integrated as the symmetric
                 fold integral_0^half [f(c+u) + f(c-u)] du

    `splits` lists parameter values in (0, 1) where the initial panelling
    must break (branch points, cut endpoints).  `tag` marks legs that need a
    special integrand ('cut-difference') or a one-sided rule
    ('one-sided-below'); ordinary legs carry an empty tag.
    """

    kind: str
    z0: complex = 0.0
    z1: complex = 0.0
    radius: float = 0.0
    th0: float = 0.0
    th1: float = 0.0
    center: float = 0.0
    half: float = 0.0
    label: str = ""
    tag: str = ""
    splits: tuple = ()

    @classmethod
    def line(cls, z0, z1, label="line", tag="", splits=()):
        if z0 == z1:
            raise ValueError("degenerate line leg at {}".format(z0))
        return cls(kind="line", z0=complex(z0), z1=complex(z1), label=label,
                   tag=tag, splits=tuple(splits))

    @classmethod
    def arc(cls, radius, th0, th1, label="arc", tag="", splits=()):
        if radius <= 0.0:
            raise ValueError("arc radius must be positive, got {}".format(radius))
        if th0 == th1:
            raise ValueError("degenerate arc")
        return cls(kind="arc", radius=float(radius), th0=float(th0),
                   th1=float(th1), label=label, tag=tag, splits=tuple(splits))

    @classmethod
    def pv(cls, center, half, label="principal value leg", tag="", splits=()):
        if half <= 0.0:
            raise ValueError("principal value half-width must be positive")
        return cls(kind="pv", center=float(center), half=float(half),
                   label=label, tag=tag, splits=tuple(splits))

    def start(self):
        if self.kind == "line":
            return self.z0
        if self.kind == "arc":
            return self.radius * np.exp(1j * self.th0)
        return complex(self.center - self.half)

    def end(self):
        if self.kind == "line":
            return self.z1
        if self.kind == "arc":
            return self.radius * np.exp(1j * self.th1)
        return complex(self.center + self.half)

    def point(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "line":
            return self.z0 + s * (self.z1 - self.z0)
        if self.kind == "arc":
            th = self.th0 + s * (self.th1 - self.th0)
            return self.radius * np.exp(1j * th)
        raise ValueError("pv legs have no single-valued parametrisation")

    def deriv(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "line":
            return np.full(s.shape, self.z1 - self.z0, dtype=complex)
        if self.kind == "arc":
            th = self.th0 + s * (self.th1 - self.th0)
            return 1j * self.radius * (self.th1 - self.th0) * np.exp(1j * th)
        raise ValueError("pv legs have no single-valued parametrisation")


@dataclass
class ContourPath:
    """A sequence of legs with an overall orientation sign.

    `sign` multiplies the final integral; deformations that reverse the
    effective direction (lower half plane collapsing onto the real line
    traversed left to right) carry sign -1.
    """

    legs: list
    sign: int = 1

    def validate_continuity(self, rtol=1e-9):
        scale = max(abs(leg.start()) + abs(leg.end()) for leg in self.legs) + 1.0
        for a, b in zip(self.legs, self.legs[1:]):
            if abs(a.end() - b.start()) > rtol * scale:
                raise ValueError(
                    "contour legs do not join: {} ends at {} but {} starts at {}".format(
                        a.label, a.end(), b.label, b.start()))
        return self


@dataclass(frozen=True)
class KeyholeSpec:
    """Branch-cut attachment for a deformed path.

    axis         'imag' or 'real'
    half_length  cut half-length sqrt(|alpha|)

    An imaginary-axis cut pairs with the upper-half-plane deformation
    (quadrant 1) and contributes a cut-difference leg from 0 to
    i*half_length.  A real-axis cut pairs with the lower-half-plane
    deformation (quadrant 3), where the real-line integrand itself must be
    evaluated one-sidedly from below; no extra leg appears.
    """

    axis: str
    half_length: float

    def __post_init__(self):
        if self.axis not in ("imag", "real"):
            raise ValueError("cut axis must be 'imag' or 'real', got {!r}".format(self.axis))
        if not self.half_length > 0.0:
            raise ValueError("cut half_length must be positive")


def boundary_of_DR(quadrant, radius, truncation, lam=0.0):
    """Truncated boundary of the quarter-plane sector D_R in one quadrant.

    The path runs with the sector interior on the left: incoming straight
    leg from the truncation point toward the arc, clockwise quarter arc of
    the given radius, outgoing straight leg back out to the truncation.
    `lam` is the branch scale Lambda = max |alpha_j|; the arc must satisfy
    radius > sqrt(2*Lambda) so the whole path clears every branch cut.
    """
    if quadrant not in (1, 2, 3, 4):
        raise ValueError("quadrant must be 1, 2, 3 or 4, got {}".format(quadrant))
    thresh = np.sqrt(2.0 * lam)
    if not radius > thresh:
        raise ValueError(
            "arc radius {} too small: need radius > sqrt(2*Lambda) = {:.12g} "
            "to clear the branch cuts".format(radius, thresh))
    if not truncation > radius:
        raise ValueError(
            "truncation {} must exceed the arc radius {}".format(truncation, radius))
    T, R = float(truncation), float(radius)
    half_pi = 0.5 * np.pi
    if quadrant == 1:
        legs = [Leg.line(1j * T, 1j * R, "imaginary leg"),
                Leg.arc(R, half_pi, 0.0),
                Leg.line(R, T, "real leg")]
    elif quadrant == 2:
        legs = [Leg.line(-T, -R, "real leg"),
                Leg.arc(R, np.pi, half_pi),
                Leg.line(1j * R, 1j * T, "imaginary leg")]
    elif quadrant == 3:
        legs = [Leg.line(-1j * T, -1j * R, "imaginary leg"),
                Leg.arc(R, -half_pi, -np.pi),
                Leg.line(-R, -T, "real leg")]
    else:
        legs = [Leg.line(T, R, "real leg"),
                Leg.arc(R, 0.0, -half_pi),
                Leg.line(-1j * R, -1j * T, "imaginary leg")]
    return ContourPath(legs=legs).validate_continuity()


def rotated_boundary(quadrant, radius, truncation, delta, lam=0.0):
    """Sector boundary with one straight leg tilted into a decay sector.

    Quadrant 4 rotates the real leg counterclockwise by delta (exp(i k^2 t)
    then decays along the leg); quadrants 1 and 3 rotate the imaginary leg
    counterclockwise by delta (exp(-i k^2 t) decays).  The other straight
    leg stays on its axis, where the transform factors provide the decay.
    Rotation never moves a leg closer to a branch cut than the arc already
    is, because the legs sweep through cut-free open sectors.
    """
    if quadrant not in (1, 3, 4):
        raise ValueError("rotated boundaries are built for quadrants 1, 3 and 4")
    if not 0.0 < delta < 0.25 * np.pi:
        raise ValueError("rotation angle must lie in (0, pi/4), got {}".format(delta))
    thresh = np.sqrt(2.0 * lam)
    if not radius > thresh:
        raise ValueError(
            "arc radius {} too small: need radius > sqrt(2*Lambda) = {:.12g} "
            "to clear the branch cuts".format(radius, thresh))
    if not truncation > radius:
        raise ValueError(
            "truncation {} must exceed the arc radius {}".format(truncation, radius))
    T, R = float(truncation), float(radius)
    half_pi = 0.5 * np.pi
    if quadrant == 4:
        u = np.exp(1j * delta)
        legs = [Leg.line(T * u, R * u, "rotated real leg"),
                Leg.arc(R, delta, -half_pi),
                Leg.line(-1j * R, -1j * T, "imaginary leg")]
    elif quadrant == 1:
        u = np.exp(1j * (half_pi + delta))
        legs = [Leg.line(T * u, R * u, "rotated imaginary leg"),
                Leg.arc(R, half_pi + delta, 0.0),
                Leg.line(R, T, "real leg")]
    else:
        u = np.exp(1j * (-half_pi + delta))
        legs = [Leg.line(T * u, R * u, "rotated imaginary leg"),
                Leg.arc(R, -half_pi + delta, -np.pi),
                Leg.line(-R, -T, "real leg")]
    return ContourPath(legs=legs).validate_continuity()


def deform_to_real_line(quadrant, pv_half_length, cut=None):
    """Collapse a half-plane sector boundary onto the real line.

    quadrant 1 gives +PV over the real line (sign +1); quadrant 3 gives the
    real line traversed with sign -1.  A KeyholeSpec describes the branch
    cut met during the deformation: an imaginary cut (quadrant 1 only) adds
    a cut-difference leg from 0 to i*half_length carrying the jump of the
    integrand across the cut; a real cut (quadrant 3 only) leaves the path
    alone but tags it so integrands evaluate one-sidedly from below.  The
    principal-value leg splits at the cut endpoints so no quadrature node
    lands on a branch point.
    """
    if quadrant not in (1, 3):
        raise ValueError("only quadrants 1 and 3 deform onto the real line")
    if not pv_half_length > 0.0:
        raise ValueError("pv_half_length must be positive")
    sign = 1 if quadrant == 1 else -1
    tag = ""
    splits = ()
    extra = []
    if cut is not None:
        if quadrant == 1:
            if cut.axis != "imag":
                raise ValueError(
                    "a real-axis cut cannot attach to the upper-half-plane deformation")
            if cut.half_length >= pv_half_length:
                raise ValueError("cut extends past the truncation")
            extra.append(Leg.line(0.0, 1j * cut.half_length,
                                  label="cut difference leg", tag="cut-difference"))
        else:
            if cut.axis != "real":
                raise ValueError(
                    "an imaginary-axis cut cannot attach to the lower-half-plane deformation")
            if cut.half_length >= pv_half_length:
                raise ValueError("cut extends past the truncation")
            tag = "one-sided-below"
            splits = (cut.half_length / pv_half_length,)
    legs = [Leg.pv(0.0, pv_half_length, tag=tag, splits=splits)] + extra
    return ContourPath(legs=legs, sign=sign)


def _segment_hits_cut(z0, z1, axis, s):
    """True if the straight segment z0 -> z1 meets the cut of half-length s."""
    if axis == "imag":
        a0, a1 = z0.real, z1.real
        b0, b1 = z0.imag, z1.imag
    else:
        a0, a1 = z0.imag, z1.imag
        b0, b1 = z0.real, z1.real
    if a0 == 0.0 and a1 == 0.0:
        lo, hi = min(b0, b1), max(b0, b1)
        return hi >= -s and lo <= s
    if (a0 > 0.0 and a1 > 0.0) or (a0 < 0.0 and a1 < 0.0):
        return False
    tstar = a0 / (a0 - a1)
    bcross = b0 + tstar * (b1 - b0)
    return abs(bcross) <= s


def check_cut_clearance(path, levels):
    """Raise BranchCutError if any untagged leg touches a branch cut."""
    for alpha in levels:
        if alpha == 0.0:
            continue
        axis = "imag" if alpha > 0.0 else "real"
        s = np.sqrt(abs(alpha))
        for leg in path.legs:
            if leg.tag in ("cut-difference", "one-sided-below"):
                continue
            if leg.kind == "arc":
                crosses = False
                lo, hi = min(leg.th0, leg.th1), max(leg.th0, leg.th1)
                targets = (0.5 * np.pi, -0.5 * np.pi, 1.5 * np.pi) if axis == "imag" \
                    else (0.0, np.pi, -np.pi)
                for th in targets:
                    if lo - 1e-12 <= th <= hi + 1e-12:
                        crosses = True
                if crosses and leg.radius <= s:
                    raise BranchCutError(alpha, leg.radius * np.exp(1j * leg.th0))
            elif leg.kind == "pv":
                if axis == "real":
                    raise BranchCutError(alpha, complex(min(s, leg.half)))
            else:
                if _segment_hits_cut(leg.z0, leg.z1, axis, s):
                    raise BranchCutError(alpha, leg.z0)
    return path


@dataclass
class NodeTable:
    """Frozen quadrature nodes for a path, reusable across integrands.

    z        flattened node locations (principal-value legs list both fold
             sides, so a pv panel contributes 30 entries)
    w15      Kronrod weights times the complex jacobian
    w7       embedded Gauss weights on the same entries (zeros elsewhere)
    panel    panel index per entry
    tags     leg tag per panel
    labels   leg label per panel
    sign     overall orientation sign of the path
    """

    z: np.ndarray
    w15: np.ndarray
    w7: np.ndarray
    panel: np.ndarray
    tags: list
    labels: list
    sign: int
    n_panels: int


def _panel_nodes(leg, a, b):
    """Node locations and weighted jacobians for one panel of one leg."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    s = mid + half * _XK
    if leg.kind == "pv":
        u = leg.half * s
        z = np.concatenate([leg.center + u, leg.center - u]).astype(complex)
        w15 = np.concatenate([_WK, _WK]) * (half * leg.half)
        w7 = np.concatenate([_WG, _WG]) * (half * leg.half)
        return z, w15.astype(complex), w7.astype(complex)
    z = leg.point(s)
    jac = leg.deriv(s) * half
    return z, _WK * jac, _WG * jac


def build_node_table(path, probes, tolerance, max_panels=2000):
    """Adaptively panel `path` until every probe integrand converges.

    probes is a list of callables f(z, tag) -> complex array.  The returned
    NodeTable fixes the panel decomposition; any further integrand sharing
    the probes' resolution needs can be summed against it with
    table_integral.
    """
    panels = []
    counter = 0
    heap = []

    def make_panel(leg_idx, a, b):
        leg = path.legs[leg_idx]
        z, w15, w7 = _panel_nodes(leg, a, b)
        err = 0.0
        for f in probes:
            v = np.asarray(f(z, leg.tag), dtype=complex)
            u = abs(np.sum(v * w15) - np.sum(v * w7))
            err = max(err, min(u, (200.0 * u) ** 1.5))
        return {"leg": leg_idx, "a": a, "b": b, "err": err, "dead": False,
                "z": z, "w15": w15, "w7": w7}

    def add_panel(leg_idx, a, b):
        nonlocal counter
        p = make_panel(leg_idx, a, b)
        panels.append(p)
        heapq.heappush(heap, (-p["err"], counter, p))
        counter += 1

    for leg_idx, leg in enumerate(path.legs):
        bps = [0.0] + sorted(set(leg.splits)) + [1.0]
        for a, b in zip(bps, bps[1:]):
            add_panel(leg_idx, a, b)

    total = sum(p["err"] for p in panels)
    n_alive = len(panels)

    while total > tolerance and n_alive < max_panels:
        _, _, worst = heapq.heappop(heap)
        if worst["dead"]:
            continue
        if worst["err"] <= 1e-18:
            heapq.heappush(heap, (-worst["err"], counter, worst))
            counter += 1
            break
        worst["dead"] = True
        total -= worst["err"]
        n_alive -= 1
        m = 0.5 * (worst["a"] + worst["b"])
        for lo, hi in ((worst["a"], m), (m, worst["b"])):
            add_panel(worst["leg"], lo, hi)
            total += panels[-1]["err"]
            n_alive += 1

    final = [p for p in panels if not p["dead"]]
    err = sum(p["err"] for p in final)
    if err > 50.0 * max(tolerance, 1e-300) and len(final) >= max_panels:
        worst = max(final, key=lambda p: p["err"])
        leg = path.legs[worst["leg"]]
        raise QuadratureError(
            "quadrature failure on leg {} ({}): error {:.3e} after {} panels".format(
                worst["leg"], leg.label, err, len(final)),
            leg_index=worst["leg"], leg_label=leg.label)

    panels = sorted(final, key=lambda p: (p["leg"], p["a"]))
    z = np.concatenate([p["z"] for p in panels])
    w15 = np.concatenate([p["w15"] for p in panels])
    w7 = np.concatenate([p["w7"] for p in panels])
    pid = np.concatenate([np.full(len(p["z"]), i) for i, p in enumerate(panels)])
    tags = [path.legs[p["leg"]].tag for p in panels]
    labels = [path.legs[p["leg"]].label for p in panels]
    return NodeTable(z=z, w15=w15, w7=w7, panel=pid, tags=tags, labels=labels,
                     sign=path.sign, n_panels=len(panels))


def table_integral(table, vals):
    """Weighted sum of integrand values over a frozen node table.

    Returns (value, error_estimate).  vals must be the integrand evaluated
    at table.z (the caller handles per-tag branching using table.tags and
    table.panel if it needs to).
    """
    vals = np.asarray(vals, dtype=complex)
    contrib15 = vals * table.w15
    contrib7 = vals * table.w7
    i15 = np.bincount(table.panel, weights=contrib15.real, minlength=table.n_panels) + \
        1j * np.bincount(table.panel, weights=contrib15.imag, minlength=table.n_panels)
    i7 = np.bincount(table.panel, weights=contrib7.real, minlength=table.n_panels) + \
        1j * np.bincount(table.panel, weights=contrib7.imag, minlength=table.n_panels)
    value = np.sum(i15)
    u = np.abs(i15 - i7)
    err = float(np.sum(np.minimum(u, (200.0 * u) ** 1.5)))
    # roundoff floor: heavy cancellation (oscillatory integrands at large t)
    # is invisible to the embedded-rule difference, so charge for it here
    err += 2.3e-16 * float(np.sum(np.abs(contrib15)))
    return table.sign * value, err


def integrate(path, f, tolerance=1e-10, max_panels=2000, tail=0.0):
    """Integrate f along path adaptively.

    f is called as f(z, tag) with a batch of nodes z and the tag of the leg
    they belong to; it must return the integrand values (the cut-difference
    leg receives points z = i*y on the cut and f is expected to supply the
    analytic jump formula there).  Returns (value, error) where error adds
    the supplied truncation tail bound to the quadrature estimate.
    """
    table = build_node_table(path, [f], tolerance, max_panels=max_panels)
    vals = np.empty(len(table.z), dtype=complex)
    for i in range(table.n_panels):
        m = table.panel == i
        vals[m] = f(table.z[m], table.tags[i])
    value, err = table_integral(table, vals)
    return value, err + tail
