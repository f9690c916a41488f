"""Large-time leading order along rays x = gamma t for the single-jump profile.

Away from the interface the solution disperses like t^(-1/2); following a
ray of constant x/t = gamma freezes a stationary point at k = gamma/2 of
the oscillatory representation on the real line, and the standard
stationary-phase weight produces

    psi(gamma t, t) ~ exp(i (gamma^2/4 - alpha_j) t - i pi/4)
                      / (2 sqrt(pi t)) * [hat_j(gamma/2) + a_j(gamma/2)]

with j = 1 on leftward rays and j = 2 on rightward rays.  a_j is the
reflection/transmission combination of the two one-sided transforms that
also drives the solver weights; it stays real-argument only while
1 + 4 (alpha_j - alpha_j') / gamma^2 > 0.  Inside the opposite cone the
stationary point collides with the branch cut, the ray travels slower than
the cut-off speed of the higher level, and this expansion does not apply;
that condition raises ForbiddenConeError.
"""

import numpy as np

from .transforms import hat_transform

__all__ = ["ForbiddenConeError", "leading_order", "ray_bracket"]


class ForbiddenConeError(ValueError):
    """The ray x/t = gamma lies inside the cone excluded by the branch cut."""


def _check(potential, gamma):
    if potential.njumps != 1:
        raise ValueError("ray asymptotics cover the single-jump profile only")
    if gamma == 0.0:
        raise ValueError("gamma = 0 rides the interface; pick a nonzero ray")
    j = 1 if gamma < 0.0 else 2
    a1, a2 = potential.levels
    delta = (a1 - a2) if j == 1 else (a2 - a1)
    radicand = 1.0 + 4.0 * delta / (gamma * gamma)
    if radicand <= 0.0:
        raise ForbiddenConeError(
            "ray gamma = {} has speed |gamma| <= {:.6g}, inside the cone where "
            "the stationary point meets the branch cut".format(
                gamma, 2.0 * np.sqrt(-delta)))
    return j, delta, radicand


def ray_bracket(potential, ic, gamma):
    """The t-independent coefficient [hat_j + a_j](gamma/2) of the decay law."""
    j, delta, radicand = _check(potential, gamma)
    k = gamma / 2.0
    sig = np.sqrt(radicand)
    h_own = hat_transform(ic, potential, j, k)
    if j == 1:
        a_j = ((1.0 - sig) * hat_transform(ic, potential, 1, -k)
               + 2.0 * hat_transform(ic, potential, 2, k * sig)) / (1.0 + sig)
    else:
        a_j = (2.0 * hat_transform(ic, potential, 1, k * sig)
               + (1.0 - sig) * hat_transform(ic, potential, 2, -k)) / (1.0 + sig)
    return complex(h_own + a_j)


def leading_order(potential, ic, gamma, t):
    """Leading-order psi(gamma t, t); t scalar or array, strictly positive."""
    j = _check(potential, gamma)[0]
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if np.any(t <= 0.0):
        raise ValueError("leading order needs t > 0")
    alpha_j = potential.levels[j - 1]
    bracket = ray_bracket(potential, ic, gamma)
    phase = np.exp(1j * (gamma * gamma / 4.0 - alpha_j) * t - 0.25j * np.pi)
    out = phase / (2.0 * np.sqrt(np.pi * t)) * bracket
    return complex(out[0]) if scalar else out
