"""Generate frozen reference values used in the test suite.

Run from the repository root:

    python tools/make_reference_values.py

Prints high-precision constants (mpmath) and runs independent consistency
checks for the interface-system algebra (numpy). Values printed here are
pasted into tests as literals; tests cite this script.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 30


def banner(title):
    print()
    print("#", title)


# ----------------------------------------------------------------------
banner("principal value of int_{-40}^{40} dk/(k-1)  (= log(39/41))")
val = mp.log(mp.mpf(39) / 41)
print("pv_log_ratio =", mp.nstr(val, 17))

banner("sqrt(pi) and sqrt(pi)/2")
print("sqrt_pi      =", mp.nstr(mp.sqrt(mp.pi), 17))
print("half_sqrt_pi =", mp.nstr(mp.sqrt(mp.pi) / 2, 17))

# ----------------------------------------------------------------------
banner("left half-line Gaussian transform at k = 1 - 0.5i")
# T(k) = int_{-inf}^{0} exp(-y^2) exp(-i k y) dy
k = mp.mpc(1, -0.5)
f = lambda y: mp.e**(-y * y) * mp.e**(-1j * k * y)
T = mp.quad(f, [-mp.inf, 0])
print("hat_left(1-0.5i) =", mp.nstr(T.real, 17), "+", mp.nstr(T.imag, 17), "i")

# ----------------------------------------------------------------------
banner("sign of Re(-i nu) at alpha = 5, kappa = 0.01 - 10i")
alpha = mp.mpf(5)
kappa = mp.mpc("0.01", -10)
nu = 1j * kappa * mp.sqrt(1 + alpha / kappa**2)
print("nu          =", mp.nstr(nu, 12))
print("Re(-i nu)   =", mp.nstr((-1j * nu).real, 12))
print("sign        =", 1 if (-1j * nu).real > 0 else -1)
print("sign(Re k)  =", 1 if kappa.real > 0 else -1)

# ----------------------------------------------------------------------
banner("interior transform of 1 on [0,1] at k = 2  (= (1-exp(-2i))/(2i))")
print("value =", mp.nstr((1 - mp.e**(-2j)) / 2j, 17))

# ----------------------------------------------------------------------
banner("imaginary-axis zeros of a(xi) for the square well")
# On xi = i*beta, 0 < beta < sqrt(|alpha|), with q = sqrt(|alpha| - beta^2):
#   a(i beta) = exp(-beta x2) [cos(x2 q) + (2 beta^2 + alpha)/(2 beta q) sin(x2 q)]
# zeros  <=>  F(beta) = 2 beta q cos(x2 q) + (2 beta^2 + alpha) sin(x2 q) = 0
def well_F(alpha, x2):
    def F(beta):
        q = mp.sqrt(-alpha - beta**2)
        return 2 * beta * q * mp.cos(x2 * q) + (2 * beta**2 + alpha) * mp.sin(x2 * q)
    return F


def enumerate_roots(alpha, x2, ngrid=4000):
    F = well_F(mp.mpf(alpha), mp.mpf(x2))
    bmax = mp.sqrt(-mp.mpf(alpha))
    grid = [bmax * (i + 0.5) / ngrid for i in range(ngrid)]
    roots = []
    for b0, b1 in zip(grid[:-1], grid[1:]):
        if mp.sign(F(b0)) * mp.sign(F(b1)) < 0:
            roots.append(mp.findroot(F, (b0, b1), solver="bisect", tol=1e-25))
    return roots


for alpha, x2 in [(-4, 1.0), (-100, 1.0)]:
    roots = enumerate_roots(alpha, x2)
    print(f"alpha={alpha} x2={x2}: count={len(roots)}")
    for r in roots:
        print("   beta* =", mp.nstr(r, 17))

# ----------------------------------------------------------------------
banner("n=2 interface matrix: det identity and elimination check (numpy)")
# Layout: unknowns X = (g0^1, g0^2, i g1^1, i g1^2); levels (0, alpha, 0),
# interfaces x1 = 0, x2.  Upper rows evaluate region j at +nu_j, lower rows
# region j+1 at -nu_{j+1}.
rng = np.random.default_rng(7)


def nu_of(alpha, kap):
    return 1j * kap * np.sqrt(1 + alpha / kap**2)


def build_A(alpha, x2, kap):
    nu = nu_of(alpha, kap)
    Em = np.exp(-1j * nu * x2)
    Ep = np.exp(1j * nu * x2)
    ek = np.exp(-kap * x2)
    A = np.array(
        [
            [-1j * kap, 0, 1, 0],
            [nu, -nu * Em, -1, Em],
            [-nu, nu * Ep, -1, Ep],
            [0, -1j * kap * ek, 0, -ek],
        ],
        dtype=complex,
    )
    return A, nu, Em, Ep, ek


print("alpha, x2 = 3.7, 1.3; 50 random kappa in Q4 annulus")
alpha, x2 = 3.7, 1.3
ratios = []
brack_err = 0.0
for _ in range(50):
    r = rng.uniform(3.0, 9.0)
    th = rng.uniform(-np.pi / 2 + 0.05, -0.05)
    kap = r * np.exp(1j * th)
    A, nu, Em, Ep, ek = build_A(alpha, x2, kap)
    det = np.linalg.det(A)
    trig = (alpha + 2 * kap**2) * np.sin(x2 * nu) + 2 * kap * nu * np.cos(x2 * nu)
    ratios.append(det * np.exp(kap * x2) / trig)

    # elimination check with arbitrary stripped inputs
    p, qs, rr, sp = (rng.standard_normal(4) + 1j * rng.standard_normal(4))
    Y = np.array([p, qs * Em, rr, sp * ek], dtype=complex)
    X = np.linalg.solve(A, Y)
    P, M = nu - 1j * kap, nu + 1j * kap
    e2 = Ep * Ep
    Dt = P**2 * e2 - M**2
    N1 = 1j * alpha * p * (e2 - 1) + 2 * kap * P * Ep * qs + 2 * kap * M * rr + 4 * kap * nu * Ep * sp
    N3 = -1j * alpha * sp * (e2 - 1) - 4 * kap * nu * Ep * p - 2 * kap * M * qs - 2 * kap * P * Ep * rr
    Na = 2 * nu * P * Ep * p + P**2 * Ep * rr - alpha * qs + 2 * nu * M * sp
    Nb = -2 * nu * M * p - P**2 * Ep * qs + alpha * rr - 2 * nu * P * Ep * sp
    B1 = -1j * X[2] + kap * X[0]
    Abr = (kap / nu) * X[3] + kap * X[1]
    Bbr = (kap / nu) * X[2] - kap * X[0]
    B3 = -1j * X[3] - kap * X[1]
    brack_err = max(
        brack_err,
        abs(B1 - N1 / Dt) / max(abs(B1), 1e-30),
        abs(Abr - (kap / nu) * Na / Dt) / max(abs(Abr), 1e-30),
        abs(Bbr - (kap / nu) * Nb / Dt) / max(abs(Bbr), 1e-30),
        abs(B3 - N3 / Dt) / max(abs(B3), 1e-30),
    )

ratios = np.array(ratios)
print("det * e^{+kappa x2} / Delta_trig: mean =", ratios.mean())
print("max deviation from 2i           =", np.abs(ratios - 2j).max())
print("max relative bracket mismatch   =", brack_err)

# repeat the ratio check for a negative level (well)
alpha = -4.0
ratios = []
for _ in range(20):
    r = rng.uniform(3.5, 8.0)
    th = rng.uniform(-np.pi / 2 + 0.05, -0.05)
    kap = r * np.exp(1j * th)
    A, nu, Em, Ep, ek = build_A(alpha, x2, kap)
    det = np.linalg.det(A)
    trig = (alpha + 2 * kap**2) * np.sin(x2 * nu) + 2 * kap * nu * np.cos(x2 * nu)
    ratios.append(det * np.exp(kap * x2) / trig)
print("alpha=-4: max deviation from 2i =", np.abs(np.array(ratios) - 2j).max())

# ----------------------------------------------------------------------
banner("free Gaussian at (x,t) = (0.7, 0.3) [closed form]")
x, t = mp.mpf("0.7"), mp.mpf("0.3")
psi = (1 + 4j * t) ** mp.mpf("-0.5") * mp.e ** (-(x**2) / (1 + 4j * t))
print("psi =", mp.nstr(psi.real, 17), "+", mp.nstr(psi.imag, 17), "i")
