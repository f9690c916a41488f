# Representative results with numba 0.66.0, numpy 2.2.6, scipy 1.15.3 (2026-08):
#
# n = 20001
# nsteps = 400
# Numba-thomas total time (s): 0.15100312232971191
# Scipy-splu total time (s): 0.2757751941680908
# max|numba - scipy| = 6.682e-13
#
# n = 5001
# nsteps = 2000
# Numba-thomas total time (s): 0.18824195861816406
# Scipy-splu total time (s): 0.33395862579345703
# max|numba - scipy| = 2.182e-12
#
# n = 1001
# nsteps = 10000
# Numba-thomas total time (s): 0.19145607948303223
# Scipy-splu total time (s): 0.41167497634887695
# max|numba - scipy| = 7.948e-12

"""Times the compiled Crank-Nicolson stepper against the scipy fallback.

Run with python3 benchmarks/bench_kernels.py; set SCHROSTEP_NO_NUMBA=1 to
check what the library falls back to without a compiler.
"""

import time

import numpy as np

from schrostep._accel import HAS_NUMBA, _cn_evolve_scipy

if HAS_NUMBA:
    from schrostep._accel import _cn_evolve_numba


def setup(n, dx=2e-3, dt=2.5e-4):
    x = (np.arange(n) - n // 2) * dx
    psi = np.exp(-x * x) * np.exp(0.5j * x)
    v = np.where(x > 0.0, 2.0, 1.0)
    h = 0.5j * dt
    dplus = 1.0 + h * (2.0 / dx ** 2 + v)
    dminus = 1.0 - h * (2.0 / dx ** 2 + v)
    coff = complex(-h / dx ** 2)
    return psi.astype(complex), dplus, dminus, -coff, coff


def thomas_factors(dplus, coff):
    n = dplus.shape[0]
    w = np.zeros(n, dtype=complex)
    bprime = np.empty(n, dtype=complex)
    bprime[0] = dplus[0]
    for i in range(1, n):
        w[i] = coff / bprime[i - 1]
        bprime[i] = dplus[i] - w[i] * coff
    return w, bprime


for n, nsteps in ((20001, 400), (5001, 2000), (1001, 10000)):
    psi, dplus, dminus, moff, coff, = setup(n)
    print("n = {}".format(n))
    print("nsteps = {}".format(nsteps))

    if HAS_NUMBA:
        w, bprime = thomas_factors(dplus, coff)
        _cn_evolve_numba(psi.copy(), w, bprime, dminus, moff, coff, 2)  # compile
        startt = time.time()
        got_nb, _ = _cn_evolve_numba(psi.copy(), w, bprime, dminus, moff,
                                     coff, nsteps)
        print("Numba-thomas total time (s): {}".format(time.time() - startt))

    startt = time.time()
    got_sp, _ = _cn_evolve_scipy(psi.copy(), dplus, dminus, moff, coff, nsteps)
    print("Scipy-splu total time (s): {}".format(time.time() - startt))

    if HAS_NUMBA:
        print("max|numba - scipy| = {:.3e}".format(np.abs(got_nb - got_sp).max()))
    print()
