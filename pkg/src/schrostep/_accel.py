"""Hot numeric kernels, compiled with numba when it is importable.

Set SCHROSTEP_NO_NUMBA=1 to force the pure numpy/scipy code paths (the
fallback factors the constant Crank-Nicolson matrix once with scipy's
sparse LU and back-substitutes every step).  benchmarks/bench_kernels.py
times the two implementations against each other.
"""

import os

import numpy as np

HAS_NUMBA = False
if os.environ.get("SCHROSTEP_NO_NUMBA", "") != "1":
    try:
        from numba import njit
        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False


if HAS_NUMBA:

    @njit(cache=True)
    def _cn_evolve_numba(psi, w, bprime, dminus, moff, coff, nsteps):
        # Thomas back-substitution with elimination factors precomputed once;
        # the matrix never changes between steps.
        n = psi.shape[0]
        rhs = np.empty(n, np.complex128)
        bmax = 0.0
        for _ in range(nsteps):
            rhs[0] = dminus[0] * psi[0] + moff * psi[1]
            for i in range(1, n - 1):
                rhs[i] = dminus[i] * psi[i] + moff * (psi[i - 1] + psi[i + 1])
            rhs[n - 1] = dminus[n - 1] * psi[n - 1] + moff * psi[n - 2]
            for i in range(1, n):
                rhs[i] = rhs[i] - w[i] * rhs[i - 1]
            psi[n - 1] = rhs[n - 1] / bprime[n - 1]
            for i in range(n - 2, -1, -1):
                psi[i] = (rhs[i] - coff * psi[i + 1]) / bprime[i]
            a0 = abs(psi[0])
            a1 = abs(psi[n - 1])
            if a0 > bmax:
                bmax = a0
            if a1 > bmax:
                bmax = a1
        return psi, bmax


def _cn_evolve_scipy(psi, dplus, dminus, moff, coff, nsteps):
    from scipy.sparse import diags
    from scipy.sparse.linalg import splu

    n = psi.shape[0]
    off = np.full(n - 1, coff, dtype=complex)
    M = diags([off, dplus, off], [-1, 0, 1], format="csc")
    lu = splu(M)
    bmax = 0.0
    for _ in range(nsteps):
        rhs = dminus * psi
        rhs[:-1] += moff * psi[1:]
        rhs[1:] += moff * psi[:-1]
        psi = lu.solve(rhs)
        bmax = max(bmax, abs(psi[0]), abs(psi[-1]))
    return psi, bmax


def cn_evolve(psi_interior, v_interior, dx, dt, nsteps):
    """Advance the interior nodes of a Dirichlet Crank-Nicolson scheme.

    Solves (I + i dt H / 2) psi_new = (I - i dt H / 2) psi_old with
    H = -D2 + diag(v) for `nsteps` steps.  Returns (psi, bmax) where bmax is
    the largest amplitude seen at the two outermost interior nodes, the
    domain-truncation monitor.
    """
    psi = np.array(psi_interior, dtype=complex)
    v = np.asarray(v_interior, dtype=float)
    h = 0.5j * dt
    dplus = 1.0 + h * (2.0 / dx ** 2 + v)
    dminus = 1.0 - h * (2.0 / dx ** 2 + v)
    coff = complex(-h / dx ** 2)
    moff = -coff
    if HAS_NUMBA:
        n = psi.shape[0]
        w = np.zeros(n, dtype=complex)
        bprime = np.empty(n, dtype=complex)
        bprime[0] = dplus[0]
        for i in range(1, n):
            w[i] = coff / bprime[i - 1]
            bprime[i] = dplus[i] - w[i] * coff
        return _cn_evolve_numba(psi, w, bprime, dminus, complex(moff),
                                complex(coff), int(nsteps))
    return _cn_evolve_scipy(psi, dplus, dminus, moff, coff, int(nsteps))
