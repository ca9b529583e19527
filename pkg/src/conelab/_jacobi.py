"""Cyclic Jacobi diagonalisation of a complex Hermitian matrix (numba kernel)."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def jacobi_hermitian(a_in, rtol, max_sweeps):
    """Diagonalise Hermitian ``a_in`` in place on a copy.

    Returns ``(w, v, sweeps, converged)`` with ``a_in = v diag(w) v*``; ``w`` unsorted.
    Converged means off-diagonal Frobenius mass <= ``rtol * ||a||_F``.
    """
    n = a_in.shape[0]
    a = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            a[i, j] = 0.5 * (a_in[i, j] + np.conj(a_in[j, i]))
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    fro2 = 0.0
    for i in range(n):
        for j in range(n):
            fro2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    target = (rtol * rtol) * fro2

    sweeps = 0
    converged = False
    while True:
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += a[i, j].real ** 2 + a[i, j].imag ** 2
        if off2 <= target:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                # phase that makes the (p, q) pair real symmetric
                ph = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(ph)) @ [[c, s], [-s, c]] restricted to (p, q)
                upp = c + 0j
                upq = s + 0j
                uqp = -s * np.conj(ph)
                uqq = c * np.conj(ph)
                # A <- A U
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * upp + akq * uqp
                    a[k, q] = akp * upq + akq * uqq
                # A <- U* A
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(upp) * apk + np.conj(uqp) * aqk
                    a[q, k] = np.conj(upq) * apk + np.conj(uqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * upp + vkq * uqp
                    v[k, q] = vkp * upq + vkq * uqq

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, converged
