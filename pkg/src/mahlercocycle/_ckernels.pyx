# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched Aberth-Ehrlich and the cocycle orbit walk.

Semantics match ``_pykernels``; the walk here is the sequential
renormalised vector iteration.
"""

import numpy as np

from libc.math cimport log, sqrt, fabs, pow, cos, sin, frexp, ldexp, M_PI, INFINITY

cdef double EPS = 2.220446049250313e-16

cdef enum:
    WALK = 0
    PRODUCT = 1
    ROW_EIGEN = 2
    COLUMN_EIGEN = 3


cdef inline double cabs2(double complex v) nogil:
    return v.real * v.real + v.imag * v.imag


cdef inline double cabs_(double complex v) nogil:
    return sqrt(v.real * v.real + v.imag * v.imag)


def aberth_batch(coeffs, int maxiter=200):
    cdef const double complex[:, ::1] c = np.ascontiguousarray(coeffs, dtype=complex)
    cdef Py_ssize_t B = c.shape[0], n1 = c.shape[1], d = n1 - 1
    roots_arr = np.empty((B, d), dtype=complex)
    iters_arr = np.zeros(B, dtype=np.int64)
    conv_arr = np.zeros(B, dtype=bool)
    cdef double complex[:, ::1] roots = roots_arr
    cdef long long[::1] iters = iters_arr
    cdef unsigned char[::1] conv = conv_arr.view(np.uint8)
    cdef double complex[::1] a = np.empty(n1, dtype=complex)
    cdef double[::1] aabs = np.empty(n1, dtype=float)
    cdef unsigned char[::1] active = np.empty(max(d, 1), dtype=np.uint8)
    cdef Py_ssize_t b, j, i, m, it, n_active
    cdef double complex p, dp, zj, newton, s, diff, denom, step, cand, pc, dpc
    cdef double radius, theta, bound, r
    for b in range(B):
        for m in range(n1):
            a[m] = c[b, m] / c[b, d]
            aabs[m] = cabs_(a[m])
        radius = pow(aabs[0], 1.0 / d)
        if radius == 0:
            radius = 1.0
        for j in range(d):
            theta = 2 * M_PI * j / d + M_PI / (2 * d) + 0.4
            roots[b, j] = radius * (cos(theta) + 1j * sin(theta))
            active[j] = 1
        for it in range(maxiter):
            n_active = 0
            for j in range(d):
                if not active[j]:
                    continue
                zj = roots[b, j]
                p = a[d]
                dp = 0
                r = cabs_(zj)
                bound = aabs[d]
                for m in range(d - 1, -1, -1):
                    dp = dp * zj + p
                    p = p * zj + a[m]
                    bound = bound * r + aabs[m]
                if cabs_(p) <= 4 * EPS * bound:
                    active[j] = 0
                    continue
                n_active += 1
                if dp == 0:
                    dp = EPS
                newton = p / dp
                s = 0
                for i in range(d):
                    if i != j:
                        diff = zj - roots[b, i]
                        if diff == 0:
                            diff = EPS
                        s = s + 1.0 / diff
                denom = 1 - newton * s
                if denom == 0:
                    denom = EPS
                step = newton / denom
                roots[b, j] = zj - step
            if n_active == 0:
                break
            iters[b] += 1
        conv[b] = 1
        for j in range(d):
            if active[j]:
                conv[b] = 0
        # guarded Newton polish
        for j in range(d):
            zj = roots[b, j]
            p = a[d]
            dp = 0
            for m in range(d - 1, -1, -1):
                dp = dp * zj + p
                p = p * zj + a[m]
            if dp == 0:
                continue
            cand = zj - p / dp
            if cand != cand:
                continue
            pc = a[d]
            for m in range(d - 1, -1, -1):
                pc = pc * cand + a[m]
            if cabs_(pc) < cabs_(p):
                roots[b, j] = cand
    return roots_arr, iters_arr, conv_arr


cdef inline void _rescale(double complex* v, Py_ssize_t n, long* expo) noexcept nogil:
    # scale by an exact power of two once the largest component leaves [2^-300, 2^300]
    cdef double mx = 0, t
    cdef Py_ssize_t i
    cdef int e
    for i in range(n):
        t = fabs(v[i].real)
        if t > mx:
            mx = t
        t = fabs(v[i].imag)
        if t > mx:
            mx = t
    if mx > 2.037035976334486e90 or mx < 4.909093465297727e-91:
        if mx == 0:
            return
        frexp(mx, &e)
        for i in range(n):
            v[i] = v[i] * ldexp(1.0, -e)
        expo[0] += e


cdef inline double _fold(double* prod, long* expo, double factor) noexcept nogil:
    # multiply a running product, keeping the mantissa in range via frexp
    cdef int e
    prod[0] *= factor
    if prod[0] > 1e200 or prod[0] < 1e-200:
        if prod[0] == 0:
            return 0
        prod[0] = frexp(prod[0], &e)
        expo[0] += e
    return prod[0]


def _sparse_terms(coef):
    """Nonzero coefficients per entry e = 2 i + j, as (monomial index, value) runs."""
    L2 = coef.shape[3]
    mono, vals, start = [], [], [0]
    for i in range(2):
        for j in range(2):
            for m1, m2 in zip(*np.nonzero(coef[i, j])):
                mono.append(m1 * L2 + m2)
                vals.append(float(coef[i, j, m1, m2]))
            start.append(len(mono))
    return (np.asarray(mono + [0], dtype=np.int_), np.asarray(vals + [0.0], dtype=float),
            np.asarray(start, dtype=np.int_))


def cocycle_walk(z_in, coef_in, vec_in, int mode):
    cdef const double complex[:, :, ::1] z = np.ascontiguousarray(z_in, dtype=complex)
    cdef const double[:, :, :, ::1] coef = np.ascontiguousarray(coef_in, dtype=float)
    cdef const double complex[:, ::1] vec = np.ascontiguousarray(vec_in, dtype=complex)
    if mode < 0 or mode > 3:
        raise ValueError(f"unknown cocycle mode {mode}")
    cdef Py_ssize_t S = z.shape[0], N = z.shape[1]
    cdef Py_ssize_t L1 = coef.shape[2], L2 = coef.shape[3]
    growth_arr = np.empty(S)
    logdet_arr = np.empty(S)
    mindet_arr = np.empty(S)
    cdef double[::1] growth = growth_arr
    cdef double[::1] logdet = logdet_arr
    cdef double[::1] mindet = mindet_arr

    mono_arr, coef_arr, start_arr = _sparse_terms(np.asarray(coef))
    cdef long[::1] t_mono = mono_arr
    cdef double[::1] t_coef = coef_arr
    cdef long[::1] t_start = start_arr
    cdef double complex[::1] mono = np.empty(L1 * L2, dtype=complex)
    cdef double complex[::1] ypow = np.empty(L2, dtype=complex)

    cdef Py_ssize_t s, n, i, j, e, t_i, m1, m2
    cdef double complex x, y, acc, det, f, xp
    cdef double complex v[2]
    cdef double complex w[2]
    cdef double complex b[4]
    cdef double complex M[4]
    cdef double complex T[4]
    cdef double c, ad2, md2, dprod, fprod, nrm, fro2, dt, tt
    cdef long dexp, fexp, gexp
    cdef bint dead, singular
    cdef double LN2 = log(2.0)
    for s in range(S):
        nrm = sqrt(cabs2(vec[s, 0]) + cabs2(vec[s, 1]))
        v[0] = vec[s, 0] / nrm
        v[1] = vec[s, 1] / nrm
        M[0] = 1
        M[1] = 0
        M[2] = 0
        M[3] = 1
        dprod = 1.0
        fprod = 1.0
        dexp = 0
        fexp = 0
        gexp = 0
        md2 = INFINITY
        dead = False
        singular = False
        for n in range(N):
            x = z[s, n, 0]
            y = z[s, n, 1]
            if L2 == 1:
                mono[0] = 1
                for m1 in range(1, L1):
                    mono[m1] = mono[m1 - 1] * x
            else:
                ypow[0] = 1
                for m2 in range(1, L2):
                    ypow[m2] = ypow[m2 - 1] * y
                xp = 1
                for m1 in range(L1):
                    for m2 in range(L2):
                        mono[m1 * L2 + m2] = xp * ypow[m2]
                    xp = xp * x
            for e in range(4):
                acc = 0
                for t_i in range(t_start[e], t_start[e + 1]):
                    c = t_coef[t_i]
                    acc = acc + c * mono[t_mono[t_i]]
                b[e] = acc
            det = b[0] * b[3] - b[1] * b[2]
            ad2 = cabs2(det)
            if ad2 < md2:
                md2 = ad2
            if ad2 == 0:
                singular = True
            else:
                _fold(&dprod, &dexp, ad2)
            if dead:
                continue
            if mode == WALK:
                w[0] = v[0] * b[0] + v[1] * b[2]
                w[1] = v[0] * b[1] + v[1] * b[3]
                v[0] = w[0]
                v[1] = w[1]
                if w[0] == 0 and w[1] == 0:
                    dead = True
                    continue
                _rescale(v, 2, &gexp)
            elif mode == PRODUCT:
                T[0] = M[0] * b[0] + M[1] * b[2]
                T[1] = M[0] * b[1] + M[1] * b[3]
                T[2] = M[2] * b[0] + M[3] * b[2]
                T[3] = M[2] * b[1] + M[3] * b[3]
                for e in range(4):
                    M[e] = T[e]
                if M[0] == 0 and M[1] == 0 and M[2] == 0 and M[3] == 0:
                    dead = True
                    continue
                _rescale(M, 4, &gexp)
            else:
                if mode == ROW_EIGEN:
                    w[0] = v[0] * b[0] + v[1] * b[2]
                    w[1] = v[0] * b[1] + v[1] * b[3]
                else:
                    w[0] = b[0] * v[0] + b[1] * v[1]
                    w[1] = b[2] * v[0] + b[3] * v[1]
                f = v[0].conjugate() * w[0] + v[1].conjugate() * w[1]
                if f == 0:
                    dead = True
                    continue
                _fold(&fprod, &fexp, cabs2(f))
        mindet[s] = sqrt(md2)
        logdet[s] = -INFINITY if singular else 0.5 * (log(dprod) + dexp * LN2)
        if dead:
            growth[s] = -INFINITY
        elif mode == WALK:
            growth[s] = 0.5 * log(cabs2(v[0]) + cabs2(v[1])) + gexp * LN2
        elif mode == PRODUCT:
            # spectral norm of the 2x2 remainder
            fro2 = cabs2(M[0]) + cabs2(M[1]) + cabs2(M[2]) + cabs2(M[3])
            dt = cabs_(M[0] * M[3] - M[1] * M[2])
            tt = fro2 * fro2 - 4 * dt * dt
            if tt < 0:
                tt = 0
            growth[s] = 0.5 * log(0.5 * (fro2 + sqrt(tt))) + gexp * LN2
        else:
            growth[s] = 0.5 * (log(fprod) + fexp * LN2)
    return growth_arr, logdet_arr, mindet_arr
