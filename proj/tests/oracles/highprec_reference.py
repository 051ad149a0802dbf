#!/usr/bin/env python3
"""High-precision eigenvalues of P(x) = P11 x^11 + P9 x^9 + P2 x^2 + P0.

P11 is unit upper triangular with integer entries, so P11^{-1} is an exact
integer matrix and the monic block companion matrix is formed without
rounding. Eigenvalues come from mpmath at 80 digits and are then refined by
Newton steps on det P(x) at the same precision.
"""
import sys

import mpmath as mp

mp.mp.dps = 80
m, n = 4, 11

P11 = mp.matrix([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]])
P9 = mp.matrix([[3, 1, 0, 0], [1, 3, 1, 0], [0, 1, 3, 1], [0, 0, 1, 3]]) * mp.mpf(10) ** 8
P2 = P11.T * mp.mpf(10) ** 8
P0 = mp.diag([1, 2, 3, 4])
coeffs = {0: P0, 2: P2, 9: P9, 11: P11}


def zero():
    return mp.zeros(m, m)


def P(x):
    acc = zero()
    for k in range(n, -1, -1):
        acc = acc * x + coeffs.get(k, zero())
    return acc


def dP(x):
    acc = zero()
    for k in range(n, 0, -1):
        acc = acc * x + coeffs.get(k, zero()) * k
    return acc


inv11 = P11 ** -1
C = mp.zeros(m * n, m * n)
for i in range(1, n):
    for k in range(m):
        C[i * m + k, (i - 1) * m + k] = 1
for i in range(n):
    Bi = -(inv11 * coeffs.get(i, zero()))
    for r in range(m):
        for c in range(m):
            C[i * m + r, (n - 1) * m + c] = Bi[r, c]

values = mp.eig(C, left=False, right=False)

refined = []
for lam in values:
    x = mp.mpc(lam)
    for _ in range(6):
        M = P(x)
        d = mp.det(M)
        if d == 0:
            break
        # d/dx det P = det P * trace(P^{-1} P')
        step = 1 / mp.fsum([(M ** -1 * dP(x))[i, i] for i in range(m)])
        x = x - step
        if abs(step) < abs(x) * mp.mpf(10) ** -70:
            break
    refined.append(x)

refined.sort(key=lambda z: -abs(z))
for z in refined:
    print(mp.nstr(z.real, 40), mp.nstr(z.imag, 40), mp.nstr(abs(z), 20))
sys.stdout.flush()
