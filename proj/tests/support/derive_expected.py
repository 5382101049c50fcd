"""Independent oracle for the derived constants frozen into the C++ tests.

Uses fractions / mpmath only; shares no code with the library.
Run: python3 tests/support/derive_expected.py
"""
from fractions import Fraction as F
import cmath
import itertools
import math

import mpmath

mpmath.mp.dps = 40


def uniform(points):
    w = F(1, len(points))
    return {p: w for p in points}


def truncate(mu, r):
    out = {}
    for a, w in mu.items():
        key = a if a * a <= r * r else F(0)
        out[key] = out.get(key, F(0)) + w
    return out


def ft(mu, xi):
    return sum(float(w) * cmath.exp(-2j * math.pi * float((xi * a) % 1)) for a, w in mu.items())


print("truncate {0,1/2,3} r=1:", truncate(uniform([F(0), F(1, 2), F(3)]), F(1)))

# series (ii) for A_k = {0, 2^-k}: sum_{k<=n} 2^{-k-1}
print("centroid partial sum n=20:", sum(F(1, 2 ** (k + 1)) for k in range(1, 21)))


def ex16_level(k, prefix):
    b = (k + 1) ** 2
    return 2 * b, b, list(range(b - 1)) + [b - 1 + prefix]


def ex16_thm11_partial(n):
    s, prefix = F(0), 1
    for k in range(1, n + 1):
        N, b, B = ex16_level(k, prefix * 2 * (k + 1) ** 2)
        prefix *= N
        atoms = [F(d, prefix) for d in B]
        s += sum(a / (1 + a) for a in atoms) / b
    return s


print("example16 thm11 partial sum n=5:", ex16_thm11_partial(5), float(ex16_thm11_partial(5)))

# (4,{0,1},{0,1}) off-diagonal Gram entry
g = (1 + cmath.exp(-1j * math.pi / 2)) / 2
print("gram off-diagonal |(1+e^{-i pi/2})/2|:", abs(g))

# example16, level 2 spectrum
L1 = [0, 2, 4, 6]
L2 = [2 * i for i in range(9)]
lam = sorted(l1 + 8 * l2 for l1 in L1 for l2 in L2)
print("ex16 Lambda_2 size, sum, max:", len(lam), sum(lam), max(lam))

# JP level 2 measure and Parseval with lambda = 5 removed at xi = 0.3
jp = {}
for d1 in (0, 2):
    for d2 in (0, 2):
        jp[F(d1, 4) + F(d2, 16)] = F(1, 4)
q_full = sum(abs(ft(jp, F(3, 10) + l)) ** 2 for l in (0, 1, 4, 5))
q_miss = sum(abs(ft(jp, F(3, 10) + l)) ** 2 for l in (0, 1, 4))
print("JP Parseval Q(0.3) full, missing 5:", q_full, abs(q_miss - 1))

print("mask bound (2,0,1/2):", 1 - math.pi ** 2 / 6)
pi = mpmath.pi
print("epsilon consecutive:", mpmath.e ** (-8 * pi ** 2 / 27))
print("epsilon example16:", mpmath.e ** (-8 * pi ** 2 / 27 - 6 * (pi ** 2 / 6 - 1)))
thr = mpmath.mpf(7) / 9 - 2 * pi ** 2 / 27
print("n0 threshold:", thr)
print("example16 n0:", max(k for k in range(1, 100) if 2 / mpmath.mpf((k + 1) ** 2) >= thr))

# patch formula with b = (2,3,4), l0 = 1, n = 3
print("patch (2,3,4) l0=1 n=3:", F(1, 2) * F(2, 3) * F(3, 4))


def packing(logb, logN, K):
    return sum(logb[:K]) / sum(logN[:K])


logb = [2 * math.log(k) for k in range(1, 202)]
logN = [math.log(2) + 2 * math.log(k) for k in range(1, 202)]
print("packing b=k^2,N=2k^2 at K=200:", packing(logb, logN, 200))
print("hausdorff b=k^2,N=2k^2 at K=200:", sum(logb[:200]) / (sum(logN[:201]) - logb[200]))

print("g_0(3):", 3 ** (1 + math.floor(math.log(3))), " g_1/2(4):", math.floor(4 ** 1) * 4, " g_1(5):", 10)
print("decay quotient j=10:", 2 * mpmath.log(mpmath.factorial(10)) / ((11) ** 2 - 1))
print("ln n / ln g_0(n) at n=1e8:", 1 / (1 + math.floor(math.log(1e8))))

n = 10 ** 5
A = sum(2 * math.log(k) for k in range(1, n + 1))
B = sum(math.log(2) + 2 * math.log(k) for k in range(1, n + 1))
print("stolz quotient n=1e5:", A / B)


def g_gamma_log(gamma, n):
    if gamma == 0:
        return (1 + math.floor(math.log(n))) * math.log(n)
    if gamma == 1:
        return math.log(2 * n)
    e = 1 / F(gamma) - 1
    return math.log(int(mpmath.floor(mpmath.mpf(n) ** (mpmath.mpf(e.numerator) / e.denominator)))) + math.log(n)


def block_of(k):
    j = 1
    while True:
        nxt = math.factorial(j + 1) ** 2
        if k <= nxt:
            return j
        j += 1


def thm17_logs(alpha, beta, K):
    lb, lN = [], []
    for k in range(1, K + 2):
        b = 2 if k == 1 else k * k
        gamma = alpha if block_of(k) % 2 == 1 else beta
        lb.append(math.log(b))
        lN.append(g_gamma_log(gamma, b))
    return lb, lN


for alpha, beta in ((F(0), F(1)), (F(3, 10), F(7, 10)), (F(1, 2), F(1, 2)), (F(1), F(1))):
    lb, lN = thm17_logs(alpha, beta, 14401)
    Kp = 14400
    p = sum(lb[:Kp]) / sum(lN[:Kp])
    h576 = sum(lb[:576]) / (sum(lN[:577]) - lb[576])
    print(f"thm17 ({alpha},{beta}) packing k=14400: {p:.6f}  hausdorff k=576: {h576:.6f}")

# factorial-shift support, b = (2,2), N = (4,4)
atoms = []
for d1, d2 in itertools.product((0, 1 + 4), (0, 1 + 16 * 2)):
    atoms.append(F(d1, 4) + F(d2, 16))
print("factorial shift (2,2),(4,4) atoms:", sorted(atoms))
