# Copyright 2026 The Rieopt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference values frozen into tests/unit/oracle_values.hpp.

Each value comes from a formula or library routine that the C++ code does
not use (extended precision, scipy's Schur-Pade logm, generalized
eigenvalues, the Lorentz lift for Poincare transport, ...).
"""

import mpmath as mp
import numpy as np
import scipy.linalg as sla

mp.mp.dps = 50


def mpvec(v):
    return mp.matrix([mp.mpf(x) for x in v])


def fmt(x):
    return "%.17g" % float(x)


def arr(name, values):
    body = ", ".join(fmt(v) for v in values)
    return f"inline constexpr double {name}[] = {{{body}}};"


out = []

# Hypersphere, d = 4 ---------------------------------------------------------
xs = mpvec([1, 2, 3, 4]); xs /= mp.norm(xs)
ys = mpvec([-1, 0.5, 2, 1]); ys /= mp.norm(ys)
theta = mp.acos(sum(xs[i] * ys[i] for i in range(4)))
logv = theta / mp.sin(theta) * (ys - mp.cos(theta) * xs)
a = mpvec([0.3, -0.2, 0.1, 0.05])
v = a - sum(a[i] * xs[i] for i in range(4)) * xs
nv = mp.norm(v)
expv = mp.cos(nv) * xs + mp.sin(nv) * v / nv
out += [arr("kSphereX", xs), arr("kSphereY", ys),
        f"inline constexpr double kSphereDist = {fmt(theta)};",
        arr("kSphereLog", logv), arr("kSphereV", v), arr("kSphereExp", expv)]

# Poincare ball / Lorentz, d = 3 ---------------------------------------------
px = mpvec([0.1, -0.3, 0.2]); py = mpvec([-0.4, 0.1, 0.5])
pv = mpvec([0.7, 0.2, -0.5])
def n2(u): return sum(t * t for t in u)
pd = mp.acosh(1 + 2 * n2(px - py) / ((1 - n2(px)) * (1 - n2(py))))

def lift(x):
    s = 1 - n2(x)
    return mp.matrix([(1 + n2(x)) / s] + [2 * t / s for t in x])

def dlift(x, u):
    s = 1 - n2(x)
    xu = sum(x[i] * u[i] for i in range(len(x)))
    return mp.matrix([4 * xu / s**2] +
                     [2 * u[i] / s + 4 * x[i] * xu / s**2 for i in range(len(x))])

def linner(u, w):
    return -u[0] * w[0] + sum(u[i] * w[i] for i in range(1, len(u)))

def dproject(y, dy):
    k = len(y) - 1
    return mp.matrix([dy[i + 1] / (1 + y[0]) - y[i + 1] * dy[0] / (1 + y[0])**2
                      for i in range(k)])

lx, ly = lift(px), lift(py)
beta = -linner(lx, ly)
lv = dlift(px, pv)
lpt = lv + linner(ly, lv) / (1 + beta) * (lx + ly)
ppt = dproject(ly, lpt)
out += [arr("kBallX", px), arr("kBallY", py), arr("kBallV", pv),
        f"inline constexpr double kBallDist = {fmt(pd)};",
        arr("kBallTransport", ppt), arr("kLorentzX", lx), arr("kLorentzY", ly)]

# Grassmann, (m, r) = (5, 2) -------------------------------------------------
GA = np.array([[1.0, 0.2], [0.3, 1.0], [0.1, -0.4], [0.5, 0.2], [-0.2, 0.6]])
GB = np.array([[0.8, -0.1], [0.1, 0.9], [0.6, 0.3], [0.2, -0.5], [0.4, 0.3]])
ang = np.sort(sla.subspace_angles(GA, GB))
out += [arr("kGrassA", GA.flatten()), arr("kGrassB", GB.flatten()),
        arr("kGrassAngles", ang)]

# SPD, m = 3 -----------------------------------------------------------------
A = np.array([[2.0, 0.5, 0.1], [0.5, 1.5, 0.3], [0.1, 0.3, 1.0]])
B = np.array([[1.0, -0.2, 0.0], [-0.2, 2.0, 0.4], [0.0, 0.4, 3.0]])
U = np.array([[0.3, -0.1, 0.2], [-0.1, 0.4, 0.05], [0.2, 0.05, -0.2]])
V = np.array([[-0.5, 0.3, 0.0], [0.3, 0.1, -0.2], [0.0, -0.2, 0.6]])
gev = sla.eigh(B, A, eigvals_only=True)
ai_dist = np.sqrt(np.sum(np.log(gev) ** 2))
Ainv = np.linalg.inv(A)
ai_inner = np.trace(Ainv @ U @ Ainv @ V)
rA = sla.sqrtm(A).real
irA = np.linalg.inv(rA)
ai_exp = rA @ sla.expm(irA @ U @ irA) @ rA
le_dist = np.linalg.norm(sla.logm(A).real - sla.logm(B).real)
LA = sla.logm(A).real

basis = []
for i in range(3):
    for j in range(i, 3):
        E = np.zeros((3, 3)); E[i, j] = E[j, i] = 1.0
        basis.append(E)

def sym_solve(op, rhs):
    # Solve op(X) = rhs over symmetric X.
    M = np.array([op(E).flatten() for E in basis]).T
    c, *_ = np.linalg.lstsq(M, rhs.flatten(), rcond=None)
    return sum(ci * E for ci, E in zip(c, basis))

dexp = lambda L, E: sla.expm_frechet(L, E, compute_expm=False)
dlog_U = sym_solve(lambda E: dexp(LA, E), U)
dlog_V = sym_solve(lambda E: dexp(LA, E), V)
le_inner = np.trace(dlog_U @ dlog_V)
le_exp = sla.expm(LA + dlog_U)
dexp_A_U = dexp(A, U)
out += [arr("kSpdA", A.flatten()), arr("kSpdB", B.flatten()),
        arr("kSpdU", U.flatten()), arr("kSpdV", V.flatten()),
        f"inline constexpr double kAiDist = {fmt(ai_dist)};",
        f"inline constexpr double kAiInner = {fmt(ai_inner)};",
        arr("kAiExp", ai_exp.flatten()),
        f"inline constexpr double kLeDist = {fmt(le_dist)};",
        f"inline constexpr double kLeInner = {fmt(le_inner)};",
        arr("kLeExp", le_exp.flatten()),
        arr("kDlogAU", dlog_U.flatten()),
        arr("kDexpAU", dexp_A_U.flatten())]

# Privacy --------------------------------------------------------------------
def rdp_sub(s, q, a):
    s, q = mp.mpf(s), mp.mpf(q)
    tot = mp.fsum(mp.binomial(a, k) * (1 - q)**(a - k) * q**k *
                  mp.exp((k * k - k) / (2 * s * s)) for k in range(a + 1))
    return mp.log(tot) / (a - 1)

orders = list(range(2, 65)) + [128, 256]

def eps_of(rdp_fn, steps, delta):
    return min(steps * rdp_fn(a) + mp.log(1 / mp.mpf(delta)) / (a - 1)
               for a in orders)

classical = mp.sqrt(2 * mp.log(mp.mpf(1.25) / mp.mpf("1e-6")))
eps_classical = eps_of(lambda a: a / (2 * classical**2), 1, "1e-6")

def calibrate(eps, delta, steps, q=1):
    f = (lambda s: eps_of(lambda a: a / (2 * s * s), steps, delta)) if q == 1 \
        else (lambda s: eps_of(lambda a: rdp_sub(s, q, a), steps, delta))
    lo, hi = mp.mpf("1e-3"), mp.mpf("1e6")
    for _ in range(200):
        mid = mp.sqrt(lo * hi)
        if f(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi

out += [
    f"inline constexpr double kRdpSub_2_001_8 = {fmt(rdp_sub(2, 0.01, 8))};",
    f"inline constexpr double kRdpSub_1_01_16 = {fmt(rdp_sub(1, 0.1, 16))};",
    f"inline constexpr double kRdpSub_5_005_64 = {fmt(rdp_sub(5, 0.05, 64))};",
    f"inline constexpr double kClassicalSigma = {fmt(classical)};",
    f"inline constexpr double kEpsAtClassical = {fmt(eps_classical)};",
    f"inline constexpr double kCalibOneStep = {fmt(calibrate(1, '1e-6', 1))};",
    f"inline constexpr double kCalibPcaConfig = {fmt(calibrate(mp.mpf('0.1'), '1e-6', 200))};",
]

# Radial Laplace law on S(3): density exp(-r/s) sin(r) on [0, pi] -------------
s = mp.mpf("0.5")
Z = mp.quad(lambda r: mp.exp(-r / s) * mp.sin(r), [0, mp.pi])
cdf = [mp.quad(lambda r: mp.exp(-r / s) * mp.sin(r), [0, t]) / Z
       for t in (0.25, 0.5, 1.0, 2.0)]
out += [f"inline constexpr double kRadialNorm = {fmt(Z)};",
        arr("kRadialCdf", cdf)]

print("\n".join(out))
