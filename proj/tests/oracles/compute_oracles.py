"""Reference values for the test suite, computed with mpmath at 30 digits.

Independent of the C++ code: builds its own Liouvillian from the collective
jump operator, propagates with mpmath.expm and evaluates concurrence from the
eigenvalues of rho (sy x sy) rho* (sy x sy). Run it to regenerate the numbers
frozen in tests/support/oracles.hpp.
"""

import mpmath as mp

mp.mp.dps = 30

PP, PM, MP_, MM = range(4)


def ket(*amps):
    return mp.matrix([[a] for a in amps])


def lowering():
    # sigma = |-><+| on each qubit; basis index 2*q1 + q2 with bit 1 = |->.
    s = mp.zeros(4, 4)
    for i in range(4):
        q1, q2 = divmod(i, 2)
        if q1 == 0:
            s[i + 2, i] += 1
        if q2 == 0:
            s[i + 1, i] += 1
    return s


def jump(n, psi=0):
    s = lowering()
    return mp.sqrt(n + 1) * s - mp.sqrt(n) * mp.expj(psi) * s.H


def kron(a, b):
    out = mp.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = a[i, j] * b[k, l]
    return out


def conj(m):
    out = m.copy()
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = mp.conj(m[i, j])
    return out


def liouvillian(n, psi=0, gamma=1):
    s = jump(n, psi)
    eye = mp.eye(4)
    sds = s.H * s
    return gamma / 2 * (2 * kron(conj(s), s) - kron(eye, sds) - kron(sds.T, eye))


def vec(m):
    return mp.matrix([[m[i, j]] for j in range(4) for i in range(4)])


def unvec(v):
    out = mp.zeros(4, 4)
    for j in range(4):
        for i in range(4):
            out[i, j] = v[4 * j + i]
    return out


def dfs_vectors(n):
    a = mp.sqrt(n / (2 * n + 1))
    b = mp.sqrt((n + 1) / (2 * n + 1))
    r = 1 / mp.sqrt(2)
    return [ket(a, 0, 0, b), ket(0, -r, r, 0), ket(0, r, r, 0), ket(b, 0, 0, -a)]


def projector(v):
    return v * v.H


def concurrence(rho):
    y = mp.zeros(4, 4)
    y[PP, MM] = -1
    y[PM, MP_] = 1
    y[MP_, PM] = 1
    y[MM, PP] = -1
    r = rho * (y * conj(rho) * y)
    lam = sorted((mp.re(x) for x in mp.eig(r, left=False, right=False)), reverse=True)
    s = [mp.sqrt(max(x, 0)) for x in lam]
    return s[0] - s[1] - s[2] - s[3]


class Evolution:
    def __init__(self, rho0, n):
        self.l = liouvillian(n)
        self.v0 = vec(rho0)

    def state(self, t):
        return unvec(mp.expm(self.l * t) * self.v0)

    def c(self, t):
        return concurrence(self.state(t))


def bisect(f, lo, hi, iters=60):
    flo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def events(evo, t_max, step):
    ts = [step * k for k in range(int(t_max / step) + 1)]
    cs = [evo.c(t) for t in ts]
    out = []
    for k in range(1, len(ts)):
        if (cs[k - 1] > 0) != (cs[k] > 0):
            kind = "death" if cs[k - 1] > 0 else "revival"
            out.append((kind, bisect(evo.c, ts[k - 1], ts[k], 45)))
    return out


def phi4_death(n):
    v = dfs_vectors(n)
    evo = Evolution(projector(v[3]), n)
    for k in range(1, 200):
        t = mp.mpf(k) / 50
        if evo.c(t) <= 0:
            return bisect(evo.c, t - mp.mpf(1) / 50, t, 45)
    raise RuntimeError("no death")


def main():
    e = mp.e
    out = {}
    eps = mp.mpf("0.28")
    out["psi1_k_028"] = eps / mp.sqrt(1 - eps**2)
    k = out["psi1_k_028"]
    f = lambda t: t * mp.exp(-t) - k
    out["psi1_death_028"] = mp.findroot(f, 0.4)
    out["psi1_revival_028"] = mp.findroot(f, 1.9)
    out["psi1_critical_eps"] = 1 / mp.sqrt(1 + e**2)
    out["touching_05"] = mp.log(3) / 2
    out["touching_03"] = mp.log(mp.mpf("0.91") / mp.mpf("0.09")) / 2
    out["phi4_n0_t1"] = [(-3 + e**2) * e**-2, 0, 2 * e**-2, e**-2]
    out["psi1_rho14_t2"] = eps * mp.sqrt(1 - eps**2) * e**-2
    out["psi1_eps05_rho33_t1"] = mp.mpf("1.5") * e**-2
    out["rho23_example"] = mp.mpf("0.5") * e**-2
    out["psi1_c0_028"] = 2 * eps * mp.sqrt(1 - eps**2)
    c21 = lambda t: 2 * (eps * mp.sqrt(1 - eps**2) * mp.exp(-t) - t * mp.exp(-2 * t) * (1 - eps**2))
    out["psi1_c_028_t02"] = max(0, c21(mp.mpf("0.2")))
    out["psi1_c_028_t05"] = max(0, c21(mp.mpf("0.5")))

    # Direct propagation cross-check of the N = 0 value above.
    v0 = dfs_vectors(0)
    psi1 = eps * v0[0] + mp.sqrt(1 - eps**2) * v0[3]
    out["psi1_c_028_t02_propagated"] = Evolution(projector(psi1), 0).c(mp.mpf("0.2"))

    for n in ("0.1", "0.5", "1"):
        nn = mp.mpf(n)
        v = dfs_vectors(nn)
        out["phi3_events_N" + n] = events(Evolution(projector(v[2]), nn), 4, mp.mpf("0.05"))

    nn = mp.mpf("0.1")
    v = dfs_vectors(nn)
    e54 = mp.mpf("0.54")
    psi2 = e54 * v[1] + mp.sqrt(1 - e54**2) * v[2]
    out["psi2_054_events_N0.1"] = events(Evolution(projector(psi2), nn), 5, mp.mpf("0.02"))

    # Interior maximum of the phi4 death time over N (golden section).
    lo, hi = mp.mpf("0.35"), mp.mpf("0.48")
    g = (mp.sqrt(5) - 1) / 2
    x1, x2 = hi - g * (hi - lo), lo + g * (hi - lo)
    f1, f2 = phi4_death(x1), phi4_death(x2)
    while hi - lo > mp.mpf("1e-6"):
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = phi4_death(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = phi4_death(x2)
    out["phi4_death_max_N"] = (lo + hi) / 2
    out["phi4_death_max_value"] = max(f1, f2)

    for key, value in out.items():
        if isinstance(value, list):
            print(key, [(x if isinstance(x, str) else mp.nstr(x, 17)) if not isinstance(x, tuple)
                        else (x[0], mp.nstr(x[1], 17)) for x in value])
        else:
            print(key, mp.nstr(value, 17))


if __name__ == "__main__":
    main()
