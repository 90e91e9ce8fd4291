# Prints the 40-digit reference values hard-coded in reference.hpp.
# Requires mpmath.
import mpmath as mp

mp.mp.dps = 40


def abar(m, g, a):
    return mp.factorial(m) * mp.sinh(g) ** (2 * m) * mp.laguerre(m, 0, -a * a)


def moments(g, a):
    A = {m: abar(m, g, a) for m in range(1, 5)}
    F1 = 4 * (A[2] + A[1] - A[1] ** 2)
    F2 = 4 * (A[4] + 6 * A[3] + 7 * A[2] + A[1] - (A[2] + A[1]) ** 2)
    return A, F1, F2


def optimal(g, a, k, sin_theta=1):
    s = mp.sinh(g) ** 2
    d1 = 1 / (a * 2 * s * sin_theta)
    return d1 if k == 1 else d1 / (1 + 2 * s * (a * a + 2))


def lossy(g, a, k, T1, T2):
    s = mp.sinh(g) ** 2
    extra = ((1 - T1) * T2 * mp.cosh(2 * g) + 1 - T2) / (4 * T1 * T2 * a * a * s**2)
    d = mp.sqrt(optimal(g, a, 1) ** 2 + extra)
    return d if k == 1 else d / (1 + 2 * s * (a * a + 2))


def cq(H, e, m1, m2):
    w1 = 1 + 2 * m1 - m2
    w2 = m1 - m2
    w3 = 1 + 2 * (3 * m1 - 2 * m2) + (2 * m1 - m2) * (4 * m1 - 3 * m2)
    w4 = 7 * m2 - 6 * m1 + 24 * m1 * m2 - 14 * m1**2 - 9 * m2**2
    w5 = m2 * w1 - 2 * w2**2
    w6 = 9 + 40 * m1 - 22 * m2 + 44 * m1**2 - 48 * m1 * m2 + 13 * m2**2
    w7 = 7 + 40 * m1 - 26 * m2 + 52 * m1**2 - 64 * m1 * m2 + 19 * m2**2
    W1 = w1 * e**2 - 2 * w2 * e - m2
    W2 = 2 * e * (3 * w1**2 * e**3 - 3 * w3 * e**2 - w4 * e + w5)
    W3 = e * (11 * w1**2 * e**3 - 2 * w6 * e**2 + w7 * e - 4 * w1 * w2)
    W4 = e * (6 * e**3 - 12 * e**2 + 7 * e - 1) * w1**2
    W5 = 2 * e * (1 - e) * w1 * W1
    W6 = e**2 * (1 - e) ** 2 * w1**2
    return 4 * (W1**2 * H[0] - W2 * H[1] + W3 * H[2] - W4 * H[3] - W5 * H[4] - W6 * H[5])


def show(name, v):
    print(f"{name:28s} {mp.nstr(v, 17)}")


one = mp.mpf(1)
A, F1, F2 = moments(one, one)
for m in range(1, 5):
    show(f"abar{m}", A[m])
show("f1", F1)
show("f2", F2)
show("delta_phi1", optimal(one, one, 1))
show("delta_phi2", optimal(one, one, 2))
show("delta_phi1_pi6", optimal(one, one, 1, mp.sin(mp.pi / 6)))
show("n_total", one * mp.cosh(2) + 2 * mp.sinh(1) ** 2)
show("sql", 1 / mp.sqrt(one * mp.cosh(2) + 2 * mp.sinh(1) ** 2))
six = mp.mpf("0.6")
show("lossy_k1", lossy(one, one, 1, six, six))
show("lossy_k2", lossy(one, one, 2, six, six))
show("internal_only_k1", lossy(one, one, 1, six, one))
show("external_only_k1", lossy(one, one, 1, one, six))
show("f_lossy_cs_vs", 4 * six * F1 * A[1] / ((1 - six) * F1 + 4 * six * A[1]))
show("qcrb_f1", 1 / mp.sqrt(F1))
show("qcrb_f2", 1 / mp.sqrt(F2))
show("qcrb_4537_475_x4", 1 / mp.sqrt(4 * mp.mpf("4537.475")))

H = [F2 / 4, A[3] + 3 * A[2] + A[1], A[2] + A[1], A[1], A[1] * (A[2] + A[1]), A[1] ** 2]
f = lambda x, y: cq(H, six, x, y)
mu = mp.findroot(
    [lambda x, y: mp.diff(lambda t: f(t, y), x), lambda x, y: mp.diff(lambda t: f(x, t), y)], (1.2, -1.2)
)
show("mu1", mu[0])
show("mu2", mu[1])
show("c_q", f(mu[0], mu[1]))
