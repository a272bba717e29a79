"""Independent high-precision evaluation of the reference values frozen into
the C++ unit tests. Run with: python3 tests/oracle_scripts/frozen_values.py"""
import mpmath as mp

mp.mp.dps = 40

UNITS = [
    dict(a="0.001562", b="7.92", c="561", g="300", h="0.0315",
         al="0.0126", be="1.355", ga="22.983", pmin="100"),
    dict(a="0.00194", b="7.85", c="310", g="200", h="0.042",
         al="0.00765", be="0.805", ga="363.70", pmin="100"),
]
U = [{k: mp.mpf(v) for k, v in u.items()} for u in UNITS]


def cost(p):
    return mp.fsum(u["a"] * x**2 + u["b"] * x + u["c"]
                   + abs(u["g"] * mp.sin(u["h"] * (u["pmin"] - x)))
                   for u, x in zip(U, p))


def emission(p):
    return mp.fsum(u["al"] * x**2 + u["be"] * x + u["ga"] for u, x in zip(U, p))


def theta(t, mu):
    s = mp.sin(mu)
    return s * mp.log(mp.cosh(t / s))


def smoothed_cost(p, mu):
    return mp.fsum(u["a"] * x**2 + u["b"] * x + u["c"]
                   + theta(u["g"] * mp.sin(u["h"] * (u["pmin"] - x)), mu)
                   for u, x in zip(U, p))


print("theta(10,0.1)        =", mp.nstr(theta(10, mp.mpf("0.1")), 20))
print("theta(0.5,0.2)       =", mp.nstr(theta(mp.mpf("0.5"), mp.mpf("0.2")), 20))
print("tanh(5/sin(0.001))-1 =", mp.nstr(mp.tanh(5 / mp.sin(mp.mpf("0.001"))) - 1, 5))
print("cost(350,300)        =", mp.nstr(cost([350, 300]), 20))
print("cost(350.02,299.98)  =", mp.nstr(cost([mp.mpf("350.02"), mp.mpf("299.98")]), 20))
print("cost(100,100)        =", mp.nstr(cost([100, 100]), 20))
print("emission(250,400)    =", mp.nstr(emission([250, 400]), 20))
print("emission(350,300)    =", mp.nstr(emission([350, 300]), 20))
print("emission(550,100)    =", mp.nstr(emission([550, 100]), 20))
print("tau(n=70)            =", mp.nstr((emission([550, 100]) - emission([250, 400])) / 70, 20))
print("smoothed(350,300,0.01)=", mp.nstr(smoothed_cost([350, 300], mp.mpf("0.01")), 20))
print("sigmoid(1)           =", mp.nstr(mp.e / (1 + mp.e), 20))
# kappa of the logistic density = integral |s| e^-s/(1+e^-s)^2
print("kappa logistic       =", mp.nstr(mp.quad(lambda s: abs(s) * mp.exp(-s) / (1 + mp.exp(-s))**2, [-mp.inf, 0, mp.inf]), 20))

# 0.01 MW grid over the reduced interval P1 in [250, 550]
best = None
for k in range(30001):
    p1 = mp.mpf(250) + k * mp.mpf("0.01")
    c = cost([p1, 650 - p1])
    if best is None or c < best[1]:
        best = (p1, c, emission([p1, 650 - p1]))
print("grid min cost (no cap): P1 =", mp.nstr(best[0], 10), "C =", mp.nstr(best[1], 20), "E =", mp.nstr(best[2], 20))
