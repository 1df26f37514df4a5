#!/usr/bin/env python3
"""Regenerate cylinder_oracle.txt with mpmath (40 digits).

Record format: kind m re(z) im(z) re(val) im(val)
Zero records: JZERO m lambda 0 x 0
"""
import mpmath as mp

mp.mp.dps = 40

def fmt(v):
    return "%.16e" % float(v)

def J(m, z): return mp.besselj(m, z)
def Y(m, z): return mp.bessely(m, z)
def H1(m, z): return mp.hankel1(m, z)
def H2(m, z): return mp.hankel2(m, z)

def deriv(f):
    return lambda m, z: (f(m - 1, z) - f(m + 1, z)) / 2

funcs = {"J": J, "Y": Y, "H1": H1, "H2": H2,
         "dJ": deriv(J), "dY": deriv(Y), "dH1": deriv(H1), "dH2": deriv(H2)}

def usable(kind, m, z, v):
    a = abs(v)
    if a < mp.mpf("1e-280") or a > mp.mpf("1e280"):
        return False
    # skip points sitting on a zero where relative error is meaningless
    base = funcs[kind.lstrip("d")]
    scale = abs(base(m, z)) + abs(base(m + 1, z)) + abs(base(max(m - 1, 0), z))
    return a > mp.mpf("1e-3") * scale

lines = []
def emit(kind, m, z):
    z = mp.mpc(float(mp.re(z)), float(mp.im(z)))
    v = funcs[kind](m, z)
    if not usable(kind, m, z, v):
        return
    lines.append("%s %d %s %s %s %s" % (kind, m, fmt(z.real), fmt(z.imag),
                                         fmt(mp.re(v)), fmt(mp.im(v))))

real_m = [0, 1, 2, 3, 5, 8, 13, 20, 30, 45, 60]
real_x = ["1e-3", "0.1", "0.5", "1.7", "2.404825557695773", "5", "7.5", "10.5",
          "12", "17.3", "24.9", "25.1", "34.65", "42", "60", "99.5", "150", "199"]
for kind in ["J", "Y", "dJ", "dY", "H1", "dH1"]:
    for m in real_m:
        for x in real_x:
            emit(kind, m, mp.mpf(x))

cm = [0, 1, 4, 7, 13, 20, 35, 60]
cre = ["0.4", "1.9", "3.3", "10.5", "18", "31", "55", "120", "190"]
cim = ["-10", "-4", "-0.3", "0.3", "2.5", "9.5"]
for kind in ["J", "H1", "H2", "dJ", "dH1", "dH2"]:
    for m in cm:
        for re in cre:
            for im in cim:
                emit(kind, m, mp.mpc(mp.mpf(re), mp.mpf(im)))

for m in [0, 1, 2, 5, 6, 13, 30, 60]:
    for lam in [1, 2, 3, 10, 50, 500, 10000]:
        x = mp.besseljzero(m, lam)
        lines.append("JZERO %d %d 0 %s 0" % (m, lam, fmt(x)))

with open("cylinder_oracle.txt", "w") as f:
    f.write("\n".join(lines) + "\n")
print(len(lines), "records")
