"""Independent reference values for the unit and acceptance tests.

Nothing here uses the library. Moments come from direct quadrature of the
weights (JP) or from the defining Pochhammer ratios in exact arithmetic (the
hypergeometric tuple); type II and type I polynomials are obtained by solving
their orthogonality conditions as plain linear systems rather than through any
triangular factorization. The printed values are frozen into the C++ tests.

    python3 tests/oracles/generate_oracles.py
"""
import math
from fractions import Fraction as F

import mpmath as mp

mp.mp.dps = 40


def stepline(n):
    """Multi-index (n1, n2) with n1 + n2 = n, n1 - n2 in {0, 1}."""
    return (n + 1) // 2, n // 2


# ---------------------------------------------------------------- JP system
def jp_weights(a1, a2, a0):
    w = [lambda x, a=a: x ** a * (1 - x) ** a0 for a in (a1, a2)]
    z = [mp.quad(wi, [0, 0.5, 1]) for wi in w]
    return [lambda x, wi=wi, zi=zi: wi(x) / zi for wi, zi in zip(w, z)], z


def moments(weight, count):
    return [mp.quad(lambda x: x ** k * weight(x), [0, 0.5, 1]) for k in range(count)]


def type_ii(mom, n):
    """Monic B_n: int B_n x^j w1 = 0 (j < n1), int B_n x^j w2 = 0 (j < n2)."""
    if n == 0:
        return [mp.mpf(1)]
    n1, n2 = stepline(n)
    rows, rhs = [], []
    for w, cnt in ((0, n1), (1, n2)):
        for j in range(cnt):
            rows.append([mom[w][j + i] for i in range(n)])
            rhs.append(-mom[w][j + n])
    c = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    return [c[i] for i in range(n)] + [mp.mpf(1)]


def type_i(mom, n):
    """Q_n = A1 w1 + A2 w2 with int x^j Q_n = 0 (j < n), int x^n Q_n = 1."""
    d1, d2 = stepline(n + 1)
    cols = [(0, i) for i in range(d1)] + [(1, i) for i in range(d2)]
    rows = [[mom[w][j + i] for (w, i) in cols] for j in range(n + 1)]
    rhs = [0] * n + [1]
    s = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))
    A = [[mp.mpf(0)] * d1, [mp.mpf(0)] * d2]
    for k, (w, i) in enumerate(cols):
        A[w][i] = s[k]
    return A


def poly_eval(c, x):
    return sum(ci * x ** i for i, ci in enumerate(c))


def recurrence(B, n):
    """x B_n = B_{n+1} + c_n B_n + b_n B_{n-1} + a_n B_{n-2}; read off from coefficients."""
    xb = [mp.mpf(0)] + B[n]
    r = [xb[i] - (B[n + 1][i] if i < len(B[n + 1]) else 0) for i in range(len(xb))]
    c = r[n]
    r = [r[i] - c * (B[n][i] if i <= n else 0) for i in range(len(r))]
    b = r[n - 1] if n >= 1 else mp.mpf(0)
    if n >= 1:
        r = [r[i] - b * (B[n - 1][i] if i <= n - 1 else 0) for i in range(len(r))]
    a = r[n - 2] if n >= 2 else mp.mpf(0)
    return a, b, c


def jp_report(a1, a2, a0, rows=8):
    a1, a2, a0 = mp.mpf(a1), mp.mpf(a2), mp.mpf(a0)
    w, z = jp_weights(a1, a2, a0)
    mom = [moments(wi, 2 * rows + 8) for wi in w]
    B = [type_ii(mom, n) for n in range(rows + 3)]
    Q = [type_i(mom, n) for n in range(rows + 2)]
    H = [recurrence(B, n) for n in range(rows + 1)]
    B1 = [poly_eval(b, 1) for b in B]
    # Near x = 1 the normalized weights differ by the constant ratio z1/z2.
    rho = z[0] / z[1]
    q = [poly_eval(A[0], 1) + rho * poly_eval(A[1], 1) for A in Q]
    q = [qi / q[0] for qi in q]

    def Hent(i, j):
        if j == i + 1:
            return mp.mpf(1)
        if j == i:
            return H[i][2]
        if j == i - 1:
            return H[i][1]
        if j == i - 2:
            return H[i][0]
        return mp.mpf(0)

    hat = [[Hent(i, j) * B1[j] / B1[i] for j in range(rows)] for i in range(rows)]
    check = [[Hent(j, i) * q[j] / q[i] for j in range(rows)] for i in range(rows)]

    def kmg(n, m, r, side):
        def integrand(x):
            QQ = lambda k: sum(poly_eval(Q[k][wi], x) * w[wi](x) for wi in (0, 1))
            if side == "hat":
                return x ** r * poly_eval(B[n], x) * QQ(m)
            return x ** r * poly_eval(B[m], x) * QQ(n)

        val = mp.quad(integrand, [0, 0.5, 1])
        return val * (B1[m] / B1[n] if side == "hat" else q[m] / q[n])

    return {"H": H, "B1": B1, "q": q, "hat": hat, "check": check, "kmg": kmg, "rho": rho}


# ------------------------------------------------------- hypergeometric tuple
def poch(x, k):
    r = F(1)
    for j in range(k):
        r *= x + j
    return r


def ll_exact(a, b, c, d, rows=8):
    m1 = [poch(a, k) * poch(b, k) / (poch(c, k) * poch(d, k)) for k in range(2 * rows + 8)]
    m2 = [poch(a, k) * poch(b + 1, k) / (poch(c + 1, k) * poch(d, k)) for k in range(2 * rows + 8)]
    mom = [m1, m2]

    def solve(A, y):
        n = len(A)
        M = [row[:] + [y[i]] for i, row in enumerate(A)]
        for col in range(n):
            piv = next(r for r in range(col, n) if M[r][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            for r in range(n):
                if r != col and M[r][col] != 0:
                    f = M[r][col] / M[col][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        return [M[i][n] / M[i][i] for i in range(n)]

    def tii(n):
        if n == 0:
            return [F(1)]
        n1, n2 = stepline(n)
        A, y = [], []
        for w, cnt in ((0, n1), (1, n2)):
            for j in range(cnt):
                A.append([mom[w][j + i] for i in range(n)])
                y.append(-mom[w][j + n])
        return solve(A, y) + [F(1)]

    B = [tii(n) for n in range(rows + 3)]
    out = []
    for n in range(rows + 1):
        xb = [F(0)] + B[n]
        r = [xb[i] - (B[n + 1][i] if i < len(B[n + 1]) else 0) for i in range(len(xb))]
        cn = r[n]
        r = [r[i] - cn * (B[n][i] if i <= n else 0) for i in range(len(r))]
        bn = r[n - 1] if n >= 1 else F(0)
        if n >= 1:
            r = [r[i] - bn * (B[n - 1][i] if i <= n - 1 else 0) for i in range(len(r))]
        an = r[n - 2] if n >= 2 else F(0)
        out.append((an, bn, cn))
    return out, [sum(B[n]) for n in range(rows + 3)]


def fmt(x, digits=15):
    return mp.nstr(x, digits, min_fixed=-5, max_fixed=5)


def main():
    for label, params in (("recurrent", ("-0.25", "-0.5", "-0.5")), ("transient", ("-0.25", "-0.5", "0.5"))):
        rep = jp_report(*params)
        print(f"== JP {label} {params}")
        print("a:", [fmt(h[0]) for h in rep["H"]])
        print("b:", [fmt(h[1]) for h in rep["H"]])
        print("c:", [fmt(h[2]) for h in rep["H"]])
        print("B(1):", [fmt(v) for v in rep["B1"][:8]])
        print("q:", [fmt(v) for v in rep["q"][:8]])
        for name in ("hat", "check"):
            print(name)
            for row in rep[name][:6]:
                print("  ", [fmt(v, 8) for v in row[:8]])
        for (n, m, r, side) in ((0, 0, 2, "hat"), (1, 3, 3, "hat"), (2, 0, 4, "check"), (0, 2, 3, "check")):
            print(f"kmg {side} {n}->{m} r={r}:", fmt(rep["kmg"](n, m, r, side)))

    print("== uniform hypergeometric tuple (4/3, 5/3, 2, 5/2)")
    bands, b1 = ll_exact(F(4, 3), F(5, 3), F(2), F(5, 2))
    for n, (a, b, c) in enumerate(bands):
        print(n, a, b, c)
    print("B(1):", [str(v) for v in b1])

    print("== Chebyshev baselines")
    s = mp.quad(lambda x: 1 / (mp.pi * mp.sqrt(1 - x * x)) / (2 - x), [-1, 0, 1])
    print("S(2) by quadrature:", fmt(s, 20), " closed:", fmt(1 / mp.sqrt(3), 20))
    print("P^{2k}_{00} =", [str(F(math.comb(2 * k, k), 4 ** k)) for k in range(4)])


if __name__ == "__main__":
    main()
