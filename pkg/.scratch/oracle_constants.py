import mpmath as mp

mp.mp.dps = 60

# 1) hyp1f1(1, 0.5, -25) via Kummer-transformed series at >=50 digits
def kummer_series(a, b, z, dps=60, max_terms=100000):
    with mp.workdps(dps):
        a, b, z = mp.mpf(a), mp.mpf(b), mp.mpf(z)
        term = mp.mpf(1); total = mp.mpf(1)
        for k in range(max_terms):
            term *= (a + k) * z / ((b + k) * (k + 1))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * abs(total) and k > 3:
                return total
        raise RuntimeError("no convergence")

def hyp1f1_oracle(a, b, z, dps=60):
    with mp.workdps(dps):
        if z < 0:
            return mp.e**mp.mpf(z) * kummer_series(mp.mpf(b) - mp.mpf(a), b, -mp.mpf(z), dps)
        return kummer_series(a, b, z, dps)

v = hyp1f1_oracle(1, 0.5, -25)
print("hyp1f1(1,0.5,-25)      =", mp.nstr(v, 20))
print("   mpmath check        =", mp.nstr(mp.hyp1f1(1, 0.5, -25), 20))

# 2) 2F2({1,1};{3/2,2}; z) series oracle with enough guard digits
def f22_series_oracle(z, extra=60):
    dps = int(abs(z) / 2.302585) + extra
    with mp.workdps(dps):
        zz = mp.mpf(z)
        term = mp.mpf(1); total = mp.mpf(1)
        for k in range(10 * int(abs(z)) + 2000):
            term *= (1 + k) * zz / ((mp.mpf(3)/2 + k) * (2 + k))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps + 5) * abs(total) and k > abs(z):
                return +total
        raise RuntimeError("no convergence")

for z in (-1.0, -400.0):
    v = f22_series_oracle(z)
    print(f"2F2(-{abs(z)})           =", mp.nstr(v, 20))

# independent quadrature check via Dawson integral: 2F2(-x^2) = (2/x^2) * int_0^x D(w) dw
def f22_quad(z):
    x = mp.sqrt(-mp.mpf(z))
    daw = lambda w: mp.sqrt(mp.pi) / 2 * mp.exp(-w ** 2) * mp.erfi(w)
    return 2 / x ** 2 * mp.quad(daw, [0, x])

for z in (-1.0, -400.0, -2500.0):
    print(f"2F2({z}) quad       =", mp.nstr(f22_quad(z), 20))

# 3) I_3(Gamma0=1, t=1) = 2*Gamma(1)*[1 - 1F1(1; 1/2; -1/4)]
m = hyp1f1_oracle(1, 0.5, -0.25)
i3 = 2 * (1 - m)
print("1F1(1,0.5,-0.25)       =", mp.nstr(m, 20))
print("I_3(1)                 =", mp.nstr(i3, 20))

# 4) alpha(Q=3, G=1, B=1, t=1) = exp(-2*(4pi/6)*I_3(1))
beta_abs = 4 * mp.pi / mp.gamma(4)
alpha = mp.exp(-2 * beta_abs * i3)
print("beta_abs(Q=3,G=1)      =", mp.nstr(beta_abs, 20))
print("alpha(Q3,G1,B1,t1)     =", mp.nstr(alpha, 20))

# 5) Dawson spot values
for x in (0.5, 2.0, 5.0):
    d = mp.sqrt(mp.pi) / 2 * mp.exp(-mp.mpf(x) ** 2) * mp.erfi(x)
    print(f"D({x})                 =", mp.nstr(d, 20))

# 6) gamma table
print("gamma(-0.25)           =", mp.nstr(mp.gamma(-0.25), 20))
print("gamma(0.5)             =", mp.nstr(mp.gamma(0.5), 20))

# 7) branch continuity factor check: lim_{Q->1} I_Q  vs  t^2 G^2 * 2F2(z)
def i_q_oracle(q, g0, t, dps=60):
    with mp.workdps(dps):
        q, g0, t = mp.mpf(q), mp.mpf(g0), mp.mpf(t)
        a = (q - 1) / 2
        z = -(t * g0) ** 2 / 4
        m = mp.hyp1f1(a, mp.mpf(1)/2, z)
        return 2 * g0 ** (q - 1) * mp.gamma(a) * (1 - m)

t, g0 = 2.0, 1.0
lim = i_q_oracle(1 + 1e-9, g0, t)
z = -(t * g0) ** 2 / 4
scaled = (t * g0) ** 2 * f22_quad(z)
printed = (t * g0) ** 2 / 2 * f22_quad(z)
print("I_{Q->1}(t=2)          =", mp.nstr(lim, 20))
print("t^2 G^2 2F2 (scaled)   =", mp.nstr(scaled, 20))
print("t^2 G^2/2 2F2 (printed)=", mp.nstr(printed, 20))
