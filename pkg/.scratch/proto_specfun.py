import math
import mpmath as mp

# --- Dawson via Rybicki ---
def dawson(x):
    if x < 0:
        return -dawson(-x)
    if x <= 0.5:
        total = term = x
        k = 0
        while abs(term) > 1e-18 * abs(total):
            term *= -2.0 * x * x / (2 * k + 3)
            total += term
            k += 1
        return total
    h = 0.2
    n_c = x / h
    total = 0.0
    n_lo = int(math.floor((x - 12.0) / h))
    n_hi = int(math.ceil((x + 12.0) / h))
    for n in range(n_lo, n_hi + 1):
        if n % 2 == 0 or n == 0:
            continue
        d = x - n * h
        total += math.exp(-d * d) / n
    return total / math.sqrt(math.pi)

print("Dawson check:")
for x in (0.1, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 25.0, 50.0):
    ref = float(mp.sqrt(mp.pi) / 2 * mp.exp(-mp.mpf(x) ** 2) * mp.erfi(x))
    got = dawson(x)
    print(f"  x={x:6.2f}  rel_err={abs(got-ref)/abs(ref):.3e}")

# --- 2F2({1,1};{3/2,2}; z): direct series for small |z|, Poisson-CDF resummation beyond ---
def f22_direct(z, rel_tol=1e-13, max_terms=10000):
    total = term = 1.0
    comp = 0.0
    prev_small = False
    for k in range(max_terms):
        term *= (1 + k) * z / ((1.5 + k) * (2 + k))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = abs(term) <= rel_tol * abs(total)
        if small and prev_small and k >= abs(z):
            return total
        prev_small = small
    raise RuntimeError("max_terms")

def f22_poisson(z, rel_tol=1e-13, max_terms=20000):
    u = -z
    lnu = math.log(u)
    total = 0.0
    comp = 0.0
    cdf = 0.0
    for k in range(max_terms):
        lp = -u + k * lnu - math.lgamma(k + 1)
        if lp > -745.0:
            cdf += math.exp(lp)
        p = 1.0 - cdf
        if p < 0.0:
            p = 0.0
        term = p / (2 * k + 1)
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if k > u and term <= rel_tol * total:
            return total / u
    raise RuntimeError("max_terms")

def f22(z):
    if z == 0:
        return 1.0
    return f22_direct(z) if z > -8.0 else f22_poisson(z)

print("2F2 check:")
for z in (-1e-8, -0.5, -1.0, -4.0, -7.9, -8.1, -25.0, -100.0, -400.0, -900.0, -2500.0):
    x = mp.sqrt(-mp.mpf(z))
    ref = float(2 / x ** 2 * mp.quad(lambda w: mp.sqrt(mp.pi) / 2 * mp.exp(-w ** 2) * mp.erfi(w), [0, x]))
    got = f22(z)
    print(f"  z={z:10.2f}  rel_err={abs(got-ref)/abs(ref):.3e}")

# --- d 2F2/dz: shifted series small |z|; identity (1/u)2F2(-u) - D(sqrt u)/u^1.5 beyond ---
def df22_direct(z, rel_tol=1e-13, max_terms=10000):
    total = term = 1.0 / 3.0
    comp = 0.0
    prev_small = False
    for k in range(max_terms):
        term *= (2 + k) * (2 + k) * z / ((2.5 + k) * (3 + k) * (1 + k))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = abs(term) <= rel_tol * abs(total)
        if small and prev_small and k >= abs(z):
            return total
        prev_small = small
    raise RuntimeError("max_terms")

def df22(z):
    if z == 0:
        return 1.0 / 3.0
    if z > -8.0:
        return df22_direct(z)
    u = -z
    return f22_poisson(z) / u - dawson(math.sqrt(u)) / u ** 1.5

print("d2F2/dz check (vs mpmath diff):")
for z in (-0.5, -4.0, -7.9, -8.1, -25.0, -400.0, -2500.0):
    ref = float(mp.diff(lambda s: mp.hyper([1, 1], [mp.mpf(3)/2, 2], s), mp.mpf(z)))
    got = df22(z)
    print(f"  z={z:10.2f}  rel_err={abs(got-ref)/abs(ref):.3e}")

# --- scaled Kummer series for 1F1 ---
def _series(a, b, z, rel_tol=1e-13, max_terms=10000):
    total = 1.0
    comp = 0.0
    term = 1.0
    n2 = 0
    prev_small = False
    for k in range(max_terms):
        term *= (a + k) * z / ((b + k) * (k + 1.0))
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
        small = abs(term) <= rel_tol * abs(total)
        if small and prev_small:
            return total, n2
        prev_small = small
        if abs(total) > 1e250 or abs(term) > 1e250:
            total = math.ldexp(total, -1024)
            term = math.ldexp(term, -1024)
            comp = math.ldexp(comp, -1024)
            n2 += 1024
    raise RuntimeError("max_terms")

def hyp1f1(a, b, z):
    if z == 0.0:
        return 1.0
    if z > 0.0 or -z <= 1.0:
        total, n2 = _series(a, b, z)
        return math.ldexp(total, n2) if n2 else total
    total, n2 = _series(b - a, b, -z)
    if n2 == 0 and z > -700.0:
        return math.exp(z) * total
    if total == 0.0:
        return 0.0
    mag = z + math.log(abs(total)) + n2 * math.log(2.0)
    if mag < -745.0:
        return 0.0
    return math.copysign(math.exp(mag), total)

print("1F1 check:")
cases = [(1, 0.5, -25), (-0.25, 0.5, -2500), (0.75, 0.5, -2500), (1.5, 0.5, -900),
         (0.5, 0.5, -50), (1.0, 1.5, -2500), (2.5, 1.5, -625), (-1.0, 0.5, -100),
         (0.25, 0.5, 50), (-0.5, 1.5, 30), (3.0, 0.5, -0.5), (0.0, 0.5, -3.0)]
for a, b, z in cases:
    ref = float(mp.hyp1f1(mp.mpf(a), mp.mpf(b), mp.mpf(z)))
    got = hyp1f1(a, b, z)
    err = abs(got - ref) / max(abs(ref), 1e-300) if ref != 0 else abs(got)
    print(f"  a={a:6.2f} b={b:4.1f} z={z:8.1f}  rel_err={err:.3e}")
