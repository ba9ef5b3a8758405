import math

def H(x):
    if x <= 0 or x >= 1:
        return 0.0
    return -x*math.log2(x) - (1-x)*math.log2(1-x)

def plog2(x):
    return 0.0 if x <= 0 else x*math.log2(x)

def discord_x(r11, r22, r33, r44, a14, a23):
    lam = []
    s = math.sqrt((r11-r44)**2 + 4*a14**2)
    lam += [0.5*((r11+r44)+s), 0.5*((r11+r44)-s)]
    s = math.sqrt((r22-r33)**2 + 4*a23**2)
    lam += [0.5*((r22+r33)+s), 0.5*((r22+r33)-s)]
    base = H(r11+r33) + sum(plog2(l) for l in lam)
    d1 = H(0.5*(1+math.sqrt((1-2*(r33+r44))**2 + 4*(a14+a23)**2)))
    d2 = -sum(plog2(r) for r in (r11, r22, r33, r44)) - H(r11+r33)
    return min(base+d1, base+d2)

def discord_closed(al):
    a2, a4 = al*al, al**4
    ln = math.log
    # printed forms, every log argument in absolute value
    labs = lambda x: ln(abs(x)) if x != 0 else float('-inf')
    if al >= 1.0:
        return 1.0 if al == 1.0 else float('nan')
    q1 = (labs(a4-1) - a4*labs(1-a2) + a2*labs(1-a4) + a2*(a2-2)*labs(a2-1)) / (2*ln(2))
    q2 = (labs(a4-1) - (a4+1)*ln(a4+1) + (a2-2)*a2*labs(a2-1) + (a2+2)*a2*ln(a2+1)) / (2*ln(2))
    return min(q1, q2)

print(f"{'alpha':>8} {'general':>22} {'closed':>22} {'absdiff':>10}")
for al in (0.05, 0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995, 0.999):
    a2, a4 = al*al, al**4
    r11 = r44 = (1+a4)/4
    r22 = r33 = (1-a4)/4
    g = discord_x(r11, r22, r33, r44, a2/2, 0.0)
    c = discord_closed(al)
    print(f"{al:8.3f} {g:22.16f} {c:22.16f} {abs(g-c):10.2e}")
