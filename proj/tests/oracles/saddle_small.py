"""High-precision oracle for the two-eigenvalue saddle equation and the MP law."""
from mpmath import mp, mpf, sqrt, findroot, quad, log, pi

mp.dps = 40

# spectrum {1, 1/2}, n = 2, alpha_n = 1/2, B_n = 1
mu = [mpf(1), mpf(1) / 2]
a, B = mpf(1) / 2, mpf(1)
f = lambda x: sum(1 / (x - m) for m in mu) / 2 - B**2 / (a + sqrt(a**2 + x * B**2))
g = findroot(f, (mpf('1.0000001'), mpf(10)), solver='anderson')
print("gamma", mp.nstr(g, 25))
print("gamma1", mp.nstr((a + sqrt(a**2 + g * B**2)) / (2 * B), 25))
print("gamma2", mp.nstr((-a + sqrt(a**2 + g * B**2)) / (2 * B), 25))

for lam in (mpf(1), mpf(1) / 2):
    dm, dp = (1 - sqrt(lam))**2, (1 + sqrt(lam))**2
    p = lambda x: sqrt((dp - x) * (x - dm)) / (2 * pi * lam * x)
    H = quad(lambda x: log(dp - x) * p(x), [dm, dp])
    C = (1 - 1 / lam) * log(1 + sqrt(lam)) + log(sqrt(lam)) + 1 / sqrt(lam)
    print("lambda", lam, "H(d+)", mp.nstr(H, 20), "C", mp.nstr(C, 20))
    x = dm + (dp - dm) * mpf('0.3')
    print("  cdf at 30% of support", mp.nstr(quad(p, [dm, x]), 20), "x", mp.nstr(x, 20))
    z = mpf(5)
    print("  H(5)", mp.nstr(quad(lambda t: log(z - t) * p(t), [dm, dp]), 20))
