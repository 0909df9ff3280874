"""Limit free energy on both sides of beta_c; the log potential at d+ is integrated, not taken in closed form."""
from mpmath import mp, mpf, sqrt, quad, log

mp.dps = 40


def limit(beta, lam):
    beta, lam = mpf(beta), mpf(lam)
    bc4 = (1 + lam) ** 2 / lam
    if beta ** 4 < bc4:
        return beta ** 2 / (2 * bc4)
    dm, dp = (1 - sqrt(lam)) ** 2, (1 + sqrt(lam)) ** 2
    p = lambda x: sqrt((dp - x) * (x - dm)) / (2 * mp.pi * lam * x)
    H = quad(lambda x: log(dp - x) * p(x), [dm, dp])
    a = (1 - lam) / (2 * lam)
    B = beta / sqrt(lam * (1 + lam))
    r = sqrt(a ** 2 + dp * B ** 2)
    A = r - a * log((a + r) / (2 * B))
    w = lam / (1 + lam)
    q = (lam - 1) / (lam + 1)
    f = -mpf(1) / 2 + q * log(2) / 2 + q * log(lam) / 4 + log(1 + lam) / 4
    return f + w * A - log(beta) / 2 - w * H / 2


for lam in ("1", "0.5", "0.25"):
    for beta in ("0.5", "2", "3"):
        print(lam, beta, mp.nstr(limit(beta, lam), 20))
    bc = (1 + mpf(lam)) ** mpf("0.5") / mpf(lam) ** mpf("0.25")
    print(lam, "jump at beta_c", mp.nstr(limit(bc * (1 + mpf("1e-30")), lam) - limit(bc * (1 - mpf("1e-30")), lam), 5))
