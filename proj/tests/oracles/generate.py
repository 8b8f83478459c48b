"""Reference values frozen into the unit tests, computed with mpmath at 40 digits."""
import mpmath as mp

mp.mp.dps = 40


def phi(z):
    return mp.npdf(z)


def cdf(z):
    return mp.ncdf(z)


def show(label, value):
    print(f"{label} = {mp.nstr(value, 17)}")


# normal cdf / quantile
for z in [-38, -10, -3, -1, 0, 0.5, 2, 8.5]:
    show(f"cdf({z})", cdf(z))
for u in [1e-300, 1e-10, 0.025, 0.3, 0.5, 0.975, 1 - mp.mpf("1e-12")]:
    show(f"quantile({u})", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(u) - 1))
for p in [2.5, 3]:
    show(f"abs_moment({p})", 2 ** (mp.mpf(p) / 2) * mp.gamma((mp.mpf(p) + 1) / 2) / mp.sqrt(mp.pi))


# Lloyd fixed point for the N(0,1) quantizer
def lloyd_normal(n, iters):
    x = [mp.sqrt(2) * mp.erfinv(2 * mp.mpf(2 * i + 1) / (2 * n) - 1) for i in range(n)]
    for _ in range(iters):
        mids = [-mp.inf] + [(x[i] + x[i + 1]) / 2 for i in range(n - 1)] + [mp.inf]
        x = [(phi(mids[i]) - phi(mids[i + 1])) / (cdf(mids[i + 1]) - cdf(mids[i])) for i in range(n)]
    mids = [-mp.inf] + [(x[i] + x[i + 1]) / 2 for i in range(n - 1)] + [mp.inf]
    w = [cdf(mids[i + 1]) - cdf(mids[i]) for i in range(n)]
    d = 1 - sum(w[i] * x[i] ** 2 for i in range(n))
    return x, w, d


for n, iters in [(5, 4000), (10, 20000)]:
    x, w, d = lloyd_normal(n, iters)
    print(f"normal N={n} points", [mp.nstr(v, 17) for v in x])
    print(f"normal N={n} weights", [mp.nstr(v, 17) for v in w])
    show(f"normal N={n} distortion", d)

# distortion of a mixture against a grid by adaptive quadrature
mix = [(-0.3, 0.8, 0.25), (0.4, 0.5, 0.45), (1.2, 1.1, 0.30)]
grid = [-1.1, -0.2, 0.35, 0.9, 2.0]
mids = [-mp.inf] + [(mp.mpf(grid[i]) + grid[i + 1]) / 2 for i in range(len(grid) - 1)] + [mp.inf]


def mixture_pdf(u):
    return sum(w * mp.npdf(u, m, s) for m, s, w in mix)


D = 0
G = []
M = []
for j, x in enumerate(grid):
    D += mp.quad(lambda u: (u - x) ** 2 * mixture_pdf(u), [mids[j], mids[j + 1]])
    G.append(mp.quad(lambda u: (x - u) * mixture_pdf(u), [mids[j], mids[j + 1]]))
    M.append(mp.quad(mixture_pdf, [mids[j], mids[j + 1]]))
show("mixture distortion", D)
print("mixture half-gradient", [mp.nstr(v, 17) for v in G])
print("mixture cell masses", [mp.nstr(v, 17) for v in M])

# Euler parameters
x, dt = mp.mpf(100), mp.mpf(1) / 120
show("pseudo-cev m", x + dt * mp.mpf("0.15") * x)
show("pseudo-cev v", mp.sqrt(dt) * mp.mpf("0.5") * x ** mp.mpf("1.5") / mp.sqrt(1 + x * x))
show("black-scholes v", mp.sqrt(dt) * mp.mpf("0.05") * x)


# Black-Scholes put
def bs_put(s, k, r, sig, t):
    s, k, r, sig, t = map(mp.mpf, (s, k, r, sig, t))
    d1 = (mp.log(s / k) + (r + sig ** 2 / 2) * t) / (sig * mp.sqrt(t))
    d2 = d1 - sig * mp.sqrt(t)
    return k * mp.e ** (-r * t) * cdf(-d2) - s * cdf(-d1)


show("bs_put(100,100,.15,.05,1)", bs_put(100, 100, "0.15", "0.05", 1))
show("bs_put(100,130,.15,.40,1)", bs_put(100, 130, "0.15", "0.40", 1))
show("bs_put(100,100,.15,.40,1)", bs_put(100, 100, "0.15", "0.40", 1))


# bounds
def brownian_a(l, dt):
    dt = mp.mpf(dt)
    return (mp.sqrt(2 / mp.pi) * (4 + mp.sqrt(dt)) * (mp.e ** (2 * l * dt) - 1)) ** (mp.mpf(1) / 3)


show("brownian_a(50,0.02)", brownian_a(50, "0.02"))
show("brownian_a(1,0.02)", brownian_a(1, "0.02"))

abs3 = 2 * mp.sqrt(2 / mp.pi)
show("K_3(L=1,dt=1)", 4 * 1 * (1 + 3 + 1) * abs3)
show("K_3(L=1,dt=0.01)", 4 * 1 * (1 + 3 + mp.sqrt(mp.mpf("0.01"))) * abs3)


def a_coeff(l, tk, p, L, lb, ls, dt, x0):
    p, L, dt, x0 = map(mp.mpf, (p, L, dt, x0))
    kap = (p + 1) * (p - 2) / 2 + 2 * p * L
    absp = 2 ** (p / 2) * mp.gamma((p + 1) / 2) / mp.sqrt(mp.pi)
    K = 2 ** (p - 1) * L ** p * (1 + p + dt ** (p / 2 - 1)) * absp
    C = mp.mpf(lb) + mp.mpf(ls) ** 2 / 2
    tl = l * dt
    br = mp.e ** ((kap + K) * tl) * abs(x0) ** p + (mp.e ** (kap * dt) * L + K) / (kap + K) * (mp.e ** ((kap + K) * tl) - 1)
    return mp.e ** (C * (mp.mpf(tk) - tl) / p) * br ** (1 / p)


# theorem bound: black-scholes like constants, n=10, equal sizes 5, k=n
n = 10
tot = 0
for l in range(n + 1):
    tot += a_coeff(l, 1, 3, "0.2", "0.15", "0.2", mp.mpf(1) / n, 100) * (1 if l == 0 else 5) ** -1
show("theorem_bound(bs, n=10, sizes 1,5..5)", tot)
show("a_coeff(l=4,tk=0.8,p=2.5,L=0.3,lb=0.1,ls=0.3,dt=0.1,x0=1.5)", a_coeff(4, "0.8", "2.5", "0.3", "0.1", "0.3", "0.1", "1.5"))
