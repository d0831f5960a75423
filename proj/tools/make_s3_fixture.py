import sympy as sp
from sympy.polys.domains import QQ
from fractions import Fraction
from math import gcd, lcm
import copy, json

x, y = sp.symbols('x y')
gpoly = sp.Poly(y**6 - 6*y**4 + 9*y**2 + 23, y)
alpha = sp.rootof(gpoly.as_expr(), 0)
K = QQ.algebraic_field(alpha)
t_anp = K.convert(alpha)

def linroots(poly, var):
    P = sp.Poly(poly.as_expr(), var, domain=K)
    _, facs = P.factor_list()
    out = []
    for fac, mult in facs:
        assert fac.degree() == 1 and mult == 1
        cs = fac.rep.to_list()
        out.append(-cs[1] / cs[0])
    return out

f = sp.Poly(x**3 - x - 1, x)
roots = linroots(f, x)
images = linroots(gpoly, y)

def coords(a):
    lst = a.to_list()[::-1]
    return [Fraction(int(c.numerator), int(c.denominator)) for c in lst] + [Fraction(0)]*(6-len(lst))

def from_coords(cs):
    acc = K.zero; p_ = K.one
    for c in cs:
        acc = acc + K.convert(sp.Rational(c.numerator, c.denominator))*p_
        p_ = p_*t_anp
    return acc

def subst(a, b):
    cs = a.to_list()[::-1]
    acc = K.zero; p_ = K.one
    for c in cs:
        acc = acc + K.convert(c)*p_
        p_ = p_*b
    return acc

def hnf_int(rows):
    M = [list(r) for r in rows]
    nr = len(M)
    if nr == 0: return []
    nc = len(M[0]); r = 0
    for c in range(nc):
        sel = None
        for i in range(r, nr):
            if M[i][c] != 0: sel = i; break
        if sel is None: continue
        M[r], M[sel] = M[sel], M[r]
        for i in range(r+1, nr):
            while M[i][c] != 0:
                q = M[r][c] // M[i][c]
                M[r] = [a-q*b for a, b in zip(M[r], M[i])]
                M[r], M[i] = M[i], M[r]
        if M[r][c] < 0: M[r] = [-a for a in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            M[i] = [a-q*b for a, b in zip(M[i], M[r])]
        r += 1
    return M[:r]

def lat_canon(rows):
    den = 1
    for row in rows:
        for a in row: den = lcm(den, a.denominator)
    Mi = [[int(a*den) for a in row] for row in rows]
    H = hnf_int(Mi)
    g = den
    for row in H:
        for a in row: g = gcd(g, a)
    if g == 0: g = 1
    return (den//g, [[a//g for a in row] for row in H])

def lat_rows(canon):
    d, H = canon
    return [[Fraction(a, d) for a in row] for row in H]

def intersect(La, Lb):
    d1, H1 = lat_canon(La); d2, H2 = lat_canon(Lb)
    D = lcm(d1, d2)
    A1 = [[a*(D//d1) for a in row] for row in H1]
    A2 = [[a*(D//d2) for a in row] for row in H2]
    n1, n2 = len(A1), len(A2)
    St = []
    for i, row in enumerate(A1 + A2):
        aug = [0]*(n1+n2); aug[i] = 1
        St.append(row[:] + aug)
    nr = len(St); r2 = 0
    for c in range(6):
        sel = None
        for i in range(r2, nr):
            if St[i][c] != 0: sel = i; break
        if sel is None: continue
        St[r2], St[sel] = St[sel], St[r2]
        for i in range(r2+1, nr):
            while St[i][c] != 0:
                q = St[r2][c] // St[i][c]
                St[r2] = [a-q*b for a, b in zip(St[r2], St[i])]
                St[r2], St[i] = St[i], St[r2]
        r2 += 1
    out = []
    for row in St[r2:]:
        xp = row[6:6+n1]
        vv = [sum(xp[i]*A1[i][j] for i in range(n1)) for j in range(6)]
        out.append([Fraction(a, D) for a in vv])
    return out

def mulmat(e):
    rows = []; p_ = K.one
    for i in range(6):
        rows.append(coords(p_*e)); p_ = p_*t_anp
    return rows

def to_sym(rows):
    return sp.Matrix([[sp.Rational(a.numerator, a.denominator) for a in row] for row in rows])

def frac_of(e):
    r = sp.Rational(e)
    return Fraction(int(r.p), int(r.q))

# --- group table alignment ---
idx = {tuple(coords(im)): k for k, im in enumerate(images)}
def comp(a, b):            # index of p_b(p_a(t))
    return idx[tuple(coords(subst(images[b], images[a])))]
T = [[comp(a, b) for b in range(6)] for a in range(6)]
def tpow(a, e):
    r = 0
    for _ in range(e): r = T[r][a]
    return r
def order_of(a):
    e, r = 1, a
    while r != 0:
        r = T[r][a]; e += 1
    return e
orders = [order_of(k) for k in range(6)]

def mulD3(k, l):
    n = 3
    sk, ik = k >= n, k % n
    sl, il = l >= n, l % n
    if not sk and not sl: return (ik+il) % n
    if not sk and sl:     return n + (il-ik) % n
    if sk and not sl:     return n + (ik+il) % n
    return (il-ik) % n

found = None
for rho in range(6):
    if orders[rho] != 3: continue
    for sig in range(6):
        if orders[sig] != 2: continue
        phi = [tpow(rho, i) for i in range(3)]
        phi += [T[sig][phi[j]] for j in range(3)]
        if len(set(phi)) == 6 and all(phi[mulD3(k,l)] == T[phi[k]][phi[l]] for k in range(6) for l in range(6)):
            found = phi; break
    if found: break
assert found
gal_images = [coords(images[found[k]]) for k in range(6)]
print("group assignment:", found)

# --- initial order ---
b0, b1, b2 = roots
delta = (b0-b1)*(b0-b2)*(b1-b2)
assert delta*delta == K.convert(-23)
w = (K.one + delta)/K.convert(2)
Brows = [coords(u*v) for v in [K.one, w] for u in [K.one, b1, b1*b1]]

def order_closed(rows):
    els = [from_coords(r) for r in rows]
    Minv = to_sym(rows).inv()
    for a in els:
        for b in els:
            v = to_sym([coords(a*b)]) * Minv
            if any(sp.Rational(e).q != 1 for e in v): return False
    return True

def disc_of(rows):
    els = [from_coords(r) for r in rows]
    G = sp.zeros(6, 6)
    for i in range(6):
        for j in range(i, 6):
            mm = mulmat(els[i]*els[j])
            tr = sum((mm[k][k] for k in range(6)), Fraction(0))
            G[i, j] = G[j, i] = sp.Rational(tr.numerator, tr.denominator)
    return G.det()

assert order_closed(Brows)
print("disc R0:", disc_of(Brows))

p = 23
for it in range(1, 6):
    els = [from_coords(r) for r in Brows]
    Minv = to_sym(Brows).inv()
    F = []
    for i in range(6):
        v = to_sym([coords(els[i]**p)]) * Minv
        assert all(sp.Rational(e).q == 1 for e in v)
        F.append([int(e) % p for e in v])
    A = [[F[j][i] % p for j in range(6)] for i in range(6)]   # F^T
    Aw = copy.deepcopy(A); piv = {}; r = 0
    for c in range(6):
        sel = None
        for i in range(r, 6):
            if Aw[i][c] % p: sel = i; break
        if sel is None: continue
        Aw[r], Aw[sel] = Aw[sel], Aw[r]
        inv = pow(Aw[r][c], p-2, p)
        Aw[r] = [(a*inv) % p for a in Aw[r]]
        for i in range(6):
            if i != r and Aw[i][c] % p:
                q = Aw[i][c]
                Aw[i] = [(a-q*b) % p for a, b in zip(Aw[i], Aw[r])]
        piv[c] = r; r += 1
    kern = []
    for fc in [c for c in range(6) if c not in piv]:
        vv = [0]*6; vv[fc] = 1
        for c, ri in piv.items(): vv[c] = (-Aw[ri][fc]) % p
        kern.append(vv)
    Irows = [[a*p for a in row] for row in Brows]
    for cvec in kern:
        Irows.append([sum((Fraction(cvec[i])*Brows[i][j] for i in range(6)), Fraction(0)) for j in range(6)])
    Ibasis = lat_rows(lat_canon(Irows))
    cur = None
    for vrow in Ibasis:
        Mj = mulmat(from_coords(vrow))
        Mjinv_s = to_sym(Mj).inv()
        Mjinv = [[frac_of(Mjinv_s[r_, c_]) for c_ in range(6)] for r_ in range(6)]
        Lj = [[sum((vv[k]*Mjinv[k][jj] for k in range(6)), Fraction(0)) for jj in range(6)] for vv in Ibasis]
        cur = Lj if cur is None else intersect(cur, Lj)
    Rrows = lat_rows(lat_canon(cur))
    Tm = to_sym(Rrows).inv() * 1
    growth = abs((to_sym(Brows) * to_sym(Rrows).inv()).det())
    print("iter", it, "index [R':R] =", growth)
    if lat_canon(Rrows) == lat_canon(Brows):
        break
    Brows = Rrows

assert order_closed(Brows)
dmax = disc_of(Brows)
print("disc max order:", dmax, "expect", -23**3)
assert dmax == -23**3

Minv = to_sym(Brows).inv()
for k in range(6):
    imk = from_coords(gal_images[k])
    for row in Brows:
        img = subst(from_coords(row), imk)
        v = to_sym([coords(img)]) * Minv
        assert all(sp.Rational(e).q == 1 for e in v), ("unstable", k)
print("galois stable: ok")

def frac_str(fr):
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"

fixture = {
  "schema": "galmod-problem/1",
  "name": "s3-sextic-x3-x-1",
  "provenance": "splitting field of x^3 - x - 1 (cubic discriminant -23); primitive element t = beta1 - beta2, minimal polynomial y^6 - 6y^4 + 9y^2 + 23; integral basis obtained by saturating the product order Z[beta1].Z[(1+sqrt(-23))/2] at 23 (multiplier-ring iteration), field discriminant -23^3; extension is tame, Galois group S3 realized as the dihedral group of order 6; generated by tools/make_s3_fixture.py",
  "group": {"dihedral": 3},
  "module": {
    "kind": "ring_of_integers",
    "poly": [23, 0, 9, 0, -6, 0, 1],
    "integral_basis": [[frac_str(a) for a in row] for row in Brows],
    "galois_images": [[frac_str(a) for a in row] for row in gal_images]
  },
  "order": "associated",
  "rank": 1
}
with open('s3_sextic.json', 'w') as fh:
    json.dump(fixture, fh, indent=2)
print("integral basis:")
for row in Brows: print(" ", [frac_str(a) for a in row])
print("galois images:")
for row in gal_images: print(" ", [frac_str(a) for a in row])
