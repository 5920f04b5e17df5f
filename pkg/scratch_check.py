"""Scratch validation of the math core before freezing tests (not shipped)."""
import sys
sys.path.insert(0, "/root/pkg/src")
import numpy as np

from affdress import loopgroup as lg
from affdress import surfaces as sf
from affdress import dressing as dr
from affdress import verify as vf
from affdress.core import det3, inv3

rng = np.random.default_rng(7)
EPS = lg.EPSILON

def rc(scale=1.0):
    return complex(rng.normal(0, scale), rng.normal(0, scale))

print("== 1. vacuum frame basics ==")
for _ in range(5):
    z, lam = rc(0.8), np.exp(1j * rng.uniform(0, 2 * np.pi)) * rng.uniform(0.5, 2.0)
    E = sf.vacuum_frame(z, lam)
    E2 = sf.vacuum_frame_f_form(z, lam)
    print("  E(0)=I dev:", np.abs(sf.vacuum_frame(0, lam) - np.eye(3)).max(),
          "| det-1:", abs(det3(E) - 1),
          "| f-form dev:", np.abs(E - E2).max())
    lhs = inv3(E) @ sf.vacuum_frame_dz(z, lam)
    print("  E^-1 dE = lam P132 dev:", np.abs(lhs - lam * lg.P132).max())

print("== 2. check_twisted on vacuum (hyperbolic) ==")
for _ in range(3):
    z = rc(0.7)
    lams = [np.exp(1j * rng.uniform(0, 2 * np.pi)) * rng.uniform(0.6, 1.6) for _ in range(4)]
    dev = lg.check_twisted(lambda l: sf.vacuum_frame(z, l), lg.HYPERBOLIC, lams)
    print("  dev:", dev)

print("== 3. simple element identities ==")
worst = dict(det=0.0, p2=0.0, p3=0.0, sig=0.0, ker=0.0)
for _ in range(50):
    alpha = rc(1.0)
    if abs(alpha) < 0.3: continue
    line = lg.ProjLine(rc(1.0), rc(1.0))
    d = rc(1.0)
    if abs(d) < 0.3: continue
    sign = 1 if rng.random() < 0.5 else -1
    lam = rc(1.5)
    try:
        e1 = lg.SimpleElement(alpha, line, d, 1, sign)
        e2 = lg.SimpleElement(alpha, line, d, 2, sign)
        g1, g2 = e1(lam), e2(lam)
    except Exception:
        continue
    worst["det"] = max(worst["det"], abs(det3(g1) - e1.det(lam)) / abs(e1.det(lam)),
                       abs(det3(g2) - e2.det(lam)) / abs(e2.det(lam)))
    ratio = (lam**3 + alpha**3) / (lam**3 - alpha**3)
    worst["p2"] = max(worst["p2"], np.abs(g2 - ratio * e1(-lam)).max() / np.abs(g2).max())
    # Prop 4.2(3): A g_{a,l}(lam) = g_{a, l A^-1}(lam) A
    A = e1.A
    lA = lg.ProjLine(line.b / d * (1/sign if sign==-1 else 1), line.c * d * (1/sign if sign==-1 else 1)) if sign == -1 else lg.ProjLine(line.b / d, line.c * d)
    # l A^-1 = (b/d, c*d, 1/sign) ~ (sign*b/d, sign*c*d, 1); sign=+-1
    lA = lg.ProjLine(sign * line.b / d, sign * line.c * d)
    rhs = lg.rank1_loop(alpha, lA, lam) @ A
    worst["p3"] = max(worst["p3"], np.abs(g1 - rhs).max() / np.abs(g1).max())
    worst["sig"] = max(worst["sig"], np.abs(e1(-lam) @ lg.P12 @ e1(lam).T - lg.P12).max(),
                       np.abs(e2(-lam) @ lg.P12 @ e2(lam).T - lg.P12).max())
    # kernel: g(-a) P12 l^t = 0 (rank-1, Eq 4d context)
    ker = lg.rank1_loop(alpha, line, -alpha) @ lg.P12 @ line.row()
    worst["ker"] = max(worst["ker"], np.abs(ker).max())
print(" ", worst)

print("== 4. tau-admissible elements pass check_twisted ==")
alpha = np.exp(1j * 0.77)
b = 0.9 + 0.8j
e_ell = lg.SimpleElement.tau_admissible(alpha, b, lg.ELLIPTIC)   # rank 1
e_hyp = lg.SimpleElement.tau_admissible(alpha, b, lg.HYPERBOLIC) # rank 2
lams = [np.exp(1j * 0.3) * 1.2, np.exp(1j * 2.1) * 0.8, np.exp(-1j * 1.2) * 1.5]
print("  rank1 elliptic:", lg.check_twisted(e_ell, lg.ELLIPTIC, lams))
print("  rank2 hyperbolic:", lg.check_twisted(e_hyp, lg.HYPERBOLIC, lams))

print("== 5. six-pole: entries oracle + tau reality + trivial line ==")
el = lg.SixPoleElement(alpha=-0.5j, line2=lg.ProjLine(0.5 + np.sqrt(3)/2*1j, 0.0+0j), H=-2.0)
print("  d^2:", el.d**2, " expected:", 1921/5041)
dev = 0.0
for _ in range(20):
    lam = rc(1.3)
    try:
        h1 = el(lam)
        h2 = lg.sixpole_entries(el, lam)
    except Exception:
        continue
    dev = max(dev, np.abs(h1 - h2).max() / np.abs(h1).max())
print("  entries vs product rel dev:", dev)
print("  tau reality:", lg.check_twisted(el, el.spec, lams))
elt = lg.SixPoleElement(alpha=0.45+0.2j, line2=lg.ProjLine(1.0+0j, 1.0+0j), H=-2.0)
print("  trivial line1:", elt.line1, " d:", elt.d)

print("== 6. Example 6.2 transport + AC-1 metric ==")
a62 = 1j
l62 = lg.ProjLine(-0.5 + 1j, -0.5 - 1j)
def bt_printed(x, y):
    em = np.exp(y - np.sqrt(3) * x); ep = np.exp(y + np.sqrt(3) * x)
    num = (-0.75 - np.sqrt(3)/2 + 1.5j + 0.75*np.sqrt(3)*1j) * em + \
          (-0.75 + np.sqrt(3)/2 + 1.5j - 0.75*np.sqrt(3)*1j) * ep
    den = (1.5 - np.sqrt(3)) * em + (1.5 + np.sqrt(3)) * ep
    return num / den
dev_b = 0.0; dev_c = 0.0
for _ in range(30):
    x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
    lt = dr.transport_line3(l62, sf.vacuum_frame(x + 1j*y, a62))
    dev_b = max(dev_b, abs(lt.b - bt_printed(x, y)) / abs(lt.b))
    dev_c = max(dev_c, abs(lt.c - np.conj(lt.b)))
print("  printed b~ rel dev:", dev_b, "| c~-conj(b~):", dev_c)

def h_6b(x):
    r3 = np.sqrt(3.0)
    num = 3 * ((7 - 4*r3) * np.exp(4*r3*x) + 4 * np.exp(2*r3*x) + 4*r3 + 7)
    den = ((2*r3 - 3) * np.exp(2*r3*x) - (2*r3 + 3)) ** 2
    return num / den
hf = dr.dress3_metric_field(a62, l62)
xs = np.linspace(-2, 2, 41); ys = np.linspace(-2, 2, 41)
X, Y = np.meshgrid(xs, ys, indexing="ij")
H = hf(X, Y)
dev = np.nanmax(np.abs(H - h_6b(X)) / np.abs(h_6b(X)))
print("  AC-1 h vs 6b max rel dev:", dev, " h(0,0):", hf(0.0, 0.0))

print("== 7. AC-2 one-soliton ==")
s = np.log((2*np.sqrt(3) - 3) / (3 + 2*np.sqrt(3)))
p1 = vf.SolitonParams(k1=np.sqrt(3), s1=s)
ht = vf.tau_one_soliton_h(X + 1j*Y, p1)
print("  dress3 h vs tau h max rel dev:", np.nanmax(np.abs(H - ht) / np.abs(ht)))

print("== 8. Example 6.3(1): m-element alpha=i == g-element alpha=-i ==")
a631 = -1j  # rank-1 pole convention
l631 = lg.ProjLine(1 + 1j, 1 - 1j)
hf2 = dr.dress3_metric_field(a631, l631)
# printed tau and conjugated-parameter two-soliton
r3 = np.sqrt(3.0)
def tau_printed(x, y):
    return 1 + r3/3*np.exp(r3*x - 3*y) - r3/3*np.exp(-r3*x - 3*y)
p2 = vf.SolitonParams(k1=(r3 + 3j)/2, s1=np.log(r3/3),
                      k2=(-r3 + 3j)/2, s2=np.log(r3/3) + 1j*np.pi)
zg = X + 1j*Y
tau_devs = np.abs(vf.tau_two_soliton(zg, p2) - tau_printed(X, Y))
print("  conj-params tau vs printed: max abs dev:", tau_devs.max())
p2_paper = vf.SolitonParams(k1=(r3 - 3j)/2, s1=np.log(r3/3),
                            k2=(-r3 - 3j)/2, s2=np.log(r3/3) + 1j*np.pi)
tau_paper = vf.tau_two_soliton(zg, p2_paper)
print("  paper-params tau vs printed: max abs dev:", np.abs(tau_paper - tau_printed(X, Y)).max(),
      " vs y-flipped printed:", np.abs(tau_paper - tau_printed(X, -Y)).max())
H2 = hf2(X, Y)
ht2 = vf.tau_two_soliton_h(zg, p2)
print("  dress3 h vs tau h: max abs dev:", np.nanmax(np.abs(H2 - ht2)))
print("  h2(0,0):", hf2(0.0, 0.0))
# phi closed form
def phi_printed(x, y):
    return 0.5*np.exp(2*y) + r3/6*np.exp(r3*x - y) - r3/6*np.exp(-r3*x - y)
devp = 0.0
for _ in range(20):
    x, y = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
    phi, _, _ = dr.dressing_scale_solution(a631, l631, x + 1j*y)
    devp = max(devp, abs(phi - phi_printed(x, y)))
print("  phi vs printed (scale 1/2*(lE)_3):", devp)

print("== 9. realify calibration: vacuum invariants through real_immersion ==")
lam0 = np.exp(0.35j)
def vac_imm(x, y):
    E = sf.vacuum_frame(x + 1j*y, lam0)
    return sf.real_immersion(E[:, 2], -2.0)
for pt in [(0.2, -0.3), (0.5, 0.8)]:
    inv = sf.affine_invariants_fd(vac_imm, pt[0] + 1j*pt[1], step=1e-3)
    print("  psi:", inv.psi, " |U|:", abs(inv.U), " conf:", inv.conformal_residual)

print("== 10. AC-7: dress3 immersion invariants ==")
lam0 = np.exp(0.9j)
def imm(x, y):
    return dr.dress3_immersion(a631, l631, lam0, x + 1j*y)
for pt in [(0.3, 0.2), (-0.4, 0.5)]:
    res = dr.dress3_point(a631, l631, pt[0] + 1j*pt[1])
    inv = sf.affine_invariants_fd(imm, pt[0] + 1j*pt[1], step=1e-3)
    print("  e^psi:", np.exp(inv.psi), " target h:", res.h, " |U|:", abs(inv.U))

print("== 11. residue + lambda-linearity + dressed check_twisted ==")
for _ in range(3):
    z = rc(0.6); al = rc(1.0)
    if abs(al) < 0.3: continue
    line = lg.ProjLine(rc(1.0), rc(1.0))
    print("  residue:", dr.factorization_residue3(al, line, z, d_tilde=1.0 + 0.3j))
fr = lambda z, l: dr.dressed_frame3(a631, l631, z, l)
lams4 = [np.exp(1j*t) for t in (0.2, 1.1, 2.3, 4.0)]
print("  lam-linearity:", dr.lambda_linearity_residual(fr, 0.21 + 0.13j, lams4))
print("  dressed check_twisted:", lg.check_twisted(lambda l: fr(0.21 + 0.13j, l), lg.HYPERBOLIC, lams4))

print("== 12. six-pole dressing: h vs printed tau (Example 6.3(2)) ==")
def tau632(x, y):
    c = 45/26 - 55*np.sqrt(3)/78*1j
    E1 = np.exp(15/4*y - 5/4*r3*x + 9/4*1j*x + 3/4*r3*1j*y)
    E2 = np.exp(15/4*y - 5/4*r3*x - 9/4*1j*x - 3/4*r3*1j*y)
    E3 = np.exp(15/2*y - 5/2*r3*x)
    return 1 + c*E1 + np.conj(c)*E2 + E3
p632 = vf.SolitonParams(k1=-r3/4 - 0.75j, s1=np.log(complex(135, -55*np.sqrt(3))/78),
                        k2=-r3 - 3j, s2=np.log(complex(135, 55*np.sqrt(3))/78))
xs3 = np.linspace(-1.5, 1.5, 21); ys3 = np.linspace(-1.5, 1.5, 21)
X3, Y3 = np.meshgrid(xs3, ys3, indexing="ij")
z3 = X3 + 1j*Y3
print("  6d-params tau vs printed: max dev:", np.abs(vf.tau_two_soliton(z3, p632) - tau632(X3, Y3)).max())
hf6 = dr.dress6_metric_field(el)
H6 = hf6(X3, Y3)
ht6 = vf.tau_two_soliton_h(z3, p632)
print("  dress6 h vs tau h: max abs dev:", np.nanmax(np.abs(H6 - ht6)), " h(0,0):", hf6(0.0,0.0))

print("== 13. dress6 immersion display readings ==")
z0 = 0.31 - 0.22j; lam0 = np.exp(0.55j)
res6 = dr.dress6(el, z0)
col = dr._dress6_column(el, res6, lam0, z0)
Nm, nn = sf.conjugation_matrix(-2.0)
target = Nm @ col
for reading in ("proof", "theorem"):
    disp = dr.dress6_immersion_display(el, res6, lam0, z0, reading)
    print(f"  reading={reading}: dev vs N@col:", np.abs(disp - target).max(), " / col dev:", np.abs(disp - col).max())

print("== 14. dress6 invariants + trivial dressing ==")
def imm6(x, y):
    return dr.dress6_immersion(el, lam0, x + 1j*y)
for pt in [(0.25, 0.1)]:
    r6 = dr.dress6(el, pt[0] + 1j*pt[1])
    inv = sf.affine_invariants_fd(imm6, pt[0] + 1j*pt[1], step=1e-3)
    print("  e^psi:", np.exp(inv.psi), " target h:", r6.h, " |U|:", abs(inv.U))
for _ in range(5):
    z = rc(1.0)
    rt = dr.dress6(elt, z)
    print("  trivial lines:", abs(rt.line1_tilde.b - 1), abs(rt.line1_tilde.c - 1),
          abs(rt.line2_tilde.b - 1), abs(rt.line2_tilde.c - 1), " h:", rt.h)

print("== 15. Hildebrand invariants ==")
for x0, y0 in [(0.7, 0.3), (1.2, -0.5), (0.45, 1.0)]:
    inv = sf.affine_invariants_fd(lambda a, b: sf.hildebrand_surface(a, b), x0 + 1j*y0, step=1e-3)
    tgt = sf.hildebrand_metric_factor(x0)
    print(f"  x={x0}: e^psi={np.exp(inv.psi):.8f} target={tgt:.8f} |U|={abs(inv.U):.8f} conf={inv.conformal_residual:.2e}")

print("== 16. residual scans ==")
hfn1 = dr.dress3_metric_field(a62, l62)
res = vf.tzitzeica_residual_field(lambda x, y: hfn1(x, y), X, Y, step=1e-3)
# mask near the phi-wall
print("  AC-1 field residual: max (unmasked):", np.nanmax(res), " nodes:", res.size)
