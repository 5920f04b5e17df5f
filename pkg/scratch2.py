import sys
sys.path.insert(0, "/root/pkg/src")
import numpy as np
from affdress import loopgroup as lg
from affdress import surfaces as sf
from affdress import dressing as dr
from affdress.core import det3, inv3

rng = np.random.default_rng(3)
EPS = lg.EPSILON

print("== A. rank-1 tau_2 structure ==")
alpha = np.exp(1j * 0.77)
b = 0.9 + 0.8j
e = lg.SimpleElement.tau_admissible(alpha, b, lg.ELLIPTIC)
lam = 1.3 * np.exp(0.4j)
g = e(lam)
t = lg.tau_twist(e(1.0 / np.conj(lam)), lg.ELLIPTIC)
ratio = t @ inv3(g)
print("tau2(g(1/lb)) g^-1 =\n", np.round(ratio, 10))
# try scalar -1?
print("dev vs -g:", np.abs(t + g).max())
# try sign=-1 element
e2 = lg.SimpleElement(alpha, lg.ProjLine(b, np.conj(b)), np.sqrt(2*abs(b)**2-1), 1, -1)
g2 = e2(lam)
t2 = lg.tau_twist(e2(1.0 / np.conj(lam)), lg.ELLIPTIC)
print("sign=-1 dev:", np.abs(t2 - g2).max() / np.abs(g2).max())
# 4q matrix: entry (2,3) has -alpha lam^2 b instead of +
def g4q(alpha, b, d, lam):
    D = 2*abs(b)**2 - 1
    a2, a3 = alpha**2, alpha**3
    l2 = lam**2
    bb = np.conj(b)
    M = np.array([
        [a3*abs(b)**2/D, alpha*l2*bb**2/D, a2*lam*bb/D],
        [a2*lam*b**2,    a3*abs(b)**2,     -alpha*l2*b],
        [alpha*l2*b,     a2*lam*bb,        a3],
    ], dtype=complex)
    A = np.diag([d, 1/d, 1.0]).astype(complex)
    return A @ (np.eye(3) + 2.0/(lam**3 - alpha**3) * M)
gq = g4q(alpha, b, np.sqrt(2*abs(b)**2-1), lam)
tq_arg = g4q(alpha, b, np.sqrt(2*abs(b)**2-1), 1.0/np.conj(lam))
tq = lg.tau_twist(tq_arg, lg.ELLIPTIC)
print("4q-matrix tau2 dev:", np.abs(tq - gq).max() / np.abs(gq).max())
print("4q-matrix sigma dev:", np.abs(g4q(alpha,b,np.sqrt(2*abs(b)**2-1),-lam) @ lg.P12 @ gq.T / 1 - lg.P12).max())

print("== B. sixpole entries: localize mismatch ==")
el = lg.SixPoleElement(alpha=0.5 + 0.3j, line2=lg.ProjLine(0.4 - 0.2j, 1.1 + 0.5j), H=-2.0)
lam = 0.9 * np.exp(0.7j)
h1 = el(lam)
h2 = lg.sixpole_entries(el, lam)
with np.printoptions(precision=6, suppress=False):
    print("rel dev per entry:\n", np.abs(h1 - h2) / np.abs(h1))

print("== C. printed 6.2 b~ pairing ==")
a62 = 1j
l62 = lg.ProjLine(-0.5 + 1j, -0.5 - 1j)
x, y = 0.63, -0.41
w = l62.row() @ sf.vacuum_frame(x + 1j*y, a62)
r3 = np.sqrt(3.0)
em = np.exp(y - r3*x); ep = np.exp(y + r3*x)
c1 = -0.75 - r3/2 + 1.5j + 0.75*r3*1j
c2 = -0.75 + r3/2 + 1.5j - 0.75*r3*1j
num_p = c1*em + c2*ep
den_a = (1.5 - r3)*em + (1.5 + r3)*ep
den_b = (1.5 + r3)*em + (1.5 - r3)*ep
print("my b~:", w[0]/w[2])
print("printed (den as printed):", num_p/den_a)
print("printed (den swapped):   ", num_p/den_b)
print("my w3:", w[2], " den_a/2:", den_a/2, " den_b/2:", den_b/2)

print("== D. corrected 5.5 display ==")
el2 = lg.SixPoleElement(alpha=-0.5j, line2=lg.ProjLine(0.5 + np.sqrt(3)/2*1j, 0.0 + 0j), H=-2.0)
z0 = 0.31 - 0.22j; lam0 = np.exp(0.55j)
res6 = dr.dress6(el2, z0)
col = dr._dress6_column(el2, res6, lam0, z0)
Nm, nn = sf.conjugation_matrix(-2.0)
target = Nm @ col

def display(element, res, lam, z, sig1, sig2):
    # sig1 fills the inner "b2~" slots, sig2 the term-2 prefactor
    a = element.alpha; ab = np.conj(a); H = element.H
    b1t = res.line1_tilde.b; c1t = res.line1_tilde.c
    b2t, c2t = res.line2_tilde.b, res.line2_tilde.c
    table = {"b1": b1t, "c1": c1t, "b2": b2t, "c2": c2t}
    u = table[sig1]; v = table[sig2]
    l3 = lam**3; a3 = a**3; ab3 = ab**3
    C = np.sqrt(complex(-2.0*H))
    E = sf.vacuum_frame(z, lam)
    r = -E[:, 2]/H; r_z = lam*E[:, 0]/C; r_zb = E[:, 1]/(lam*C)
    D = 2.0*u*c2t - 1.0
    den1 = (l3*ab3 + 1.0)*D*(l3 + a3)
    den = (l3*ab3 + 1.0)*(l3 + a3)
    t1 = a*l3*b1t*(-2*C*(l3*ab3*D - 1.0)*r_zb + 4*C*ab**2*c2t**2*r_z + 4*H*ab*c2t*r)/den1
    t2 = a**2*v*(4*C*ab*l3*u**2*r_zb + 2*C*(l3*ab3 + 1.0 - 2.0*u*c2t)*r_z + 4*H*ab**2*l3*u*r)/den
    t3 = (-l3 + a3)*(2*C*ab**2*l3*u*r_zb - 2*C*ab*c2t*r_z + H*(l3*ab3 - 1.0)*r)/den
    return t1 + t2 + t3

for sig1, sig2, name in [("b2", "c2", "theorem"), ("c1", "b2", "proof"), ("b2", "c1", "derived")]:
    d = display(el2, res6, lam0, z0, sig1, sig2)
    print(f"  {name}: dev vs col:", np.abs(d - col).max())

print("== E. Hildebrand scale ==")
s = 2.0 ** (-2.0/3.0)
for x0, y0 in [(0.7, 0.3), (1.2, -0.5)]:
    inv = sf.affine_invariants_fd(lambda a, b: s * sf.hildebrand_surface(a, b), x0 + 1j*y0, step=1e-3)
    tgt = sf.hildebrand_metric_factor(x0)
    print(f"  x={x0}: e^psi={np.exp(inv.psi):.10f} target={tgt:.10f} |U|={abs(inv.U):.10f}")

print("== F. residual profile vs |tau| near the 6b wall ==")
from affdress import verify as vf
s62 = np.log((2*r3 - 3)/(3 + 2*r3))
hf = dr.dress3_metric_field(a62, l62)
xs = np.linspace(-2, 2, 41); ys = np.linspace(-2, 2, 5)
X, Y = np.meshgrid(xs, ys, indexing="ij")
res = vf.tzitzeica_residual_field(lambda x, y: hf(x, y), X, Y, step=1e-3)
tau = np.abs(1 - np.exp(2*r3*X + s62))
for i in range(41):
    if tau[i,0] < 1.0:
        print(f"  x={xs[i]:+.2f} |tau|={tau[i,0]:.4f} h={hf(xs[i],0.0):.2f} res={res[i,:].max():.3e}")
print("  overall max where |tau|>0.4:", np.nanmax(np.where(tau > 0.4, res, 0)))
print("  overall max where |tau|>0.25:", np.nanmax(np.where(tau > 0.25, res, 0)))
