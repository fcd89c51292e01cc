"""Symbolic derivation of the prequantum spin operators on holomorphic sections.

Sphere sector n in stereographic coordinates:
    omega = i hbar n dz ^ dzbar / (1 + zbar z)^2
    K     = n hbar log(1 + zbar z),  theta = -i dK  (the dz part of dK)
    X_f   = (i / (n hbar)) (1 + zbar z)^2 (d_zbar f d_z - d_z f d_zbar)
    P_f   = -i hbar X_f - theta(X_f) + f
applied to holomorphic psi = z^m, for the moment functions J+, J-, J3.

Also checks the Hamiltonian-field convention against omega, the Gram closed
form against a direct integral, and the su(2) relations of the resulting
matrices. Prints the coefficients frozen into `spin.rs`.

Run: python3 spin_prequantum.py
"""

import sympy as sp

z, zb = sp.symbols("z zbar")
hbar, n = sp.symbols("hbar n", positive=True)
m = sp.symbols("m", integer=True, nonnegative=True)

rho = 1 + zb * z
K = n * hbar * sp.log(rho)
theta_z = -sp.I * sp.diff(K, z)  # theta = theta_z dz
omega_coeff = sp.I * hbar * n / rho**2  # omega = omega_coeff dz ^ dzbar

# d theta = d_zbar(theta_z) dzbar ^ dz = -d_zbar(theta_z) dz ^ dzbar
assert sp.simplify(-sp.diff(theta_z, zb) - omega_coeff) == 0, "d theta != omega"

J = {
    "J+": -n * hbar * z / rho,
    "J-": -n * hbar * zb / rho,
    "J3": -n * hbar / 2 * (1 - zb * z) / rho,
}


def field(f):
    pref = sp.I / (n * hbar) * rho**2
    return pref * sp.diff(f, zb), -pref * sp.diff(f, z)  # (X^z, X^zbar)


# Convention check: X_f contracted into omega, (X ⌟ omega) = omega_coeff (X^z dzbar - X^zbar dz).
for name, f in J.items():
    xz, xzb = field(f)
    contraction_dz = -omega_coeff * xzb
    contraction_dzb = omega_coeff * xz
    sign = sp.simplify(contraction_dz / sp.diff(f, z))
    sign_b = sp.simplify(contraction_dzb / sp.diff(f, zb))
    print(f"{name}: X_f ⌟ omega = ({sign}) df   [components agree: {sp.simplify(sign - sign_b) == 0}]")


def prequantum(f, psi):
    xz, xzb = field(f)
    x_psi = xz * sp.diff(psi, z) + xzb * sp.diff(psi, zb)
    return sp.simplify(-sp.I * hbar * x_psi - theta_z * xz * psi + f * psi)


print()
psi = z**m
for name, f in J.items():
    out = sp.simplify(sp.expand(prequantum(f, psi)))
    holo = sp.simplify(sp.diff(out, zb)) == 0
    print(f"P[{name}] z^m = {sp.factor(out)}   (holomorphic: {holo})")

# Differential-operator form on a generic holomorphic function.
phi = sp.Function("phi")(z)
print()
for name, f in J.items():
    print(f"P[{name}] phi = {sp.simplify(prequantum(f, phi))}")

# Gram closed form against the integral (1/pi) int R dR dTheta R^(2m) / (1 + R^2)^(n+2).
R = sp.symbols("R", positive=True)
print()
for nn in range(0, 5):
    for mm in range(0, nn + 1):
        integral = 2 * sp.integrate(R ** (2 * mm + 1) / (1 + R**2) ** (nn + 2), (R, 0, sp.oo))
        closed = sp.gamma(1 + mm) * sp.gamma(1 + nn - mm) / sp.gamma(nn + 2)
        assert sp.simplify(integral - closed) == 0
print("Gram closed form matches the integral for n <= 4")

# Matrices on z^0..z^nn and the su(2) relations, for a few sectors.
def matrices(nn):
    dim = nn + 1
    mats = {}
    for name, f in J.items():
        M = sp.zeros(dim, dim)
        for col in range(dim):
            img = sp.expand(prequantum(f.subs(n, nn), z**col).subs(n, nn))
            poly = sp.Poly(img, z)
            for (deg,), c in poly.terms():
                assert deg <= nn, "image leaves the sector"
                M[deg, col] = sp.simplify(c)
        mats[name] = M
    return mats


for nn in range(0, 5):
    Mt = matrices(nn)
    Jp, Jm, J3 = Mt["J+"], Mt["J-"], Mt["J3"]
    assert sp.simplify(J3 * Jp - Jp * J3 - hbar * Jp) == sp.zeros(nn + 1)
    assert sp.simplify(J3 * Jm - Jm * J3 + hbar * Jm) == sp.zeros(nn + 1)
    assert sp.simplify(Jp * Jm - Jm * Jp - 2 * hbar * J3) == sp.zeros(nn + 1)
    cas = sp.simplify(J3 * J3 + (Jp * Jm + Jm * Jp) / 2)
    j = sp.Rational(nn, 2)
    assert sp.simplify(cas - hbar**2 * j * (j + 1) * sp.eye(nn + 1)) == sp.zeros(nn + 1)
print("su(2) relations and Casimir hbar^2 j(j+1), j = n/2, hold for n <= 4")
