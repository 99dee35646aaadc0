"""30-digit evaluation of the closed-form chain at the one-parameter
operating point. Values printed here are frozen into the C++ tests.

Run: python3 tests/oracles/closed_form_chain.py
"""
from mpmath import mp, mpf, sqrt, exp

mp.dps = 30


def chain(s, sign):
    s = mpf(s)
    absorbed = (mpf("0.9") + mpf("0.1") * s) * s
    emitted = mpf("0.9") * absorbed
    self_recoil = mpf("0.9")
    cross = (mpf("0.8") + mpf("0.1") * s) * s
    n0 = (2 + sign * 2 * s * s) ** mpf("-0.5")
    n_abs = (2 + sign * 2 * absorbed * s) ** mpf("-0.5")
    n_omega = (2 + sign * 2 * cross**2) ** mpf("-0.5")
    n_sp = (2 + 4 * n_omega * n_omega * (self_recoil**2 + sign * emitted * s)) ** mpf("-0.5")
    group = 2 + 2 * self_recoil**2 + sign * 2 * cross**2 + sign * 2 * emitted * s
    k_sup = n_abs * n_sp / sqrt(2) * (n_omega * group + n_omega * group)
    k_mix = n_omega / sqrt(2) * (2 + sign * 2 * cross**2)
    return dict(n0=n0, n_abs=n_abs, n_omega=n_omega, n_sp=n_sp, k_sup=k_sup,
                gamma_sup=k_sup**2, k_mix=k_mix, gamma_mix=k_mix**2)


def show(name, v):
    print(f"{name:32s} {mp.nstr(v, 20)}")


for sign, tag in ((1, "boson"), (-1, "fermion")):
    for k, v in chain("0.7", sign).items():
        show(f"s=0.7 {tag} {k}", v)
for sign, tag in ((1, "boson"), (-1, "fermion")):
    show(f"s=0.5 {tag} gamma_sup", chain("0.5", sign)["gamma_sup"])
show("N_psi_omega(o=0.609) boson", (2 + 2 * mpf("0.609") ** 2) ** mpf("-0.5"))
show("N_psi_omega(o=0.609) fermion", (2 - 2 * mpf("0.609") ** 2) ** mpf("-0.5"))
show("curve G=1.37088 t=1", 1 - exp(-mpf("1.37088")))
show("mixture G=1,2 t=1", 1 - exp(-1) / 2 - exp(-2) / 2)
show("exp(-1/2)", exp(mpf(-0.5)))
