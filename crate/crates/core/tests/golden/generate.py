"""Regenerate the evolve golden CSVs from an independent numpy/scipy pipeline.

Propagators come from scipy.linalg.expm, entropies from numpy.linalg.eigvalsh,
marginals from einsum partial traces. Run from this directory:

    python3 generate.py
"""

import numpy as np
from scipy.linalg import expm

EIGEN_FLOOR = 1e-12
ROUNDOFF = 1e-9
DT = 0.05
CASES = [("evolve_r0.6.csv", 0.6, 10.0), ("evolve_r1.4.csv", 1.4, 25.0)]


def bell(alpha):
    psi = np.zeros(4, dtype=complex)
    psi[0], psi[3] = np.cos(alpha), np.sin(alpha)
    return np.outer(psi, psi.conj())


def shannon(p):
    p = p[p > EIGEN_FLOOR]
    return float(-(p * np.log2(p)).sum())


def c_total(rho):
    return shannon(np.real(np.diag(rho))) - max(shannon(np.linalg.eigvalsh(rho)), 0.0)


def marginals(rho):
    t = rho.reshape(2, 2, 2, 2)
    return np.einsum("ijkj->ik", t), np.einsum("ijil->jl", t)


def clamp(x):
    return 0.0 if -ROUNDOFF <= x < 0.0 else x


def row(rho, t):
    a, b = marginals(rho)
    ct = c_total(rho)
    cl = c_total(np.kron(a, b))
    purity = float(np.sum(np.abs(rho) ** 2))
    return [t, clamp(ct), clamp(ct - cl), clamp(cl), purity]


def fmt(x):
    return "0" if x == 0.0 else repr(float(x))


def main():
    rho0 = bell(np.pi / 4)
    for name, r, t_max in CASES:
        h = np.array([[1j * r, 1.0], [1.0, -1j * r]])
        steps = int(np.floor(t_max / DT + 1e-9))
        lines = ["t,C_T,C_G,C_L,purity"]
        for k in range(steps + 1):
            t = k * DT
            u = np.kron(expm(-1j * h * t), np.eye(2))
            rho = u @ rho0 @ u.conj().T
            rho = rho / np.trace(rho).real
            rho = 0.5 * (rho + rho.conj().T)
            lines.append(",".join(fmt(v) for v in row(rho, t)))
        with open(name, "w") as f:
            f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
