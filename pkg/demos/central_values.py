"""Central values L(1/2, chi) for the smallest conductors, by AFE and by the smoothed-series oracle."""
import math

from cubichecke import (
    AFEConfig,
    enumerate_cubic_chars,
    lvalue_afe,
    lvalue_direct,
    lvalue_psi_afe,
)
from cubichecke.gaussian import GaussInt

Q_MAX = 200


def main():
    print(f"{'q':>8} {'N(q)':>5} {'L(1/2, chi)':>28} {'|AFE - direct|':>15} {'|W| - 1':>9}")
    for chi in enumerate_cubic_chars(1, Q_MAX):
        r = lvalue_afe(chi)
        d = lvalue_direct(chi)
        print(f"{str(chi.q):>8} {chi.norm:>5} {r.value.real:13.9f}{r.value.imag:+13.9f}i {abs(r.value - d.value):15.2e} {abs(r.root_number) - 1:9.1e}")
    chi = next(iter(enumerate_cubic_chars(100, 200)))
    a = lvalue_afe(chi).value
    b = lvalue_afe(chi, config=AFEConfig(A=2 * math.sqrt(chi.norm))).value
    print(f"\nsplit A = sqrt(N) vs 2 sqrt(N) at N = {chi.norm}: {abs(a - b):.1e}")
    print("\nHecke characters psi_m on Z[zeta_12]:")
    for m in [GaussInt(1, 1), GaussInt(2, 1), GaussInt(3, 2)]:
        r = lvalue_psi_afe(m)
        print(f"  m = {m}: L(1/2, psi_m) = {r.value:.9f}, root number {r.root_number:.6f}")


if __name__ == "__main__":
    main()
