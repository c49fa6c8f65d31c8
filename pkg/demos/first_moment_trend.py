"""Smoothed first moment of L(1/2, chi) against the main term C_0 Q w^(0).

Usage: python3 demos/first_moment_trend.py [Q_max]   (default 2000; 8000 takes several minutes)
"""
import sys

from cubichecke import default_constants, first_moment


def main(q_max: int = 2000):
    c = default_constants()
    print(f"C1 = {c.C1.value:.12f}  C2 = {c.C2.value:.12f}  C(3/2) = {c.C_of_3_2.value:.10f}  zeta_F(2) = {c.zetaF2.value:.12f}")
    print(f"C0 = {c.C0.value:.11f}\n")
    print(f"{'Q':>6} {'chars':>6} {'raw sum':>14} {'main term':>12} {'ratio':>8}")
    Q = 500
    while Q <= q_max:
        r = first_moment(Q)
        print(f"{Q:>6} {r.character_count:>6} {r.raw_sum.real:14.6f} {r.main_term:12.6f} {r.ratio:8.4f}")
        Q *= 2


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2000)
