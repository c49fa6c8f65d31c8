"""Exact large-sieve norms B_1(Q, M) against min(Q^{5/3} + M, Q^{4/3} + Q^{1/2} M, Q^{11/9} + Q^{2/3} M)."""
from cubichecke import norm_C1, sieve_scan

GRID = [20, 40, 80, 160]


def main():
    reps = sieve_scan(GRID, GRID, "B1")
    print(f"{'Q':>5} {'M':>5} {'rows':>5} {'cols':>5} {'B1':>12} {'ratio':>8} {'|B1 - C1|/B1':>13}")
    for r in reps:
        dual = abs(r.lhs - norm_C1(r.M, r.Q)) / r.lhs
        print(f"{r.Q:>5} {r.M:>5} {r.rows:>5} {r.cols:>5} {r.lhs:12.4f} {r.ratio_to_min:8.4f} {dual:13.1e}")


if __name__ == "__main__":
    main()
