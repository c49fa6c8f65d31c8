"""Cubic residue symbols and Gauss sums at the first few primes of Z[zeta_12]."""
import cmath
import math

from cubichecke import gauss_fast_g3, gauss_g3, symbol_def, symbol_fast
from cubichecke.cyclo import SQRT3, CycloInt
from cubichecke.cyclo_ideals import enumerate_ideals_f

BOUND = 200


def main():
    primes = [I for I in enumerate_ideals_f(BOUND, coprime6=True) if len(I.factors) == 1 and I.factors[0][1] == 1]
    tests = [CycloInt(2, 0, 0, 0), CycloInt(5, 0, 0, 0), SQRT3]
    print(f"{'prime':>22} {'N':>5}  (2/p) (5/p) (sqrt3/p)   arg g/2pi   |g|^2/N")
    for P in primes:
        p = P.cyclo
        vals = [symbol_fast(m, p) for m in tests]
        assert vals == [symbol_def(m, p) for m in tests]
        g = gauss_fast_g3(1, p)
        assert abs(g - gauss_g3(1, p)) < 1e-8
        turn = (cmath.phase(g) / (2 * math.pi)) % 1
        print(f"{str(p):>22} {P.norm:>5}  {' '.join(f'{str(v):>5}' for v in vals)}   {turn:9.4f}   {abs(g) ** 2 / P.norm:7.4f}")


if __name__ == "__main__":
    main()
