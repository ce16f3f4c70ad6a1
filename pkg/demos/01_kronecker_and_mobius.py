"""
Kronecker symbols and the Mobius sieve
======================================

The characters (8d/n) that drive the mean square, and the Mobius
values that weight them.
"""

import numpy as np

from qtlab.arith import kronecker, mertens, mertens_twisted, sieve_mobius

# (8/n) is +1 on n = 1, 7 mod 8 and -1 on n = 3, 5 mod 8
print([kronecker(8, n) for n in range(1, 16, 2)])

# for odd square-free d the character (8d/.) has period 8d and sums to zero
d = 15
vals = np.array([kronecker(8 * d, n) for n in range(1, 8 * d + 1)])
print("period sum:", vals.sum(), " zeros:", (vals == 0).sum())

# one sieve up to a million, one byte per entry
table = sieve_mobius(10**6)
print("mu[1..12] =", table.mu[1:13].tolist())
print("M(10^6) =", mertens(10**6, table))

# the twisted partial sums stay small too
for d in (1, 3, 5, 7):
    print(f"sum mu(n) (8*{d}/n), n <= 10^5:", mertens_twisted(10**5, d, table))
