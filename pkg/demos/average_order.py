"""Partial sums of phi_k and their main term C_k x^(k+1) / (k+1).

Two independent exact methods compute the same integers: a direct sieve
over 1..x, and a divisor-sum rearrangement using exact power sums. The
normalized error shrinks as x grows.
"""
from phik import (
    average_order_constant,
    error_table_csv,
    error_term_rows,
    faulhaber_sum,
    sum_phi_k_direct,
    sum_phi_k_convolution,
)

print("Exact power sums feed the rearranged method:")
print("  1^3 + ... + 100^3 =", faulhaber_sum(3, 100))

print()
print("Both methods, k = 2:")
for x in (10, 100, 1000, 10**4):
    direct = sum_phi_k_direct(2, x)
    conv = sum_phi_k_convolution(2, x)
    print(f"  x = {x:>6}: direct = {direct.value:>16}  "
          f"rearranged = {conv.value:>16}  equal = {direct.value == conv.value}")

print()
enclosure = average_order_constant(2, 10**5)
print(f"Constant C_2 enclosed in [{enclosure.lo:.9f}, {enclosure.hi:.9f}]")

print()
print("Error against the main term, k = 2 (delta uses the enclosure midpoint):")
rows = error_term_rows(2, [100, 1000, 10**4, 10**5], prime_bound=10**5)
print(error_table_csv(rows))

print("The last column divides |delta| by x^k log(x)^(k+1); boundedness is")
print("what the asymptotic error bound predicts.")
