"""Exact moments of random bistochastic matrices, from counting to asymptotics.

Run with ``python demos/exact_moments.py``.  Everything printed is an exact
rational or a rational function of the dimension N.
"""
from liestoch.enumeration import enumerate_table, table_checksums
from liestoch.moments import MomentSpec, closed_form, direct_contraction, exact_moment
from liestoch.ratfunc import laurent_coefficients
from liestoch.weingarten import symbolic_N, wg_u

N = symbolic_N()

# 1. A count table: rows are orbit counts, columns cycle types.
table = enumerate_table("FU", 3)
print("F^U_3 columns:", [str(c) for c in table.columns])
for m, row in zip(table.row_labels, table.entries):
    print(f"  m={m}: {list(row)}")
print("checksums ok:", table_checksums(table)["ok"])

# 2. Combine it with Weingarten values to get a moment at a symbolic N.
print("\nWg^U at order 2:", wg_u([1, 1], N), "and", wg_u([2], N))
m3 = exact_moment(MomentSpec("U", 3, variant="reduced", N=N))
print("reduced <tr M^3> for unitary M:", m3.factored())

# 3. The literal index sum agrees with the table route at a concrete N.
spec = MomentSpec("O", 2, variant="full", N=3)
print("\northogonal <tr M^2> at N=3:", exact_moment(spec), "=", direct_contraction("O", 2, N=3))

# 4. Closed forms for every family, reconstructed from exact values.
for ens, n, quantity in [("U", 5, "trace"), ("O", 2, "singular"), ("AI", 2, "trace"), ("S", 2, "trace")]:
    print(f"{ens:>3} {quantity:>8} n={n}: {closed_form(ens, n, quantity).factored()}")
for alpha in ("0", "1/2"):
    print(f"AIII m_1 at alpha={alpha}: {closed_form('AIII', 1, alpha=alpha).factored()}")

# 5. Large-N expansion: the first nonzero coefficient of a reduced moment is a Catalan number.
for n in (1, 2, 3):
    T = laurent_coefficients(closed_form("U", n, "singular"), n, 2 * n)
    print(f"singular n={n}: T = {[str(t) for t in T]}")
