# Convergence study for the oscillator matrix element.  The closed form is
# (y/2)/sinh(y/2); the truncated two-mode computation approaches it like
# cutoff^-2, so each doubling of the basis buys a factor ~4 in accuracy.

from diracindex import a_closed_form, partition_sum, qho_generating_function

for y in (0.5, 1.0, 2.0):
    closed = a_closed_form(y)
    print(f"\ny = {y}   closed form {closed:.15f}")
    print(f"  partition sum (100 levels) differs by "
          f"{abs(partition_sum(y, 100) - closed):.2e}")
    prev = None
    for cutoff in (20, 30, 40, 60):
        value = qho_generating_function(y, cutoff)
        diff = abs(value - closed)
        ratio = "" if prev is None else f"   improvement x{prev / diff:.2f}"
        print(f"  cutoff {cutoff:>3}: {value:.12f}   |diff| {diff:.3e}{ratio}")
        prev = diff
