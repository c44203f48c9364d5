"""Phase-covariant anti-cloning: copy the orthogonal complement, many times.

Load qubit 1 with an equatorial superposition (|0> + e^{ia}|1>)/sqrt(2) and
run the machine to the trapping time.  Every qubit's reduced state then
approximates the *complement* (|0> - e^{ia}|1>)/sqrt(2) -- a combined
complement-and-copy operation that a unitary cannot do perfectly on an
unknown state.

At M = 2 with r = sqrt(2)+1 the fidelity hits (1 + 1/sqrt(2))/2, the known
optimum for one-to-two phase-covariant cloning, and the input qubit itself
carries the same fidelity: two output copies from one input, in one step.
"""

import numpy as np

from qcm import (
    IDENTICAL,
    W_PLUS,
    W_PRIME,
    fidelity_curve,
    run_anticlone,
)

report = run_anticlone(2, W_PLUS, alpha=0.0)
print("1 -> 2 anti-cloning at the symmetric ratio:")
print(f"  input-qubit fidelity  = {report.fidelities[0]:.12f}")
print(f"  target-qubit fidelity = {report.fidelities[1]:.12f}")
print(f"  optimum (1+1/sqrt 2)/2 = {0.5 * (1 + 1 / np.sqrt(2)):.12f}")
print()

print("target fidelity versus qubit count (closed forms):")
print("  M    identical   w_plus/w_minus   w_prime")
for m in range(2, 11):
    f_iden = fidelity_curve(m, IDENTICAL)[0]
    f_plus = fidelity_curve(m, W_PLUS)[0]
    f_sep = fidelity_curve(m, W_PRIME)[0]
    print(f"  {m:2d}   {f_iden:.6f}    {f_plus:.6f}         {f_sep:.6f}")
print()
print("asymmetric couplings decay as 1/sqrt(M); identical couplings as 1/M")
print()

print("two routes to M high-fidelity outputs:")
print("  M outputs via w_plus at M qubits == w_prime at M+1 qubits:")
for m in (2, 5, 10):
    same = fidelity_curve(m, W_PLUS)[0] == fidelity_curve(m + 1, W_PRIME)[0]
    print(f"    M={m:2d}: F+ = {fidelity_curve(m, W_PLUS)[0]:.10f}   identical: {same}")
print()

print("where the input qubit ends up:")
for m, scheme in ((3, W_PLUS), (3, W_PRIME)):
    report = run_anticlone(m, scheme)
    print(
        f"  M={m} {scheme.tag:8s}: input fidelity {report.fidelities[0]:.6f}, "
        f"final state {report.classification}"
    )
print("  (w_prime parks the input qubit back in its ground state, fidelity 1/2)")
