"""Quantum-assisted electromagnetic transient simulation.

Thin wrapper over the C++ core: Pauli mapping (naive and MLQC), the
variational linear solver with error compensation, and network transients.
"""

from ._qemtp import (
    AssemblyError,
    ConvergenceError,
    InvalidParameter,
    ParseError,
    PauliDecomposition,
    QemtpError,
    SolverError,
    __version__,
    ansatz_state,
    bench_map,
    circuit_accounting,
    compare_csv,
    extend_matrix,
    kronecker_singular_values,
    local_cost,
    mapping_error,
    mlqc_decompose,
    naive_pauli_decompose,
    r_sweep,
    random_symmetric,
    simulate,
    solve,
)

__all__ = [
    "AssemblyError",
    "ConvergenceError",
    "InvalidParameter",
    "ParseError",
    "PauliDecomposition",
    "QemtpError",
    "SolverError",
    "__version__",
    "ansatz_state",
    "bench_map",
    "circuit_accounting",
    "compare_csv",
    "extend_matrix",
    "kronecker_singular_values",
    "local_cost",
    "mapping_error",
    "mlqc_decompose",
    "naive_pauli_decompose",
    "r_sweep",
    "random_symmetric",
    "simulate",
    "solve",
]
