"""Exact skein, cluster and wavefunction computations."""
