//! Resolvent probes and convergence experiments.
