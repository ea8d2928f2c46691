"""Entanglement criteria for pairs and triples of qubits built from collective-spin moments."""

__version__ = "0.1.0"
