"""Lattice, classification, witness, planning and monodromy algorithms."""
