"""
multiphase - Source Package

A symbolic engine that derives and verifies the covariant Hamiltonian
structures of first-order classical field theories.
"""

__version__ = "0.3.0"
