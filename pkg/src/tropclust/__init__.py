"""Tropical methods for cluster algebras: exact seed mutation, C/G/F data,
periodicity certificates, and classical/quantum dilogarithm identities."""

__version__ = "0.1.0"
