"""Restricted-path quantization: propagators, mass ladders, field modes and tensor identities."""

__all__ = ["geometry", "paths", "propagator", "spectral", "modes", "maxwell", "kgladder", "errors"]
