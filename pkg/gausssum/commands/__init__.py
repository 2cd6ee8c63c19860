"""
Commands
Subcommand registration for all command groups
"""

from . import field, quantum, reductions, ring, selftest

REGISTRARS = [
    field.register,
    ring.register,
    quantum.register,
    reductions.register,
    selftest.register
]

__all__ = [
    'REGISTRARS'
]
