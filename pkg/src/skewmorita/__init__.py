"""Morita reduction of skew group algebras of quivers with exact cyclotomic arithmetic."""

from .cyclotomic import Cyc, zeta
from .instance import Instance, InstanceValidationError, load_instance, load_instance_file
from .morita import QGQuiver, build_qg
from .reduce import QGPathComb, transport, transport_potential, verify_roundtrip
from .skew import SkewElement, e_tilde

__all__ = [
    "Cyc", "zeta", "Instance", "InstanceValidationError", "load_instance", "load_instance_file",
    "QGQuiver", "build_qg", "QGPathComb", "transport", "transport_potential", "verify_roundtrip",
    "SkewElement", "e_tilde",
]
__version__ = "0.1.0"
