"""Equivariant homotopy colimits of finite diagrams, computed exactly."""

__version__ = "0.1.0"

# algebra first: the simplicial layer refers back to groups and functors
from . import algebra as _algebra  # noqa: E402,F401
