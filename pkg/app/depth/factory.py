"""
Depth Factory for managing singleton instances
"""
from typing import Dict, Optional, Type

from app.depth.base import BaseDepth
from app.depth.halfspace import HalfspaceDepth
from app.depth.mahalanobis import MahalanobisDepth
from app.depth.projection import ProjectionDepth
from app.depth.simplicial import SimplicialDepth
from app.models.depth import DepthKind, DepthSpec


class DepthFactory:
    """Factory class for managing depth instances with singleton pattern"""

    _instances: Dict[DepthSpec, BaseDepth] = {}
    _registry: Dict[DepthKind, Type[BaseDepth]] = {
        DepthKind.HALFSPACE: HalfspaceDepth,
        DepthKind.SIMPLICIAL: SimplicialDepth,
        DepthKind.MAHALANOBIS: MahalanobisDepth,
        DepthKind.PROJECTION: ProjectionDepth,
    }

    @classmethod
    def get_depth(cls, spec: Optional[DepthSpec] = None) -> BaseDepth:
        """Get or create the depth implementation for `spec`"""
        spec = spec or DepthSpec()
        if spec not in cls._instances:
            cls._instances[spec] = cls._registry[spec.kind](spec)
        return cls._instances[spec]

    @classmethod
    def clear_instances(cls):
        """Clear all cached instances (useful for testing)"""
        cls._instances.clear()

    @classmethod
    def get_instance_count(cls) -> int:
        return len(cls._instances)


def get_depth(spec: Optional[DepthSpec] = None) -> BaseDepth:
    return DepthFactory.get_depth(spec)
