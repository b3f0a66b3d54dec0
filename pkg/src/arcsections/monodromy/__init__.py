"""Permutation and braid monodromy of the fiber roots along loops."""

from .tracking import (
    KERNEL,
    LoopSpec,
    LoopTouchesDiscriminant,
    TrackingCertificate,
    TrackingError,
    certify_avoidance,
    run_loop,
    track_loop,
    tracking_settings,
)
from .braid import BraidWord, ProjectionDegeneracy, compute_braid
from .crossing import (
    CrossingMonodromy,
    arc_loop,
    crossing_monodromies,
    generic_monodromy,
    germ_monodromy,
    transversal_monodromy,
)

__all__ = [
    "KERNEL", "LoopSpec", "LoopTouchesDiscriminant", "TrackingCertificate", "TrackingError",
    "certify_avoidance", "run_loop", "track_loop", "tracking_settings",
    "BraidWord", "ProjectionDegeneracy", "compute_braid",
    "CrossingMonodromy", "arc_loop", "crossing_monodromies", "generic_monodromy",
    "germ_monodromy", "transversal_monodromy",
]
