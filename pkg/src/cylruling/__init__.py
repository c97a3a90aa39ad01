"""Normal rulings of Legendrian fronts on the cylinder, their move
invariance, short-lift expansion, quiver bar decompositions and
non-squeezing certificates."""
from .certify import Certificate, SuspensionSpec, nonsqueeze_certificate, suspension_counts
from .errors import *  # noqa: F401,F403
from .front import (FrontDiagram, builtin_front, compute_maslov, cover, normalize, parse_front, serialize_front,
                    validate_front)
from .moves import MoveSpec, apply_move, available_moves, continue_ruling, fuzz_moves
from .quiver import (BarClass, CyclicQuiverRep, PeriodicComplex, conjugate_random, decompose_linear,
                     decompose_nilpotent_cyclic, decompose_periodic, direct_sum, is_nilpotent, make_bar,
                     periodic_cohomology)
from .rulings import (check_normal, chi, count_circular_rulings, count_disk_rulings, enumerate_circular_rulings,
                      enumerate_disk_rulings, expand_short, eyes, length_spectrum, planar_ruling_count)

__version__ = "0.1.0"
