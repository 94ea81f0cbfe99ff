"""Dominant sets under families of linear orders, balanced cells, and a
KKM-style approximate fixed-point solver on the standard simplex."""

from .cells import (Census, CellClass, CellKind, census, classify, cofaces_of_one_cell,
                    faces_of_zero_cell, find_balanced, make_coloring, pivot_path, special_pair)
from .errors import (DomcellError, GuardError, InternalConsistencyError, InvalidInstanceError,
                     MapEvaluationError)
from .fixed_point import FixedPointResult, approximate_fixed_point, residual
from .lattice import (AnchorPoint, LatticePoint, LatticeSimplex, anchor_point, build_lattice,
                      check_pseudo_sperner, coordinate_order, kkm_coloring)
from .limits import Guard
from .maps import MapSpec
from .orders import (OrderFamily, SubsetPair, dominance_witness, is_dominant, make_order_family,
                     max_of, min_of)

__version__ = "0.1.0"
