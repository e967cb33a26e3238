"""Geometric k-cut: shortest fences that separate colored polygons."""

from .arrangement import Arrangement, build_arrangement, face_boundary_length, locate_object_faces
from .cut_solvers import (Cut, brute_force_labeling, exact_labeling, isolation_heuristic, lp_lower_bound,
                          max_flow_min_cut, prepare, solve, solve_two_color)
from .dual_graph import AugmentedGraph, DualGraph, add_apexes, build_dual
from .fence import Fence, export_svg, extract_fence, validate_fence
from .generators import GeneratorParams, gen_lower_bound, gen_random
from .geom import (Instance, Point, Polygon, Segment, euclid_length, orientation, point_in_polygon,
                   pt, segment_intersection, validate_instance)
from .io import parse_fence, parse_instance, serialize_fence, serialize_instance
from .steiner_dp import WeightedTree, brute_force_duplication, min_duplication, parse_tree
from .visibility import SegmentSet, corners, free_segments, is_free

__version__ = "0.1.0"
