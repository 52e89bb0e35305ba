"""Exact shadows of sparse polytopes and the parametric simplex sweep."""

from .km_cube import KmParams, km_vertex, objective_c, objective_d_u
from .parametric import ParametricPath, gass_saaty_path, shadow_vertex_solve
from .polytope import Box, HPolytope, enumerate_vertices, make_box, make_klee_minty, sparsity
from .shadow import ProjectionPair, hull2d, shadow_of_vertices

__version__ = "0.1.0"
