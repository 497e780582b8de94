"""Reductions from SAT to red/blue rectangular class cover, with exact
solvers and machine checks for the pieces in between."""

from .formula import Assignment, Clause, Formula, Literal, brute_force_sat, parse_dimacs, validate_nas, write_dimacs
from .instance import Cover, Instance, Layout, parse_cover, parse_instance, write_cover, write_instance
from .kernels import BACKEND
from .reduction import assign_to_cover, augment_abcc, build_bcc, cover_to_assign
from .solver import exact_cover, greedy_cover, min_cover_oriented
from .transform import sat_to_nas

__version__ = "0.1.0"
