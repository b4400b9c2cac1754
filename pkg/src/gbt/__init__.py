"""Generalized Brauer tree algebras, their tilting complexes and two-sided tilting complexes."""
from .field import RATIONAL, Field
from .tree import GBTree, RootedTree, build_star, parse_tree, random_tree, root_tree, validate
from .algebra import PathAlgebra, build_algebra, build_quiver, cartan_matrix, dim_hom_formula

__version__ = "0.1.0"
