"""Finite dynamical systems as a semiring: sums, products, division, roots
and factorisation, up to isomorphism."""

from .fds import (
    EMPTY,
    ONE,
    Fds,
    FdsFormatError,
    anchor_trees,
    canonical_code,
    classify,
    components,
    cycle,
    fds_sum,
    parse_fds,
    power,
    product,
    read_fds,
    supp,
    truncate,
    write_fds,
)
from .forest import LEAF, CodeError, Forest, Tree, decode_cf, root_join, tree_product
from .unrolling import PeriodicTree, UnrolledFds, reroll, unroll
from .division import DivisionOutcome, divide_by_cancellative, divide_dendrons, divide_trees
from .cycles import Permutation, chinese_witness, perm_kth_root
from .roots import NatPolynomial, NoRootError, check_poly_injectivity, kth_root
from .ldk import LdkError, LinearDendron, factor_ldk
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "EMPTY", "ONE", "Fds", "FdsFormatError", "anchor_trees", "canonical_code",
    "classify", "components", "cycle", "fds_sum", "parse_fds", "power", "product",
    "read_fds", "supp", "truncate", "write_fds", "LEAF", "CodeError", "Forest", "Tree",
    "decode_cf", "root_join", "tree_product", "PeriodicTree", "UnrolledFds", "reroll",
    "unroll", "DivisionOutcome", "divide_by_cancellative", "divide_dendrons", "divide_trees",
    "Permutation", "chinese_witness", "perm_kth_root", "NatPolynomial", "NoRootError",
    "check_poly_injectivity", "kth_root", "LdkError", "LinearDendron", "factor_ldk",
]
