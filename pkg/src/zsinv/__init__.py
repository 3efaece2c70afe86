"""Zero-sum constants of finite abelian groups and Noether numbers of
monomial representations, computed exactly."""
from .abelian import AbelianGroup, GroupElement, Sequence, is_zero_sum_free, partial_sums, sigma
from .cyclotomic import Cyclotomic, root_of_unity
from .invariants import (
    invariant_basis,
    in_hilbert_ideal,
    noether_k,
    noether_number,
    reynolds,
    top_degree_coinvariants,
    transfer,
)
from .monomial import (
    HeisenbergModule,
    ModuleSpec,
    MonomialMatrix,
    all_characters_module,
    build_heisenberg_module,
    diagonal_module,
)
from .parsing import ParseError, parse_group, parse_module_spec, parse_sequence
from .polynomial import Polynomial
from .zerosum import davenport, davenport_k, factor_k, max_factorization, olson_formula

__version__ = "0.1.0"
