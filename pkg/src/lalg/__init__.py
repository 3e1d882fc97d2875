"""Exact computation on finite L-algebras: axioms, closure operators, states, entropy and dynamics."""

from .closure import (
    OperatorPoset,
    UnaryOperator,
    enumerate_closure_operators,
    fixed_points,
    inf_operators,
    is_closure_operator,
    l_a_operator,
    maximal_operators,
    simple_elements,
    sup_operators,
)
from .core import (
    FiniteLAlgebra,
    check_axioms,
    check_derived_laws,
    enumerate_l_algebras,
    induced_order,
    is_homomorphism,
)
from .dynamics import (
    LSystem,
    are_isomorphic,
    entropy_rate,
    is_generator,
    iterated_join,
    system_entropy,
    validate_system,
)
from .entropy import (
    conditional_entropy,
    conditional_info_gain,
    conditionally_independent,
    entropy,
    info_gain,
)
from .errors import (
    AxiomError,
    CapacityError,
    ContractError,
    LAlgebraError,
    StateError,
    StructuralError,
)
from .states import (
    Partition,
    State,
    independent,
    interior_equal,
    interior_subset,
    join,
    odot,
    oplus,
    validate_partition,
    validate_state,
)
from .verify import verify_bundle

__version__ = "0.1.0"
