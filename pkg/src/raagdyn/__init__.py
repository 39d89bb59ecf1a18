"""Growth dynamics of automorphisms of right-angled Artin groups."""
from .automorphism import (
    Automorphism,
    GraphSymmetry,
    Inversion,
    PartialConjugation,
    Transvection,
    apply,
    compose,
    conjugate_by,
    from_generators,
    from_images,
    identity,
    is_positive,
    is_pure,
    is_square,
    mod2_matrix,
    power,
    pure_power,
)
from .diagram import (
    build_diagram,
    components,
    cycle_analysis,
    decompose_image,
    down_set,
    invariant_subgraph,
    terminal_partition,
    trim,
)
from .dynamics import classify_growth, estimate_dilatation, fit_polynomial_degree, iterate_lengths
from .graphs import (
    DirectedGraph,
    SimplicialGraph,
    classify_induced,
    complement_analysis,
    induced_subgraph,
    neighborhood,
    supports_commute,
)
from .words import (
    Word,
    cyclically_reduce,
    normal_form,
    parse_word,
    reduce,
    support_and_length,
    words_equal,
)

__version__ = "0.1.0"
