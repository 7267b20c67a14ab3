"""Annihilating-ideal graphs of finite commutative rings and their genus."""

from .aggraph import (
    HypothesisNotMet,
    SubgraphWitness,
    WitnessError,
    build_ag,
    build_zdg,
    export_graph,
    genus_lower_from_witnesses,
    lemma28_witness,
    square_zero_clique_witnesses,
    zero_product_bipartite_witnesses,
)
from .catalog import CatalogEntry, builtin_catalog, lemma28_family_spec
from .decompose import LocalDecomposition, local_decomposition
from .genus import (
    GenusHint,
    GenusResult,
    RotationSystem,
    embedding_genus,
    euler_lower_bound,
    genus_complete,
    genus_complete_bipartite,
    genus_exact,
    genus_upper_search,
    is_planar,
    trace_faces,
)
from .graph import Graph, GraphError, complete_bipartite_graph, complete_graph, graph_from_json
from .ideals import (
    Ideal,
    IdealLattice,
    all_ideals,
    annihilator,
    ideal_product,
    ideal_sum,
    lattice_to_json,
    lemma29_check,
    local_structure,
    maximal_ideals,
    principal_ideal,
)
from .rings import FiniteRing, RingAxiomError, realize, verify_axioms
from .spec import RingSpec, RingSpecError, parse_ring_spec
from .suites import EnumerationReport, VerifyReport, enumerate_by_genus, run_suite

__version__ = "0.1.0"
