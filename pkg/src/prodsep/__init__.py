"""Stallings graphs, covering expansions, p-elementary extensions, and
separators for product cosets of finitely generated subgroups of free groups."""

from .words import Alphabet, free_reduce, invert, is_reduced
from .errors import CapExceeded, InternalInvariantError
from .graphs import LabeledGraph, Path, reduce_path
from .stallings import (
    AttachedImmersion,
    PointedImmersion,
    attach_word,
    contains,
    stallings_graph,
    subgroup_basis,
)
from .covers import (
    CoveringExpansion,
    ExpansionEnumeration,
    enumerate_expansions,
    expand_to_cover,
    transition_group,
)
from .groups import DEFAULT_CAP, CayleyGraph, XGroup, cayley_graph, diagonal_subgroup
from .extensions import (
    ExtensionChain,
    build_extension,
    cayley_graph_ext,
    evaluate_word_ext,
    iterated_extension,
    signed_traversals,
    traversal_element,
)
from .rational import cancellation_closure, member_product, product_automaton
from .separators import (
    Factorization,
    SeparatorWitness,
    common_spine,
    factorize,
    hall_separator,
    image_subgroup,
    product_separator,
    project_path,
)

__all__ = [
    "Alphabet", "free_reduce", "invert", "is_reduced",
    "CapExceeded", "InternalInvariantError",
    "LabeledGraph", "Path", "reduce_path",
    "PointedImmersion", "AttachedImmersion",
    "stallings_graph", "contains", "attach_word", "subgroup_basis",
    "CoveringExpansion", "ExpansionEnumeration",
    "expand_to_cover", "enumerate_expansions", "transition_group",
    "XGroup", "CayleyGraph", "cayley_graph", "diagonal_subgroup", "DEFAULT_CAP",
    "ExtensionChain", "build_extension", "iterated_extension",
    "evaluate_word_ext", "signed_traversals", "traversal_element", "cayley_graph_ext",
    "product_automaton", "cancellation_closure", "member_product",
    "SeparatorWitness", "Factorization",
    "hall_separator", "product_separator", "factorize",
    "project_path", "common_spine", "image_subgroup",
]
