"""Exact finite-scale checks backing the symbolic classifier.

Everything here computes with concrete finitely generated groups: integer
matrices in Smith normal form, Hom and Ext of finite direct sums of cyclic
groups, symmetric 2-cocycles and the extensions they build, the six-term
exact sequence, branded chain-group gadgets, and realization of bounded
layer descriptions. These routines are slow and small on purpose; they
exist so the fast symbolic layer has something independent to agree with.
"""

from .cocycles import (
    CocycleGroupReport,
    SymmetricCocycle,
    class_coordinates,
    class_representatives,
    cocycle_group,
    ext_via_cocycles,
    is_cocycle,
    random_cocycle,
)
from .extensions import (
    ExtensionTable,
    baer_sum,
    cocycle_from_extension,
    extension_from_cocycle,
    extensions_equivalent,
    negate_extension,
    split_extension,
)
from .fg import (
    FgGroup,
    abelian_groups_of_order,
    abelian_groups_up_to,
    ext_via_presentation,
    fg_ext,
    fg_from_presentation,
    fg_hom,
)
from .finite import abelian_type
from .gadget import (
    GadgetConfig,
    chain_element,
    gadget_build,
    gadget_equiv_check,
    tower_law_holds,
)
from .intlinalg import smith_normal_form, unimodular_inverse
from .realize import (
    layer_from_chain,
    power_chain,
    realization_matches,
    realize_bounded,
)
from .sixterm import (
    ShortExactSequence,
    SixTermReport,
    random_short_exact_sequence,
    six_term_check,
)

__all__ = [
    "CocycleGroupReport",
    "ExtensionTable",
    "FgGroup",
    "GadgetConfig",
    "ShortExactSequence",
    "SixTermReport",
    "SymmetricCocycle",
    "abelian_groups_of_order",
    "abelian_groups_up_to",
    "abelian_type",
    "baer_sum",
    "chain_element",
    "class_coordinates",
    "class_representatives",
    "cocycle_from_extension",
    "cocycle_group",
    "ext_via_cocycles",
    "ext_via_presentation",
    "extension_from_cocycle",
    "extensions_equivalent",
    "fg_ext",
    "fg_from_presentation",
    "fg_hom",
    "gadget_build",
    "gadget_equiv_check",
    "is_cocycle",
    "layer_from_chain",
    "negate_extension",
    "power_chain",
    "random_cocycle",
    "random_short_exact_sequence",
    "realization_matches",
    "realize_bounded",
    "six_term_check",
    "smith_normal_form",
    "split_extension",
    "tower_law_holds",
    "unimodular_inverse",
]
