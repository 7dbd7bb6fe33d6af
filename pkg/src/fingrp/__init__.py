from src.fingrp.constructors import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    direct_product_all,
    quaternion,
    symmetric,
    trivial_group,
)
from src.fingrp.group import (
    FiniteGroup,
    GroupAxiomError,
    GroupHom,
    NotHomomorphismError,
    NotNormalError,
    PairOfGroups,
    Subgroup,
)
from src.fingrp.sections import (
    AbelianSection,
    abelian_section,
    abelianization,
    induced_abelian_hom,
    section_hom,
)
from src.fingrp.subgroups import (
    center,
    commutator_subgroup,
    find_complement,
    lower_central_series,
    normal_closure,
    normal_subgroups,
    preimage,
    quotient,
    relative_series,
    subgroup_as_group,
    subgroup_generated,
    subgroup_lattice,
)

__all__ = [
    "AbelianSection",
    "FiniteGroup",
    "GroupAxiomError",
    "GroupHom",
    "NotHomomorphismError",
    "NotNormalError",
    "PairOfGroups",
    "Subgroup",
    "abelian_section",
    "abelianization",
    "alternating",
    "center",
    "commutator_subgroup",
    "cyclic",
    "dihedral",
    "direct_product",
    "direct_product_all",
    "find_complement",
    "induced_abelian_hom",
    "lower_central_series",
    "normal_closure",
    "normal_subgroups",
    "preimage",
    "quaternion",
    "quotient",
    "relative_series",
    "section_hom",
    "subgroup_as_group",
    "subgroup_generated",
    "subgroup_lattice",
    "symmetric",
    "trivial_group",
]
