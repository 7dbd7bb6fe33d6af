from src.abgrp.functors import tensor, tor, wedge2, wedge2_map
from src.abgrp.groups import (
    AbelianGroup,
    PresentedAbelian,
    direct_sum,
    direct_sum_all,
    from_relation_matrix,
    is_isomorphic,
)
from src.abgrp.homs import AbelianHom, IllDefinedHomError, hom_cokernel, hom_image, hom_kernel
from src.abgrp.lattice import EntryGrowthError

__all__ = [
    "AbelianGroup",
    "AbelianHom",
    "EntryGrowthError",
    "IllDefinedHomError",
    "PresentedAbelian",
    "direct_sum",
    "direct_sum_all",
    "from_relation_matrix",
    "hom_cokernel",
    "hom_image",
    "hom_kernel",
    "is_isomorphic",
    "tensor",
    "tor",
    "wedge2",
    "wedge2_map",
]
