"""A-infinity algebras, Hochschild operations and weak bounding cochains."""
from .core import (AInfAlgebra, Cochain, ainf_verify, bracket, compose, dump_table,
                   from_associative, hochschild_differential, load_table)
from .gauge import gauge_reconstruct, pushforward, random_gauge, substitute_r
from .group import (CharacterGroup, FiniteAbelianGroup, GroupAction, fourier_check,
                    semidirect_product, semidirect_verify)
from .hochschild import HochschildOps, cap, euler_weight_check, jacobi_defect, yoneda
from .units import HomotopyUnitExtension, strict_unit_violations
from .wbc import PlusStructure, TableBase, contracting_homotopy, disk_potential_suite

__all__ = ["AInfAlgebra", "Cochain", "ainf_verify", "bracket", "compose", "dump_table",
           "from_associative", "hochschild_differential", "load_table",
           "gauge_reconstruct", "pushforward", "random_gauge", "substitute_r",
           "CharacterGroup", "FiniteAbelianGroup", "GroupAction", "fourier_check",
           "semidirect_product", "semidirect_verify",
           "HochschildOps", "cap", "euler_weight_check", "jacobi_defect", "yoneda",
           "HomotopyUnitExtension", "strict_unit_violations",
           "PlusStructure", "TableBase", "contracting_homotopy", "disk_potential_suite"]
