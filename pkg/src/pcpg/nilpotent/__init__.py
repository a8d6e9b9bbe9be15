"""Finitely generated nilpotent groups through weighted polycyclic presentations."""

from .homs import NilHom, commutant_generators, hom_apply, hom_validate
from .presentation import GammaLayer, NilPresentation, PcElement, PcPresentation, gamma_layer
from .quotient import free_nilpotent, nilpotent_quotient
from .subgroups import SubgroupSequence, subgroup_sequence


def normal_form(P: PcPresentation, w) -> PcElement:
    return P.normal_form(w)


def is_identity(P: PcPresentation, w) -> bool:
    return P.is_identity(w)


def truncate(P: PcPresentation, c: int) -> PcPresentation:
    return P.truncate(c)


__all__ = [
    "GammaLayer",
    "NilHom",
    "NilPresentation",
    "PcElement",
    "PcPresentation",
    "SubgroupSequence",
    "commutant_generators",
    "free_nilpotent",
    "gamma_layer",
    "hom_apply",
    "hom_validate",
    "is_identity",
    "nilpotent_quotient",
    "normal_form",
    "subgroup_sequence",
    "truncate",
]
