"""Entanglement of division fields of CM elliptic curves over Q.

Curves are passed as [a1, a2, a3, a4, a6] lists (or the same as a string);
discriminants and moduli as plain integers.
"""

from ._core import (
    DomainError,
    InternalError,
    class_number,
    class_number_formula,
    classgroup,
    classify,
    conductor,
    count_points,
    factorize,
    formal_height,
    frobenius_image,
    hecke_conductor_norm,
    invariants,
    kronecker,
    minimal_model,
    quadratic_twist,
    ray_class_degree,
    registry,
    residue_unit_count,
    torsion_valuation_bound,
    trace_of_frobenius,
    twist_factor,
    unit_image_order,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InternalError",
    "class_number",
    "class_number_formula",
    "classgroup",
    "classify",
    "conductor",
    "count_points",
    "factorize",
    "formal_height",
    "frobenius_image",
    "hecke_conductor_norm",
    "invariants",
    "kronecker",
    "minimal_model",
    "quadratic_twist",
    "ray_class_degree",
    "registry",
    "residue_unit_count",
    "torsion_valuation_bound",
    "trace_of_frobenius",
    "twist_factor",
    "unit_image_order",
]
