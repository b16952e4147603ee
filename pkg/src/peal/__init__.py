"""peal: exact-arithmetic pseudo-effect algebra toolkit."""

from .core import (
    AxiomReport,
    DifferenceUndefinedError,
    ElementInfo,
    InconsistencyError,
    InputError,
    OrderRelation,
    PartialAdditionTable,
    PealError,
    PreconditionError,
    SymmetryReport,
    check_axioms,
    complements,
    difference,
    dumps_document,
    induced_order,
    is_symmetric,
    isotropic_data,
    load_table,
    table_from_document,
    table_to_document,
)

__all__ = [
    "AxiomReport",
    "DifferenceUndefinedError",
    "ElementInfo",
    "InconsistencyError",
    "InputError",
    "OrderRelation",
    "PartialAdditionTable",
    "PealError",
    "PreconditionError",
    "SymmetryReport",
    "check_axioms",
    "complements",
    "difference",
    "dumps_document",
    "induced_order",
    "is_symmetric",
    "isotropic_data",
    "load_table",
    "table_from_document",
    "table_to_document",
]

__version__ = "0.1.0"
