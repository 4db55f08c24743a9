"""Decide equivalence of integer counting functions on free monoids modulo bounded functions."""

from cfequiv.errors import BudgetExceeded, InstanceError, RankMismatch
from cfequiv.words import (
    CountingFunction,
    MonoidSpec,
    Term,
    count_occurrences,
    difference,
    evaluate,
    input_size,
    left_relation,
    right_relation,
)
from cfequiv.instance import Instance, parse_instance, serialize_instance
from cfequiv.fastcheck import Verdict, Witness, check_equivalent
from cfequiv.oracle import oracle_equivalent, to_basis_B

__all__ = [
    "BudgetExceeded",
    "CountingFunction",
    "Instance",
    "InstanceError",
    "MonoidSpec",
    "RankMismatch",
    "Term",
    "Verdict",
    "Witness",
    "check_equivalent",
    "count_occurrences",
    "difference",
    "evaluate",
    "input_size",
    "left_relation",
    "oracle_equivalent",
    "parse_instance",
    "right_relation",
    "serialize_instance",
    "to_basis_B",
]
