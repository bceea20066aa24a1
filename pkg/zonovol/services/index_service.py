# zonovol/services/index_service.py

"""
Sorted index-tuple streams over the generator labels of P_N.

Streams are lazy and restartable: calling ``enumerate_tuples`` twice on the
same set yields the same sequence.
"""

from itertools import chain, combinations, islice
from typing import Iterable, Iterator, Sequence

import numpy as np

from zonovol.core.exceptions import ContractViolation
from zonovol.schemas.tuples import IndexTuple, TupleSet


def enumerate_tuples(tuple_set: TupleSet) -> Iterator[IndexTuple]:
    """All tuples of the set in lexicographic order.

    Arity 0 yields one empty tuple; a negative arity, or one above the label
    count, yields nothing.
    """
    if tuple_set.arity < 0 or tuple_set.arity > tuple_set.size:
        return iter(())
    labels = range(tuple_set.first_label, tuple_set.last_label + 1)
    return combinations(labels, tuple_set.arity)


def _check_disjoint(parts: Sequence[TupleSet]) -> None:
    occupied = [p for p in parts if p.size > 0]
    for left, right in zip(occupied, occupied[1:]):
        if left.last_label >= right.first_label:
            raise ContractViolation(
                "cross product parts must have increasing, disjoint label ranges",
                {
                    "left": [left.first_label, left.last_label],
                    "right": [right.first_label, right.last_label],
                },
            )


def _nested(parts: Sequence[TupleSet], prefix: IndexTuple) -> Iterator[IndexTuple]:
    if not parts:
        yield prefix
        return
    head, rest = parts[0], parts[1:]
    for t in enumerate_tuples(head):
        yield from _nested(rest, prefix + t)


def cross(parts: Sequence[TupleSet]) -> Iterator[IndexTuple]:
    """
    Concatenated tuples of the Cartesian product of ``parts``, lexicographic.

    Lazy: later parts are re-enumerated per prefix, nothing is materialized.

    Raises:
        ContractViolation: overlapping or decreasing label ranges
    """
    _check_disjoint(parts)
    if any(p.is_empty for p in parts):
        return iter(())
    return _nested(list(parts), ())


def cross_count(parts: Sequence[TupleSet]) -> int:
    total = 1
    for p in parts:
        total *= p.count
    return total


def chunked(
    stream: Iterable[IndexTuple], arity: int, size: int
) -> Iterator[np.ndarray]:
    """Groups a tuple stream into (k, arity) arrays of 0-based column indices."""
    it = iter(stream)
    while True:
        batch = list(islice(it, size))
        if not batch:
            return
        flat = np.fromiter(
            chain.from_iterable(batch), dtype=np.intp, count=len(batch) * arity
        )
        yield flat.reshape(len(batch), arity) - 1
