"""Small builders shared by the test modules."""
from itertools import product

from moconad import algebra_from_semigroup, instance, make_transduction
from moconad.core import MVal

PREFIX = instance("prefix-list")
SUFFIX = instance("suffix-list")
POINTED = instance("pointed-list")


def L(*items):
    return MVal("prefix-list", tuple(items), len(items) - 1)


def S(*items):
    return MVal("suffix-list", tuple(items), 0)


def P(items, focus):
    """Pointed list with a 1-based focus."""
    return MVal("pointed-list", tuple(items), focus - 1)


def nested(x):
    """Plain Python lists from a (possibly nested) list value."""
    if isinstance(x, MVal):
        return [nested(y) for y in x.items]
    return x


def parity(functor="prefix-list"):
    return algebra_from_semigroup({(a, b): (a + b) % 2 for a in (0, 1) for b in (0, 1)}, functor)


def max_algebra(functor="prefix-list"):
    return algebra_from_semigroup({(a, b): max(a, b) for a in (0, 1) for b in (0, 1)}, functor)


def parity_transduction(functor="prefix-list"):
    return make_transduction(parity(functor), {0: 0, 1: 1}, {0: 0, 1: 1})


def words(alphabet, upto):
    for n in range(1, upto + 1):
        yield from product(alphabet, repeat=n)
