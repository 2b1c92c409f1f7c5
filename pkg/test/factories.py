from fractions import Fraction
from random import choice

import factory
from faker import Faker

from chebpart.lucas import LucasParams

fake = Faker()

TRIVIAL = {0, 1, -1, 2, -2}


def nontrivial_fraction() -> Fraction:
    while (q := Fraction(fake.random_int(-60, 60), fake.random_int(1, 30))) in TRIVIAL:
        pass
    return q


def circular_point(t: Fraction) -> tuple[Fraction, Fraction]:
    """(q, w) on q² + w² = 4 from the rational parameter t."""
    return 2 * (1 - t * t) / (1 + t * t), 4 * t / (1 + t * t)


def circular_parameter() -> Fraction:
    while (t := Fraction(fake.random_int(1, 12), fake.random_int(1, 12))) == 1:
        pass
    return t


class TraceFactory(factory.Factory):
    """Rational traces outside {0, ±1, ±2}."""

    class Meta:
        model = nontrivial_fraction


class LucasParamsFactory(factory.Factory):
    class Meta:
        model = LucasParams

    T = factory.LazyFunction(lambda: fake.random_int(-20, 20))
    Q = factory.LazyFunction(lambda: choice([q for q in range(-20, 21) if q]))


class CircularPointFactory(factory.Factory):
    class Meta:
        model = circular_point

    t = factory.LazyFunction(circular_parameter)
