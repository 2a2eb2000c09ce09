"""Section classes nu: rays -> Z and the monodromy action on them."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import EffectivenessError, InputError
from .fan import Fan, ToricDivisor, as_divisor, divisor_polytope, integral_character


@dataclass(frozen=True)
class SectionClass:
    """Isotopy class of a monomially admissible section, recorded by nu."""

    fan: Fan
    nu: tuple

    def __post_init__(self):
        nu = tuple(int(x) for x in self.nu)
        if len(nu) != self.fan.n_rays:
            raise InputError(f"section has {len(nu)} values, fan has {self.fan.n_rays} rays")
        object.__setattr__(self, "nu", nu)

    def __add__(self, other: "SectionClass") -> "SectionClass":
        return tensor_on_objects(self, other)

    def __neg__(self) -> "SectionClass":
        return SectionClass(self.fan, tuple(-x for x in self.nu))


@dataclass(frozen=True)
class MonodromyFunctor:
    divisor: ToricDivisor

    def __post_init__(self):
        object.__setattr__(self, "divisor", ToricDivisor(tuple(self.divisor)))

    def compose(self, other: "MonodromyFunctor") -> "MonodromyFunctor":
        return MonodromyFunctor(self.divisor + other.divisor)

    def inverse(self) -> "MonodromyFunctor":
        return MonodromyFunctor(-self.divisor)

    def __call__(self, nu: SectionClass) -> SectionClass:
        return monodromy_apply(self, nu)


@dataclass(frozen=True)
class DefiningSection:
    divisor: ToricDivisor
    weight: tuple


def section_from_divisor(F: Fan, D) -> SectionClass:
    D = as_divisor(F, D)
    return SectionClass(F, tuple(-n for n in D))


def divisor_from_section(nu: SectionClass) -> ToricDivisor:
    return ToricDivisor(tuple(-x for x in nu.nu))


def sections_isotopic(nu0: SectionClass, nu1: SectionClass) -> bool:
    """nu0 - nu1 is the restriction of an integral character to the rays.

    On smooth fans this is equality in Pic; on simplicial fans it is the raw
    comparison of nu-functions modulo characters.
    """
    if nu0.fan != nu1.fan:
        raise InputError("sections live on different fans")
    return integral_character(nu0.fan, [a - b for a, b in zip(nu0.nu, nu1.nu)]) is not None


def monodromy_apply(phi: MonodromyFunctor, nu: SectionClass) -> SectionClass:
    D = as_divisor(nu.fan, phi.divisor)
    return SectionClass(nu.fan, tuple(a - n for a, n in zip(nu.nu, D)))


def tensor_on_objects(nu0: SectionClass, nu1: SectionClass) -> SectionClass:
    if nu0.fan != nu1.fan:
        raise InputError("sections live on different fans")
    return SectionClass(nu0.fan, tuple(a + b for a, b in zip(nu0.nu, nu1.nu)))


def zero_section(F: Fan) -> SectionClass:
    return SectionClass(F, (0,) * F.n_rays)


def defining_section(F: Fan, D) -> DefiningSection:
    D = as_divisor(F, D)
    if not D.is_effective():
        raise EffectivenessError("defining sections need an effective divisor")
    zero = (0,) * F.dim
    assert divisor_polytope(F, D).contains(zero)
    return DefiningSection(D, zero)
