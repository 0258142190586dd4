"""Dominant-weight arithmetic: orbit sizes, the Weyl dimension formula,
base-p digit expansions, and capped enumeration of dominant weights.

Weights are stored in the fundamental-weight basis, so the pairing with a
simple coroot is simply the corresponding coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import (
    SimpleType,
    parabolic_weyl_order,
    root_system,
    validate,
    weyl_order,
)


class CharZeroError(ValueError):
    """Operation needs a positive characteristic."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, order=True)
class Characteristic:
    value: int

    def __post_init__(self):
        if self.value != 0 and not _is_prime(self.value):
            raise ValueError(f"characteristic must be 0 or prime, got {self.value}")

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return str(self.value)


CHAR_ZERO = Characteristic(0)


@dataclass(frozen=True)
class Weight:
    type: SimpleType
    coeffs: tuple[int, ...]

    def __post_init__(self):
        validate(self.type)
        if len(self.coeffs) != self.type.rank:
            raise ValueError(
                f"expected {self.type.rank} coefficients, got {len(self.coeffs)}"
            )
        if any(c < 0 for c in self.coeffs):
            raise ValueError("dominant weights have non-negative coefficients")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        """1-based indices of the nonzero coefficients."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"w{i + 1}" if c == 1 else f"{c}w{i + 1}")
        return "+".join(parts)


def weight(t: SimpleType, *coeffs: int) -> Weight:
    return Weight(t, tuple(coeffs))


def fundamental(t: SimpleType, i: int) -> Weight:
    """omega_i, 1-based."""
    if not 1 <= i <= t.rank:
        raise ValueError(f"fundamental index {i} out of range for {t}")
    return Weight(t, tuple(1 if j == i - 1 else 0 for j in range(t.rank)))


def weyl_orbit_size(w: Weight) -> int:
    """|W . w| = |W| / |W_{S0}| with S0 the simple roots pairing to zero.

    S0 depends only on the zero pattern of the coefficients, so the orbit
    size is determined by the support of w.
    """
    stabilized = {i for i, c in enumerate(w.coeffs) if c == 0}
    total = weyl_order(w.type)
    if not stabilized:
        return total
    return total // parabolic_weyl_order(w.type, stabilized)


def weyl_dim(w: Weight) -> int:
    """prod_{alpha > 0} <w + rho, alpha^vee> / <rho, alpha^vee>, exactly.

    rho has coefficient vector (1, ..., 1); the pairing of a weight with
    the coroot of a positive root uses the integer coroot coordinates, so
    the whole product is rational with an integer value.
    """
    rs = root_system(w.type)
    result = Fraction(1)
    for idx in range(len(rs.positive_roots)):
        cv = rs.coroot_coords(idx)
        height = sum(cv)  # <rho, alpha^vee>
        numer = sum((c + 1) * k for c, k in zip(w.coeffs, cv))
        result *= Fraction(numer, height)
    if result.denominator != 1:
        raise AssertionError(f"Weyl dimension of {w} not integral: {result}")
    return result.numerator


def is_p_restricted(w: Weight, p: Characteristic) -> bool:
    """True iff every coefficient is < p (vacuously true at p = 0)."""
    if p.is_zero:
        return True
    return all(c < p.value for c in w.coeffs)


@dataclass(frozen=True)
class PAdicExpansion:
    weight: Weight
    p: int
    # (exponent, piece) with zero pieces omitted
    terms: tuple[tuple[int, Weight], ...]
    # True iff the degree-0 piece vanishes, i.e. the representation is a
    # Frobenius twist of a smaller one
    frobenius_factor: bool


def p_adic_expansion(w: Weight, p: Characteristic) -> PAdicExpansion:
    """Unique expansion w = sum p^i w_i with every w_i p-restricted.

    Fundamental coefficients expand independently, so this is the base-p
    digit expansion applied coefficient-wise.
    """
    if p.is_zero:
        raise CharZeroError("expansion needs p > 0")
    base = p.value
    digits: list[list[int]] = []
    rest = list(w.coeffs)
    while any(rest):
        digits.append([c % base for c in rest])
        rest = [c // base for c in rest]
    terms = []
    for i, layer in enumerate(digits):
        if any(layer):
            terms.append((i, Weight(w.type, tuple(layer))))
    frobenius = bool(terms) and terms[0][0] > 0
    return PAdicExpansion(w, base, tuple(terms), frobenius)


@dataclass(frozen=True)
class SupportFamily:
    """All dominant weights with a fixed support share one orbit size."""

    support: tuple[int, ...]  # 1-based fundamental indices
    orbit_size: int
    min_weight: Weight
    # scaling any coefficient up preserves the orbit size, so the family
    # always continues past any finite coefficient bound
    continues: bool = True


@dataclass(frozen=True)
class DominantEnumeration:
    type: SimpleType
    orbit_cap: int
    coeff_bound: int
    families: tuple[SupportFamily, ...]
    weights: tuple[Weight, ...]


def enumerate_dominant_weights(
    t: SimpleType, orbit_cap: int, coeff_bound: int = 4
) -> DominantEnumeration:
    """Nonzero dominant weights with Weyl orbit size <= orbit_cap.

    The raw set is infinite whenever any support passes the cap (orbit size
    is support-determined), so the result is organized as support families
    with minimal representatives, plus the finite slice of weights whose
    coefficients are all <= coeff_bound.
    """
    validate(t)
    if orbit_cap < 1:
        raise ValueError("orbit_cap must be >= 1")
    n = t.rank
    families = []
    for mask in range(1, 1 << n):
        support = tuple(i + 1 for i in range(n) if mask >> i & 1)
        rep = Weight(t, tuple(1 if mask >> i & 1 else 0 for i in range(n)))
        size = weyl_orbit_size(rep)
        if size <= orbit_cap:
            families.append(SupportFamily(support, size, rep))
    families.sort(key=lambda f: (len(f.support), f.support))
    weights = []
    for fam in families:
        weights.extend(_weights_with_support(t, fam.support, coeff_bound))
    weights.sort(key=lambda w: (sum(w.coeffs), w.coeffs))
    return DominantEnumeration(t, orbit_cap, coeff_bound, tuple(families), tuple(weights))


def _weights_with_support(t, support, bound):
    idxs = [i - 1 for i in support]
    coeffs = [0] * t.rank
    out = []

    def rec(pos):
        if pos == len(idxs):
            out.append(Weight(t, tuple(coeffs)))
            return
        for v in range(1, bound + 1):
            coeffs[idxs[pos]] = v
            rec(pos + 1)
        coeffs[idxs[pos]] = 0

    rec(0)
    return out


def adjoint_weight(t: SimpleType) -> Weight:
    """Highest root written in the fundamental-weight basis."""
    rs = root_system(t)
    theta = max(rs.positive_roots, key=sum)
    coeffs = tuple(
        sum(theta[j] * rs.cartan[j][i] for j in range(t.rank)) for i in range(t.rank)
    )
    return Weight(t, coeffs)
