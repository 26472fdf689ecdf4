"""Permutation-backed maps on lattices and posets.

Automorphisms and anti-automorphisms are stored as index permutations with
a direction or parity tag. Composition is permutation composition; the
direction/parity algebra (anti after anti is an automorphism, odd after
odd is even) rides along. Witness objects (a semilinear map behind a
lattice map, a lattice map behind a poset map) are carried opportunistically
and never participate in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

AUTO = "automorphism"
ANTI = "anti-automorphism"
EVEN = "even"
ODD = "odd"
UNKNOWN = "unknown"


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_compose(f, g) -> tuple[int, ...]:
    """The permutation of 'f after g': (f*g)[i] = f[g[i]]."""
    return tuple(f[x] for x in g)


def perm_inverse(f) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, x in enumerate(f):
        inv[x] = i
    return tuple(inv)


def is_permutation(f) -> bool:
    return sorted(f) == list(range(len(f)))


def compose_directions(d1: str, d2: str) -> str:
    return AUTO if (d1 == ANTI) == (d2 == ANTI) else ANTI


def compose_parities(p1: str, p2: str) -> str:
    if UNKNOWN in (p1, p2):
        return UNKNOWN
    return EVEN if (p1 == ODD) == (p2 == ODD) else ODD


@dataclass(frozen=True)
class LatticeMap:
    """A bijection of lattice element indices, order-preserving (direction
    AUTO) or order-reversing (ANTI)."""

    perm: tuple[int, ...]
    direction: str
    witness: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.direction not in (AUTO, ANTI):
            raise ValueError(f"bad direction {self.direction!r}")
        if not is_permutation(self.perm):
            raise ValueError("not a permutation")

    def __call__(self, i: int) -> int:
        return self.perm[i]

    @property
    def is_identity(self) -> bool:
        return self.perm == identity_perm(len(self.perm))

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other."""
        return LatticeMap(
            perm_compose(self.perm, other.perm),
            compose_directions(self.direction, other.direction),
        )

    def inverse(self) -> "LatticeMap":
        return LatticeMap(perm_inverse(self.perm), self.direction)


@dataclass(frozen=True)
class PosetMap:
    """A bijection of projection-poset element indices preserving order and
    orthocomplementation, tagged with its parity."""

    perm: tuple[int, ...]
    parity: str = UNKNOWN
    witness: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.parity not in (EVEN, ODD, UNKNOWN):
            raise ValueError(f"bad parity {self.parity!r}")
        if not is_permutation(self.perm):
            raise ValueError("not a permutation")

    def __call__(self, i: int) -> int:
        return self.perm[i]

    @property
    def is_identity(self) -> bool:
        return self.perm == identity_perm(len(self.perm))

    def compose(self, other: "PosetMap") -> "PosetMap":
        """self after other."""
        return PosetMap(
            perm_compose(self.perm, other.perm),
            compose_parities(self.parity, other.parity),
        )

    def inverse(self) -> "PosetMap":
        return PosetMap(perm_inverse(self.perm), self.parity)
