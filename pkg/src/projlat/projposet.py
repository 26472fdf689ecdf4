"""The projection poset of a finite subspace lattice.

Elements are ordered pairs (image, kernel) of complementary subspaces,
with (a,b) <= (c,d) iff a <= c and d <= b, and orthocomplement
(a,b)' = (b,a). Joins and meets need not exist (this is a poset, not a
lattice); absence of a bound is an answer, not an error. The idempotent
matrix acting as the identity on `image` and as zero on `kernel` gives a
second, ring-theoretic view of the same element; the two views are kept
cross-linked and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf import GF
from .lattice import (
    AmbientTooLarge,
    Subspace,
    SubspaceLattice,
    enumerate_subspaces,
    projection_pair_count,
)
from .matrices import (
    Matrix,
    all_matrices,
    identity,
    is_idempotent,
    left_kernel,
    mat_inv,
    mat_mul,
    mat_sub,
    row_space,
    stack,
    zeros,
)


class NotIdempotent(ValueError):
    """Raised when a projection matrix is expected but M @ M != M."""


def projector_matrix(F: GF, image: Subspace, kernel: Subspace) -> Matrix:
    """The unique idempotent fixing `image` pointwise and killing `kernel`.

    Rows of image.basis map to themselves, rows of kernel.basis to zero;
    stacking both gives an invertible system because the pair is
    complementary.
    """
    n = image.n
    c = stack(image.basis, kernel.basis)
    if len(c) != n:
        raise ValueError("image and kernel dimensions do not fill the ambient")
    d = stack(image.basis, zeros(kernel.dim, n))
    m = mat_mul(F, mat_inv(F, c), d)
    if not is_idempotent(F, m):
        raise AssertionError("constructed projector is not idempotent")
    return m


def idempotent_to_subspaces(F: GF, m: Matrix) -> tuple[Subspace, Subspace]:
    """(row space, left kernel) of an idempotent: its image and kernel."""
    if not is_idempotent(F, m):
        raise NotIdempotent(f"matrix is not idempotent: {m}")
    n = len(m)
    return (
        Subspace(F, n, row_space(F, m)),
        Subspace(F, n, left_kernel(F, m)),
    )


def enumerate_idempotents(F: GF, n: int, limit: int = 2**20) -> list[Matrix]:
    """Brute-force scan of all q^(n^2) matrices, in flat lexicographic order."""
    total = F.q ** (n * n)
    if total > limit:
        raise AmbientTooLarge(f"q^(n^2) = {total} exceeds brute-force limit {limit}")
    return [m for m in all_matrices(F, n, n) if is_idempotent(F, m)]


class ProjectionPoset:
    """Indexed (image, kernel) pairs with order masks, ortho, and atom data."""

    def __init__(self, L: SubspaceLattice, pairs: list[tuple[int, int]]):
        self.lattice = L
        self.pairs = pairs
        self.size = len(pairs)
        self.index = {p: i for i, p in enumerate(pairs)}
        self.image = [a for a, _ in pairs]
        self.kernel = [b for _, b in pairs]
        self.grade = [L.dims[a] for a, _ in pairs]
        self.bottom = self.index[(L.bottom, L.top)]
        self.top = self.index[(L.top, L.bottom)]
        self.ortho = [self.index[(b, a)] for a, b in pairs]
        self.by_image: dict[int, list[int]] = {}
        self.by_kernel: dict[int, list[int]] = {}
        for i, (a, b) in enumerate(pairs):
            self.by_image.setdefault(a, []).append(i)
            self.by_kernel.setdefault(b, []).append(i)
        self._build_order()
        self._covers: list[tuple[int, int]] | None = None
        self._graded: bool | None = None
        self._idempotents: list[Matrix] | None = None
        self._matrix_index: dict[Matrix, int] | None = None

    def _build_order(self) -> None:
        L = self.lattice
        lup = L.up_masks
        size = self.size
        up = [0] * size
        down = [0] * size
        img, ker = self.image, self.kernel
        for i in range(size):
            a, b = img[i], ker[i]
            ua = lup[a]
            ui = 0
            for j in range(size):
                if ua >> img[j] & 1 and lup[ker[j]] >> b & 1:
                    ui |= 1 << j
            up[i] = ui
        for i in range(size):
            u = up[i]
            while u:
                low = u & -u
                down[low.bit_length() - 1] |= 1 << i
                u ^= low
        self.up_masks = up
        self.down_masks = down
        self.atoms = [i for i, g in enumerate(self.grade) if g == 1]
        atom_masks = [0] * size
        for t, a in enumerate(self.atoms):
            u = up[a]
            while u:
                low = u & -u
                atom_masks[low.bit_length() - 1] |= 1 << t
                u ^= low
        self.elem_atom_masks = atom_masks
        self.atom_mask_index = {m: i for i, m in enumerate(atom_masks)}

    # -- order -------------------------------------------------------------

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up_masks[i] >> j & 1)

    def lub_idx(self, i: int, j: int) -> int | None:
        """Least upper bound in the poset, or None if there is no least one."""
        common = self.up_masks[i] & self.up_masks[j]
        found = None
        u = common
        while u:
            low = u & -u
            m = low.bit_length() - 1
            if common & ~self.up_masks[m] == 0:
                if found is not None:
                    raise AssertionError("two distinct least upper bounds")
                found = m
            u ^= low
        return found

    def glb_idx(self, i: int, j: int) -> int | None:
        common = self.down_masks[i] & self.down_masks[j]
        found = None
        u = common
        while u:
            low = u & -u
            m = low.bit_length() - 1
            if common & ~self.down_masks[m] == 0:
                if found is not None:
                    raise AssertionError("two distinct greatest lower bounds")
                found = m
            u ^= low
        return found

    def cover_pairs(self) -> list[tuple[int, int]]:
        if self._covers is None:
            out = []
            for i in range(self.size):
                u = self.up_masks[i] & ~(1 << i)
                while u:
                    low = u & -u
                    j = low.bit_length() - 1
                    between = self.up_masks[i] & self.down_masks[j]
                    if between == (1 << i) | (1 << j):
                        out.append((i, j))
                    u ^= low
            self._covers = out
        return self._covers

    def is_graded_by_image_dim(self) -> bool:
        """Every cover step raises the image dimension by exactly 1; this is
        what lets the image dimension serve as an order-invariant height."""
        if self._graded is None:
            self._graded = all(
                self.grade[j] == self.grade[i] + 1 for i, j in self.cover_pairs()
            )
        return self._graded

    def verify_atomistic(self) -> bool:
        """Order relation coincides with atom-set inclusion, exhaustively."""
        if len(self.atom_mask_index) != self.size:
            return False
        am = self.elem_atom_masks
        up = self.up_masks
        for i in range(self.size):
            ui = up[i]
            mi = am[i]
            for j in range(self.size):
                if (ui >> j & 1) != (mi & ~am[j] == 0):
                    return False
        return True

    # -- matrix view -------------------------------------------------------

    def idempotent(self, i: int) -> Matrix:
        if self._idempotents is None:
            L = self.lattice
            F = L.field
            self._idempotents = [
                projector_matrix(F, L.elements[a], L.elements[b])
                for a, b in self.pairs
            ]
        return self._idempotents[i]

    def matrix_index(self) -> dict[Matrix, int]:
        if self._matrix_index is None:
            self._matrix_index = {self.idempotent(i): i for i in range(self.size)}
        return self._matrix_index

    def __repr__(self) -> str:
        L = self.lattice
        return f"ProjectionPoset({L.field.spec()}^{L.n}, {self.size} elements)"


def build_projection_poset(L: SubspaceLattice, verify_pairs: bool = True) -> ProjectionPoset:
    """All complementary pairs, each re-checked against the modular-pair and
    dual-modular-pair conditions rather than trusting modularity."""
    pairs = []
    for a in range(L.size):
        for b in L.complements_idx(a):
            if verify_pairs:
                if not (
                    L.is_modular_pair_idx(a, b)
                    and L.is_dual_modular_pair_idx(a, b)
                ):
                    continue
            pairs.append((a, b))
    expected = projection_pair_count(L.n, L.field.q)
    if len(pairs) != expected:
        raise AssertionError(
            f"pair filter kept {len(pairs)} elements, expected {expected}"
        )
    return ProjectionPoset(L, pairs)


@dataclass
class OmpReport:
    """Axiom-by-axiom outcome for a candidate orthomodular poset."""

    ambient: tuple[int, str]
    size: int
    checks: list[tuple[str, bool, str]] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))


def verify_omp_axioms(P: ProjectionPoset) -> OmpReport:
    """Exhaustive check of the orthomodular-poset axioms on P."""
    L = P.lattice
    rep = OmpReport(ambient=(L.n, L.field.spec()), size=P.size)
    size = P.size
    up, down, ortho = P.up_masks, P.down_masks, P.ortho

    full = (1 << size) - 1
    rep.add(
        "bounded",
        up[P.bottom] == full and down[P.top] == full,
        f"bottom={P.pairs[P.bottom]}, top={P.pairs[P.top]}",
    )

    invol_bad = [i for i in range(size) if ortho[ortho[i]] != i]
    rep.add("ortho_is_involution", not invol_bad, f"violations={invol_bad[:3]}")

    rev_bad = []
    for i in range(size):
        u = up[i]
        oi = ortho[i]
        while u:
            low = u & -u
            j = low.bit_length() - 1
            if not (up[ortho[j]] >> oi & 1):
                rev_bad.append((i, j))
            u ^= low
    rep.add("ortho_reverses_order", not rev_bad, f"violations={rev_bad[:3]}")

    bad_meet = [
        i
        for i in range(size)
        if P.glb_idx(i, ortho[i]) != P.bottom or P.lub_idx(i, ortho[i]) != P.top
    ]
    rep.add(
        "complementation",
        not bad_meet,
        f"violations={bad_meet[:3]}" if bad_meet else "p ^ p' = 0, p v p' = 1 for all p",
    )

    # orthogonal joins: p <= q' implies p v q exists
    no_join = []
    for i in range(size):
        for j in range(i, size):
            if up[i] >> ortho[j] & 1:
                if P.lub_idx(i, j) is None:
                    no_join.append((i, j))
    rep.add(
        "orthogonal_joins_exist",
        not no_join,
        f"violations={no_join[:3]}" if no_join else "all orthogonal pairs",
    )

    # orthomodular law: p <= q implies q = p v (q ^ p')
    om_bad = []
    for i in range(size):
        u = up[i]
        oi = ortho[i]
        while u:
            low = u & -u
            j = low.bit_length() - 1
            m = P.glb_idx(j, oi)
            if m is None or P.lub_idx(i, m) != j:
                om_bad.append((i, j))
            u ^= low
    rep.add(
        "orthomodular_law",
        not om_bad,
        f"violations={om_bad[:3]}" if om_bad else "all comparable pairs",
    )

    return rep


def verify_projection_correspondence(n: int, F: GF) -> OmpReport:
    """The pair <-> idempotent dictionary is a bijective order isomorphism.

    Matrix order is p <= q iff pq = qp = p; ortho corresponds to
    complementation at the matrix level, m -> 1 - m. Both sides are
    enumerated independently (pairs from the lattice, idempotents by brute
    force) before being matched.
    """
    L = enumerate_subspaces(n, F)
    P = build_projection_poset(L)
    rep = OmpReport(ambient=(n, F.spec()), size=P.size)

    brute = enumerate_idempotents(F, n)
    rep.add(
        "idempotent_count_matches",
        len(brute) == P.size,
        f"brute={len(brute)}, pairs={P.size}",
    )

    constructed = [P.idempotent(i) for i in range(P.size)]
    rep.add(
        "bijection_onto_idempotents",
        set(constructed) == set(brute) and len(set(constructed)) == P.size,
        "matrix sets equal",
    )

    rt_bad = []
    for i in range(P.size):
        img, ker = idempotent_to_subspaces(F, constructed[i])
        if (L.index[img], L.index[ker]) != P.pairs[i]:
            rt_bad.append(i)
    rep.add("round_trip_pairs", not rt_bad, f"violations={rt_bad[:3]}")

    order_bad = []
    for i in range(P.size):
        mi = constructed[i]
        for j in range(P.size):
            mj = constructed[j]
            mat_leq = mat_mul(F, mi, mj) == mi and mat_mul(F, mj, mi) == mi
            if mat_leq != P.leq_idx(i, j):
                order_bad.append((i, j))
    rep.add("order_isomorphism", not order_bad, f"violations={order_bad[:3]}")

    one = identity(n)
    ortho_bad = [
        i
        for i in range(P.size)
        if constructed[P.ortho[i]] != mat_sub(F, one, constructed[i])
    ]
    rep.add("ortho_is_one_minus_p", not ortho_bad, f"violations={ortho_bad[:3]}")

    return rep
