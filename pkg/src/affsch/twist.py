"""Twisted affine data: diagram automorphisms and folded root systems.

A TwistedDatum packages a simply-laced absolute root system with a diagram
automorphism sigma0 of order e and the reduced system Sigma spanned by the
modified orbit sums of the simple roots (orbit sums, doubled exactly when an
orbit contains two adjacent nodes).  Every root of Sigma is matched to the
sigma0-orbit(s) of absolute roots it is proportional to; this matching drives
the level arithmetic of the affine correspondence:

  case 1   orthogonal orbit of size d: levels (1/d)Z, one line per degree
           with e | d*degree;
  case 2a  adjacent pair orbit (the multipliable half): levels (1/2)Z,
           Sigma-level 4m at relative level m;
  case 2b  fixed root equal to an adjacent pair's sum (the divisible half):
           levels 1/2 + Z, Sigma-level 2m, odd.

Only the doubled orbits of A_{2n} with the flip produce cases 2a/2b.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from affsch.rootsys import (
    Coweight,
    FiniteRootSystem,
    Root,
    IntVec,
    _recognize_irreducible,
    build_root_system,
    cartan_matrix,
)

_TWISTED_RE = re.compile(r"^([123]?)([A-G])([1-9])$")

ABSOLUTELY_SPECIAL = "absolutely-special"
OTHER_SPECIAL = "special-non-absolutely"

AffineRoot = tuple[Root, int]


@dataclass(frozen=True)
class LevelProgression:
    """Arithmetic progression of admissible relative levels, offset + step*Z."""

    case: str
    offset: Fraction
    step: Fraction
    orbit_size: int


@dataclass(frozen=True)
class RelativeAffineRoot:
    """An affine root on the relative side of the level correspondence."""

    case: str
    orbit: tuple[Root, ...]
    m: Fraction
    sigma_root: Root
    level: int

    def u_degree(self, e: int) -> int:
        n = self.m * e
        if n.denominator != 1:
            raise AssertionError("relative level times e must be integral")
        return int(n)


@dataclass(frozen=True)
class _OrbitData:
    orbit: tuple[Root, ...]
    d: int
    multipliable: bool
    divisible_orbit: tuple[Root, ...] | None


def parse_type_label(label: str) -> tuple[int, str, int]:
    """Split a twisted label like "3D4" into (e, letter, rank)."""
    m = _TWISTED_RE.match(label)
    if m is None:
        raise ValueError(f"malformed twisted type label {label!r}")
    e = int(m.group(1)) if m.group(1) else 1
    return e, m.group(2), int(m.group(3))


def default_sigma0(letter: str, rank: int, e: int) -> IntVec:
    """The standard diagram automorphism of order e, as an index permutation."""
    if e == 1:
        return tuple(range(rank))
    if e == 2:
        if letter == "A" and rank >= 2:
            return tuple(rank - 1 - i for i in range(rank))
        if letter == "D":
            return tuple(range(rank - 2)) + (rank - 1, rank - 2)
        if letter == "E" and rank == 6:
            return (5, 1, 4, 3, 2, 0)
    if e == 3 and letter == "D" and rank == 4:
        # fixes the central node, rotates the three outer ones
        return (2, 1, 3, 0)
    raise ValueError(f"no default diagram automorphism of order {e} for {letter}{rank}")


def _act(perm: IntVec, m: Root) -> Root:
    out = [0] * len(m)
    for i, mi in enumerate(m):
        out[perm[i]] = mi
    return tuple(out)


def _orbit(perm: IntVec, m: Root) -> tuple[Root, ...]:
    orb = [m]
    cur = _act(perm, m)
    while cur != m:
        orb.append(cur)
        cur = _act(perm, cur)
    return tuple(sorted(orb))


def _vec_add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _vec_scale(a: Root, s: int) -> Root:
    return tuple(s * x for x in a)


class TwistedDatum:
    """A simply-laced absolute system folded by a diagram automorphism.

    Attributes:
      absolute, sigma0, e: the folding input.
      echelonnage: the reduced system Sigma on the modified orbit sums,
        relabeled and reordered to its canonical Bourbaki presentation.
      sigma_simple_images: absolute coefficient tuples realizing the simple
        roots of Sigma, index-aligned with echelonnage's simples.
      multipliable_roots: Sigma roots whose orbit data carries a divisible
        partner (nonempty only for the folded odd A types).
      vertex: base-point tag; certificate logic accepts only the absolutely
        special one.
    """

    def __init__(
        self,
        label: str,
        absolute: FiniteRootSystem,
        e: int,
        sigma0: IntVec,
        vertex: str = ABSOLUTELY_SPECIAL,
    ) -> None:
        self.label = label
        self.absolute = absolute
        self.e = e
        self.sigma0 = sigma0
        self.vertex = vertex
        self._build_sigma()
        self._match_orbits()

    def __repr__(self) -> str:
        return f"TwistedDatum({self.label}, Sigma={self.echelonnage.label})"

    # -- construction ------------------------------------------------------

    def _build_sigma(self) -> None:
        absolute, perm = self.absolute, self.sigma0
        rank = absolute.rank
        seen: set[int] = set()
        simple_orbits: list[tuple[int, ...]] = []
        for i in range(rank):
            if i in seen:
                continue
            orb = [i]
            j = perm[i]
            while j != i:
                orb.append(j)
                j = perm[j]
            seen.update(orb)
            simple_orbits.append(tuple(sorted(orb)))
        simple_orbits.sort()

        basis: list[Root] = []
        for orb in simple_orbits:
            v = [0] * rank
            for i in orb:
                v[i] = 1
            doubled = any(
                absolute.cartan[i][j] != 0 for i in orb for j in orb if i != j
            )
            basis.append(tuple((2 if doubled else 1) * x for x in v))

        if self.e == 1:
            self.echelonnage = absolute
            self.sigma_simple_images = tuple(
                tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
            )
            return

        bil = absolute.bilinear

        def form(a: Root, b: Root) -> int:
            return sum(
                ai * bj * bil[i][j]
                for i, ai in enumerate(a)
                if ai
                for j, bj in enumerate(b)
                if bj
            )

        n = len(basis)
        gram = [[form(basis[k], basis[l]) for l in range(n)] for k in range(n)]
        cart = []
        for k in range(n):
            row = []
            for l in range(n):
                num = 2 * gram[k][l]
                if num % gram[l][l]:
                    raise AssertionError("folded Cartan matrix must be integral")
                row.append(num // gram[l][l])
            cart.append(tuple(row))
        sigma_label, order = _recognize_irreducible(tuple(cart))
        self.echelonnage = build_root_system(sigma_label)
        self.sigma_simple_images = tuple(basis[k] for k in order)

    def _match_orbits(self) -> None:
        absolute, perm = self.absolute, self.sigma0
        sigma = self.echelonnage

        orbits: list[tuple[Root, ...]] = []
        done: set[Root] = set()
        for m in absolute.positive_roots:
            if m in done:
                continue
            orb = _orbit(perm, m)
            done.update(orb)
            orbits.append(orb)

        def abs_vec(root: Root) -> Root:
            acc = (0,) * absolute.rank
            for k, mk in enumerate(root):
                if mk:
                    acc = _vec_add(acc, _vec_scale(self.sigma_simple_images[k], mk))
            return acc

        plain: dict[Root, tuple[Root, ...]] = {}
        halves: dict[Root, list[tuple[Root, ...]]] = {}
        targets = {abs_vec(root): root for root in sigma.positive_roots}
        for orb in orbits:
            s = (0,) * absolute.rank
            for g in orb:
                s = _vec_add(s, g)
            if s in targets:
                root = targets[s]
                if root in plain:
                    raise AssertionError("two orbits match one folded root")
                plain[root] = orb
            elif _vec_scale(s, 2) in targets:
                halves.setdefault(targets[_vec_scale(s, 2)], []).append(orb)
            else:
                raise AssertionError("orbit sum matches no folded root")

        bil = absolute.bilinear

        def orthogonal(orb: tuple[Root, ...]) -> bool:
            return all(
                sum(ai * bj * bil[i][j] for i, ai in enumerate(a) if ai for j, bj in enumerate(b) if bj) == 0
                for a in orb
                for b in orb
                if a < b
            )

        meta: dict[Root, _OrbitData] = {}
        for root in sigma.positive_roots:
            if root in plain:
                if root in halves:
                    raise AssertionError("folded root matched at two scales")
                orb = plain[root]
                if not orthogonal(orb):
                    raise AssertionError("plain orbit with adjacent members")
                meta[root] = _OrbitData(orb, len(orb), False, None)
            else:
                parts = halves.get(root)
                if parts is None:
                    raise AssertionError("folded root with no matching orbit")
                pair = [o for o in parts if len(o) == 2]
                single = [o for o in parts if len(o) == 1]
                if len(parts) != 2 or len(pair) != 1 or len(single) != 1:
                    raise AssertionError("multipliable root needs one pair and one fixed orbit")
                a, b = pair[0]
                if _vec_add(a, b) != single[0][0]:
                    raise AssertionError("divisible partner must be the pair's sum")
                meta[root] = _OrbitData(pair[0], 2, True, single[0])
        self._meta = meta
        self.multipliable_roots = tuple(
            root for root in sigma.positive_roots if meta[root].multipliable
        )

    # -- queries -----------------------------------------------------------

    def orbit_data(self, sigma_root: Root) -> _OrbitData:
        """Orbit data for any root of Sigma; negatives mirror the positives."""
        if sigma_root in self._meta:
            return self._meta[sigma_root]
        neg = tuple(-x for x in sigma_root)
        if neg not in self._meta:
            raise ValueError(f"{sigma_root} is not a root of {self.echelonnage.label}")
        data = self._meta[neg]
        flip = tuple(sorted(tuple(-x for x in g) for g in data.orbit))
        flip2 = None
        if data.divisible_orbit is not None:
            flip2 = tuple(sorted(tuple(-x for x in g) for g in data.divisible_orbit))
        return _OrbitData(flip, data.d, data.multipliable, flip2)

    def with_other_special_vertex(self) -> "TwistedDatum":
        """The special but not absolutely special base point (folded odd A types only)."""
        if not self.multipliable_roots:
            raise ValueError("only data with multipliable roots have a second special vertex")
        twin = object.__new__(TwistedDatum)
        twin.__dict__.update(self.__dict__)
        twin.vertex = OTHER_SPECIAL
        return twin


def build_twisted(
    absolute_type: str, e: int, sigma0_spec: IntVec | None = None
) -> TwistedDatum:
    """Fold the named simply-laced system by an order-e diagram automorphism."""
    absolute = build_root_system(absolute_type)
    if e not in (1, 2, 3):
        raise ValueError("twisting order must be 1, 2, or 3")
    if e > 1 and any(d != 1 for d in absolute.half_norms):
        raise ValueError("twisting requires a simply-laced absolute type")
    letter, rank = absolute_type[0], absolute.rank
    sigma0 = (
        tuple(sigma0_spec)
        if sigma0_spec is not None
        else default_sigma0(letter, rank, e)
    )
    if sorted(sigma0) != list(range(rank)):
        raise ValueError("sigma0 must be a permutation of the simple indices")
    cart = absolute.cartan
    for i in range(rank):
        for j in range(rank):
            if cart[sigma0[i]][sigma0[j]] != cart[i][j]:
                raise ValueError("sigma0 does not preserve the Cartan matrix")
    order = 1
    cur = sigma0
    ident = tuple(range(rank))
    while cur != ident:
        cur = tuple(sigma0[c] for c in cur)
        order += 1
        if order > 3:
            break
    if order != e:
        raise ValueError(f"sigma0 has order {order}, expected {e}")
    label = f"{e if e > 1 else ''}{absolute_type}"
    return TwistedDatum(label, absolute, e, sigma0)


@lru_cache(maxsize=None)
def twisted_datum(label: str) -> TwistedDatum:
    """Build a datum from a twisted label such as "A3", "2A4", or "3D4"."""
    e, letter, rank = parse_type_label(label)
    return build_twisted(f"{letter}{rank}", e)


def level_set(datum: TwistedDatum, sigma_root: Root) -> tuple[LevelProgression, ...]:
    """Admissible relative levels over a root of Sigma."""
    data = datum.orbit_data(sigma_root)
    if not data.multipliable:
        return (LevelProgression("case1", Fraction(0), Fraction(1, data.d), data.d),)
    return (
        LevelProgression("case2a", Fraction(0), Fraction(1, 2), 2),
        LevelProgression("case2b", Fraction(1, 2), Fraction(1), 1),
    )


def sigma_affine_to_relative(datum: TwistedDatum, a: AffineRoot) -> RelativeAffineRoot:
    """Translate a Sigma-affine root (root, level) across the level correspondence."""
    sigma_root, k = a
    data = datum.orbit_data(sigma_root)
    if not data.multipliable:
        return RelativeAffineRoot("case1", data.orbit, Fraction(k, data.d), sigma_root, k)
    if k % 2:
        return RelativeAffineRoot("case2b", data.divisible_orbit, Fraction(k, 2), sigma_root, k)
    return RelativeAffineRoot("case2a", data.orbit, Fraction(k, 4), sigma_root, k)


def relative_to_sigma_level(datum: TwistedDatum, rel: RelativeAffineRoot) -> int:
    """Inverse direction of the level correspondence."""
    if rel.case == "case1":
        k = rel.m * len(rel.orbit)
    elif rel.case == "case2a":
        k = rel.m * 4
    else:
        k = rel.m * 2
    if k.denominator != 1:
        raise ValueError("relative level is not admissible")
    return int(k)


def translate_affine_root(a: AffineRoot, lam: Coweight) -> AffineRoot:
    """Conjugating by the translation t^lam shifts the level by <lam, root>."""
    sigma_root, k = a
    return (sigma_root, k + lam.pairing_with_root(sigma_root))


def cartan_sigma_dim(datum: TwistedDatum, m: int) -> int:
    """Dimension of the zeta^m eigenspace of sigma0 on the Cartan subalgebra.

    sigma0 permutes the simple coroots; a cycle of length L contributes the
    full set of L-th roots of unity, so it meets zeta^m exactly when
    e divides m*L.
    """
    e, perm = datum.e, datum.sigma0
    seen: set[int] = set()
    dim = 0
    for i in range(datum.absolute.rank):
        if i in seen:
            continue
        length = 1
        j = perm[i]
        seen.add(i)
        while j != i:
            seen.add(j)
            j = perm[j]
            length += 1
        if (m * length) % e == 0:
            dim += 1
    return dim


def affine_roots_negative_at_vertex(
    datum: TwistedDatum, depth_cutoff: int
) -> tuple[AffineRoot, ...]:
    """All Sigma-affine roots (root, -k), 1 <= k <= cutoff, in a fixed order."""
    if depth_cutoff < 1:
        raise ValueError("depth cutoff must be at least 1")
    sigma = datum.echelonnage
    return tuple(
        (root, -k) for k in range(1, depth_cutoff + 1) for root in sigma.roots
    )
