"""Exact symbolic loop algebra over a Chevalley basis, with a twist.

Scalars live in Q(zeta) for zeta a primitive e-th root of unity, e <= 3.
The Chevalley basis consists of X_gamma for every root gamma and H_i for the
simple coroots; structure constants come from a bimultiplicative asymmetry
function on the root lattice determined by a diagram orientation, so they
are exact integers and the Jacobi identity is checked at construction.

A diagram automorphism extends to the algebra through the pinning: simple
generators map without signs, everything else picks up a forced +-1.  The
loop extension acts by sigma(X times u^n) = zeta^n sigma0(X) times u^n; the
invariant vectors e_a attached to relative affine roots, their conjugates
under exp(ad), and the Cartan components extracted from those conjugates are
all computed term by term with no floating point anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from affsch.rootsys import FiniteRootSystem, IntVec, Root, build_root_system
from affsch.twist import (
    RelativeAffineRoot,
    TwistedDatum,
    level_set,
    sigma_affine_to_relative,
)

Symbol = tuple
Rational = int | Fraction


# -- cyclotomic scalars -------------------------------------------------------


@dataclass(frozen=True)
class CycScalar:
    """a + b*zeta with rational a, b; zeta a primitive e-th root of unity.

    For e <= 2 the zeta part is folded away (zeta = 1 or -1), so b == 0.
    For e == 3 products reduce through zeta^2 = -1 - zeta.
    """

    e: int
    a: Fraction
    b: Fraction

    @staticmethod
    def of(e: int, a: Rational, b: Rational = 0) -> "CycScalar":
        a, b = Fraction(a), Fraction(b)
        if e == 1:
            a, b = a + b, Fraction(0)
        elif e == 2:
            a, b = a - b, Fraction(0)
        elif e != 3:
            raise ValueError("cyclotomic order must be 1, 2, or 3")
        return CycScalar(e, a, b)

    @staticmethod
    def zeta_power(e: int, n: int) -> "CycScalar":
        n %= e
        if n == 0:
            return CycScalar.of(e, 1)
        if e == 2:
            return CycScalar.of(e, -1)
        if n == 1:
            return CycScalar.of(e, 0, 1)
        return CycScalar.of(e, -1, -1)  # zeta^2 for e = 3

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def _check(self, other: "CycScalar") -> None:
        if self.e != other.e:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "CycScalar") -> "CycScalar":
        self._check(other)
        return CycScalar(self.e, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "CycScalar") -> "CycScalar":
        self._check(other)
        return CycScalar(self.e, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "CycScalar":
        return CycScalar(self.e, -self.a, -self.b)

    def __mul__(self, other: "CycScalar") -> "CycScalar":
        self._check(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        if self.e != 3:
            return CycScalar(self.e, a * c, Fraction(0))
        return CycScalar(3, a * c - b * d, a * d + b * c - b * d)

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero cyclotomic scalar")
        if self.e != 3:
            return CycScalar(self.e, 1 / self.a, Fraction(0))
        norm = self.a * self.a - self.a * self.b + self.b * self.b
        return CycScalar(3, (self.a - self.b) / norm, -self.b / norm)

    def __truediv__(self, other: "CycScalar") -> "CycScalar":
        return self * other.inverse()

    def scale(self, r: Rational) -> "CycScalar":
        r = Fraction(r)
        return CycScalar(self.e, self.a * r, self.b * r)


# -- Chevalley basis ----------------------------------------------------------


def _oriented_edges(system: FiniteRootSystem, letter: str) -> frozenset[tuple[int, int]]:
    """Orient the Dynkin diagram; chosen symmetric under the standard folds."""
    rank = system.rank
    edges = [
        (i, j)
        for i in range(rank)
        for j in range(i + 1, rank)
        if system.cartan[i][j] != 0
    ]
    oriented: set[tuple[int, int]] = set()
    if letter == "A":
        # toward the center; the middle edge of even A breaks the symmetry,
        # which is what forces the sign twist on the flip-fixed roots
        for i, j in edges:
            oriented.add((i, j) if i < (rank - 1) / 2 else (j, i))
    elif letter == "D":
        hub = rank - 3
        for i, j in edges:
            di, dj = abs(i - hub), abs(j - hub)
            if j >= rank - 2:
                oriented.add((i, j))  # branch edges leave the hub
            else:
                oriented.add((i, j) if di < dj else (j, i))
    elif letter == "E" and rank == 6:
        oriented = {(0, 2), (2, 3), (4, 3), (5, 4), (1, 3)}
    elif letter == "E":
        oriented = set(edges)
    else:
        raise ValueError(f"no Chevalley orientation for type {letter}{rank}")
    return frozenset(oriented)


class ChevalleyAlgebra:
    """Basis symbols ("X", root) and ("H", i) with integer structure constants.

    The asymmetry function eps(gamma, delta) = (-1)^(sum over loops and
    oriented edges of coefficient products) gives [X_g, X_d] = N X_{g+d} with
    N = eps(g, d) * s(g) s(d) s(g+d), where s is the sign of the root; the
    remaining brackets are [X_g, X_{-g}] = H_g and the pairing action of H.
    """

    def __init__(self, system: FiniteRootSystem, letter: str) -> None:
        if any(d != 1 for d in system.half_norms):
            raise ValueError("Chevalley construction here requires a simply-laced type")
        self.system = system
        self.oriented = _oriented_edges(system, letter)
        self._roots = set(system.roots)
        self._positive = set(system.positive_roots)
        self.symbols: tuple[Symbol, ...] = tuple(
            ("X", r) for r in system.roots
        ) + tuple(("H", i) for i in range(system.rank))
        self._verify()

    def __repr__(self) -> str:
        return f"ChevalleyAlgebra({self.system.label})"

    def _eps_exponent(self, g: Root, d: Root) -> int:
        total = sum(a * b for a, b in zip(g, d))
        total += sum(g[i] * d[j] for i, j in self.oriented)
        return total & 1

    def n_constant(self, g: Root, d: Root) -> int:
        """N with [X_g, X_d] = N X_{g+d}; zero when g+d is not a root."""
        s = tuple(a + b for a, b in zip(g, d))
        if s not in self._roots:
            return 0
        sign = 1 if self._eps_exponent(g, d) == 0 else -1
        for root in (g, d, s):
            if root not in self._positive:
                sign = -sign
        return sign

    def bracket_symbols(self, x: Symbol, y: Symbol) -> list[tuple[int, Symbol]]:
        kx, ky = x[0], y[0]
        if kx == "H" and ky == "H":
            return []
        if kx == "H":
            return [(self.system.pairing_with_coroot(y[1], x[1]), y)]
        if ky == "H":
            return [(-self.system.pairing_with_coroot(x[1], y[1]), x)]
        g, d = x[1], y[1]
        if all(a + b == 0 for a, b in zip(g, d)):
            return [(m, ("H", j)) for j, m in enumerate(g) if m]
        n = self.n_constant(g, d)
        return [(n, ("X", tuple(a + b for a, b in zip(g, d))))] if n else []

    def _verify(self) -> None:
        roots = self.system.roots
        for g in roots:
            for d in roots:
                if self.n_constant(g, d) != -self.n_constant(d, g):
                    raise AssertionError("antisymmetry failure in structure constants")
        if len(roots) <= 30:
            triples = [(g, d, m) for g in roots for d in roots for m in roots]
        else:
            rng = random.Random(0)
            triples = [
                (rng.choice(roots), rng.choice(roots), rng.choice(roots))
                for _ in range(500)
            ]
        for g, d, m in triples:
            acc: dict[Symbol, int] = {}
            for a, b, c in ((g, d, m), (d, m, g), (m, g, d)):
                for n1, s1 in self.bracket_symbols(("X", a), ("X", b)):
                    for n2, s2 in self.bracket_symbols(s1, ("X", c)):
                        acc[s2] = acc.get(s2, 0) + n1 * n2
            if any(acc.values()):
                raise AssertionError(f"Jacobi failure at {g}, {d}, {m}")


@lru_cache(maxsize=None)
def build_chevalley(type_label: str) -> ChevalleyAlgebra:
    """Chevalley algebra of a simply-laced type with build-time checks."""
    system = build_root_system(type_label)
    return ChevalleyAlgebra(system, type_label[0])


# -- the pinned diagram automorphism ------------------------------------------


class Sigma0Map:
    """sigma0 on the Chevalley basis: X_gamma -> c_gamma X_{sigma0 gamma}.

    Simple generators are pinned with c = +1; other signs are forced by the
    bracket recursion and verified to give an automorphism of the stated order.
    """

    def __init__(self, algebra: ChevalleyAlgebra, perm: IntVec) -> None:
        self.algebra = algebra
        self.perm = perm
        self._signs = self._extend()
        self.order = self._verify()

    def _act_root(self, m: Root) -> Root:
        out = [0] * len(m)
        for i, mi in enumerate(m):
            out[self.perm[i]] = mi
        return tuple(out)

    def _extend(self) -> dict[Root, int]:
        system = self.algebra.system
        cart = system.cartan
        rank = system.rank
        for i in range(rank):
            for j in range(rank):
                if cart[self.perm[i]][self.perm[j]] != cart[i][j]:
                    raise ValueError("permutation is not a diagram automorphism")
        signs: dict[Root, int] = {}
        for gamma in system.positive_roots:  # sorted by height
            if sum(gamma) == 1:
                signs[gamma] = 1
                continue
            for i in range(rank):
                if gamma[i] == 0:
                    continue
                delta = tuple(g - (1 if j == i else 0) for j, g in enumerate(gamma))
                if delta not in signs:
                    continue
                alpha = tuple(1 if j == i else 0 for j in range(rank))
                n_old = self.algebra.n_constant(delta, alpha)
                if n_old == 0:
                    continue
                n_new = self.algebra.n_constant(
                    self._act_root(delta), self._act_root(alpha)
                )
                signs[gamma] = signs[delta] * n_new // n_old
                break
            else:
                raise AssertionError("positive root with no simple-step decomposition")
        for gamma in list(signs):
            signs[tuple(-g for g in gamma)] = signs[gamma]
        return signs

    def _verify(self) -> int:
        # the extension must respect every bracket, else the orientation lies
        symbols = self.algebra.symbols
        for x in symbols:
            for y in symbols:
                left: dict[Symbol, int] = {}
                for n, s in self.algebra.bracket_symbols(x, y):
                    cs, ss = self.image_symbol(s)
                    left[ss] = left.get(ss, 0) + n * cs
                cx, sx = self.image_symbol(x)
                cy, sy = self.image_symbol(y)
                right: dict[Symbol, int] = {}
                for n, s in self.algebra.bracket_symbols(sx, sy):
                    right[s] = right.get(s, 0) + n * cx * cy
                left = {k: v for k, v in left.items() if v}
                right = {k: v for k, v in right.items() if v}
                if left != right:
                    raise AssertionError("sigma0 extension breaks a bracket")
        order = 1
        for sym in symbols:
            c, s, steps = 1, sym, 0
            while True:
                ci, s = self.image_symbol(s)
                c *= ci
                steps += 1
                if s == sym:
                    break
                if steps > 6:
                    raise AssertionError("sigma0 orbit failed to close")
            if c != 1:
                steps *= 2  # sign closes only after a second pass
            order = math.lcm(order, steps)
        return order

    def image(self, gamma: Root) -> tuple[int, Root]:
        return self._signs[gamma], self._act_root(gamma)

    def image_symbol(self, sym: Symbol) -> tuple[int, Symbol]:
        if sym[0] == "H":
            return 1, ("H", self.perm[sym[1]])
        c, root = self.image(sym[1])
        return c, ("X", root)


def sigma0_automorphism(algebra: ChevalleyAlgebra, perm: IntVec) -> Sigma0Map:
    """Extend a diagram automorphism through the pinning; verified at build."""
    return Sigma0Map(algebra, tuple(perm))


# -- loop vectors -------------------------------------------------------------


@dataclass(frozen=True)
class LoopVector:
    """Finitely supported combination of basis symbols times powers of u."""

    algebra: ChevalleyAlgebra
    e: int
    terms: tuple[tuple[Symbol, int, CycScalar], ...]

    @staticmethod
    def make(algebra: ChevalleyAlgebra, e: int, items) -> "LoopVector":
        acc: dict[tuple[Symbol, int], CycScalar] = {}
        for sym, n, c in items:
            if not isinstance(c, CycScalar):
                c = CycScalar.of(e, c)
            key = (sym, n)
            acc[key] = acc[key] + c if key in acc else c
        terms = tuple(
            (sym, n, c) for (sym, n), c in sorted(acc.items()) if not c.is_zero()
        )
        return LoopVector(algebra, e, terms)

    @staticmethod
    def zero(algebra: ChevalleyAlgebra, e: int) -> "LoopVector":
        return LoopVector(algebra, e, ())

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "LoopVector") -> None:
        if self.algebra is not other.algebra or self.e != other.e:
            raise ValueError("loop vectors from different contexts")

    def __add__(self, other: "LoopVector") -> "LoopVector":
        self._check(other)
        return LoopVector.make(self.algebra, self.e, list(self.terms) + list(other.terms))

    def __sub__(self, other: "LoopVector") -> "LoopVector":
        return self + other.scale(-1)

    def scale(self, factor) -> "LoopVector":
        if not isinstance(factor, CycScalar):
            factor = CycScalar.of(self.e, factor)
        return LoopVector.make(
            self.algebra, self.e, [(s, n, c * factor) for s, n, c in self.terms]
        )

    def bracket(self, other: "LoopVector") -> "LoopVector":
        self._check(other)
        items = []
        for s1, n1, c1 in self.terms:
            for s2, n2, c2 in other.terms:
                prod = c1 * c2
                for n, sym in self.algebra.bracket_symbols(s1, s2):
                    items.append((sym, n1 + n2, prod.scale(n)))
        return LoopVector.make(self.algebra, self.e, items)

    def coefficient(self, sym: Symbol, n: int) -> CycScalar:
        for s, m, c in self.terms:
            if s == sym and m == n:
                return c
        return CycScalar.of(self.e, 0)


# -- twisted context ----------------------------------------------------------


class TwistedLoopAlgebra:
    """Chevalley algebra of the absolute type plus the pinned automorphism."""

    def __init__(self, datum: TwistedDatum) -> None:
        self.datum = datum
        self.algebra = build_chevalley(datum.absolute.label)
        self.sigma0 = sigma0_automorphism(self.algebra, datum.sigma0)
        if self.sigma0.order != datum.e:
            raise AssertionError("pinned automorphism order differs from the twist order")


@lru_cache(maxsize=None)
def loop_context(datum: TwistedDatum) -> TwistedLoopAlgebra:
    return TwistedLoopAlgebra(datum)


def sigma_action(datum: TwistedDatum, v: LoopVector) -> LoopVector:
    """sigma(X times u^n) = zeta^n sigma0(X) times u^n, extended linearly."""
    ctx = loop_context(datum)
    e = datum.e
    items = []
    for sym, n, c in v.terms:
        sign, img = ctx.sigma0.image_symbol(sym)
        items.append((img, n, c * CycScalar.zeta_power(e, n).scale(sign)))
    return LoopVector.make(v.algebra, e, items)


def _validate_relative(rel: RelativeAffineRoot) -> None:
    d = len(rel.orbit)
    if rel.case == "case1":
        if (rel.m * d).denominator != 1:
            raise ValueError("level outside the (1/d)Z progression")
    elif rel.case == "case2a":
        if d != 2 or (rel.m * 2).denominator != 1:
            raise ValueError("level outside the (1/2)Z progression")
    elif rel.case == "case2b":
        if d != 1 or (rel.m - Fraction(1, 2)).denominator != 1:
            raise ValueError("level outside the 1/2 + Z progression")
    else:
        raise ValueError(f"unknown case {rel.case!r}")


def make_e_a(datum: TwistedDatum, rel: RelativeAffineRoot) -> LoopVector:
    """The invariant vector spanning the root line of a relative affine root.

    Uniform over the three cases: with n = e*m and representative alpha',
    e_a = sum over i = 1..d of zeta^(i n) sigma0^i(X_{alpha'}) u^n, which
    specializes to the orbit sum, the two-term pair, and the single fixed
    vector respectively.  The result is checked to be sigma-fixed.
    """
    _validate_relative(rel)
    ctx = loop_context(datum)
    e = datum.e
    n = rel.u_degree(e)
    items = []
    sym: Symbol = ("X", rel.orbit[-1])
    sign = 1
    for i in range(1, len(rel.orbit) + 1):
        ci, sym = ctx.sigma0.image_symbol(sym)
        sign *= ci
        items.append((sym, n, CycScalar.zeta_power(e, i * n).scale(sign)))
    vector = LoopVector.make(ctx.algebra, e, items)
    if sigma_action(datum, vector) != vector:
        raise AssertionError("constructed root-line vector is not sigma-fixed")
    return vector


def ad_exp(x: LoopVector, y: LoopVector) -> LoopVector:
    """Ad(exp x) y = sum over n of ad(x)^n y / n!, for nilpotent x."""
    x._check(y)
    if any(sym[0] == "H" for sym, _, _ in x.terms):
        raise ValueError("exp argument must be supported on root directions")
    total, term, n = y, y, 0
    while True:
        term = x.bracket(term)
        if term.is_zero():
            return total
        n += 1
        if n >= 10:
            raise RuntimeError("adjoint series failed to terminate")
        total = total + term.scale(Fraction(1, math.factorial(n)))


def cartan_component(v: LoopVector) -> LoopVector:
    """Projection onto the span of the H symbols, all u-degrees."""
    return LoopVector(
        v.algebra, v.e, tuple(t for t in v.terms if t[0][0] == "H")
    )


def cartan_direction(datum: TwistedDatum, a) -> LoopVector:
    """Cartan-valued tangent vector conjugated out of a negative root line.

    For a = (beta, -k) with k >= 1, the opposite line is taken at the level
    one step shallower (b = -beta - m - 1/d), h = exp(e_b), and the result is
    the Cartan component of Ad(h) e_a: nonzero and sigma-invariant, by
    construction of the correspondence.  Even levels over a multipliable root
    have no such recipe and are rejected.
    """
    beta, level = a
    if level >= 0:
        raise ValueError("need a strictly negative level")
    k = -level
    rel_a = sigma_affine_to_relative(datum, a)
    if rel_a.case == "case2a":
        raise ValueError("no Cartan recipe at even levels over a multipliable root")
    neg = tuple(-x for x in beta)
    if rel_a.case == "case1":
        rel_b = sigma_affine_to_relative(datum, (neg, k - 1))
    else:
        rel_b = sigma_affine_to_relative(datum, (neg, 2 * (k - 1)))
    conjugated = ad_exp(make_e_a(datum, rel_b), make_e_a(datum, rel_a))
    cartan = cartan_component(conjugated)
    if cartan.is_zero():
        raise RuntimeError("vanishing Cartan component contradicts the recipe")
    if sigma_action(datum, cartan) != cartan:
        raise AssertionError("Cartan component escaped the invariant subspace")
    return cartan


# -- invariant-basis verification ----------------------------------------------


def _rank(rows: list[list[CycScalar]]) -> int:
    if not rows:
        return 0
    rows = [row[:] for row in rows]
    cols = len(rows[0])
    rank = 0
    for col in range(cols):
        pivot = next(
            (r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class DegreeLine:
    degree: int
    fixed_dim: int
    progression_count: int
    vector_rank: int

    @property
    def ok(self) -> bool:
        return self.fixed_dim == self.progression_count == self.vector_rank


@dataclass(frozen=True)
class InvariantBasisReport:
    label: str
    window: int
    lines: tuple[DegreeLine, ...]

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)


def root_lines_at_degree(datum: TwistedDatum, n: int) -> tuple[tuple[Root, int], ...]:
    """(sigma_root, sigma_level) pairs whose root line sits at u-degree n."""
    out = []
    m = Fraction(n, datum.e)
    for root in datum.echelonnage.roots:
        for prog in level_set(datum, root):
            if (m - prog.offset) % prog.step != 0:
                continue
            if prog.case == "case1":
                k = int(m * prog.orbit_size)
            elif prog.case == "case2a":
                k = int(m * 4)
            else:
                k = int(m * 2)
            out.append((root, k))
    return tuple(sorted(out))


def verify_invariant_basis(datum: TwistedDatum, degree_window: int) -> InvariantBasisReport:
    """Check the sigma-fixed dimension against the root-line inventory.

    Per u-degree: exact rank of (sigma - id) on the span of the X symbols
    gives the fixed dimension; the progressions predict how many root lines
    land there; the stacked e_a vectors must be independent and fill it.
    """
    if not 0 <= degree_window <= 8:
        raise ValueError("degree window must be between 0 and 8")
    ctx = loop_context(datum)
    e = datum.e
    roots = ctx.algebra.system.roots
    index = {r: i for i, r in enumerate(roots)}
    size = len(roots)
    zero = CycScalar.of(e, 0)
    one = CycScalar.of(e, 1)
    lines = []
    for n in range(-degree_window, degree_window + 1):
        zn = CycScalar.zeta_power(e, n)
        mat = [[zero] * size for _ in range(size)]
        for r in roots:
            sign, img = ctx.sigma0.image(r)
            mat[index[img]][index[r]] = mat[index[img]][index[r]] + zn.scale(sign)
            mat[index[r]][index[r]] = mat[index[r]][index[r]] - one
        fixed_dim = size - _rank(mat)
        labels = root_lines_at_degree(datum, n)
        stacked = []
        for root, k in labels:
            rel = sigma_affine_to_relative(datum, (root, k))
            vec = make_e_a(datum, rel)
            row = [zero] * size
            for sym, deg, c in vec.terms:
                if deg != n or sym[0] != "X":
                    raise AssertionError("root-line vector strayed from its degree")
                row[index[sym[1]]] = c
            stacked.append(row)
        lines.append(DegreeLine(n, fixed_dim, len(labels), _rank(stacked)))
    return InvariantBasisReport(datum.label, degree_window, tuple(lines))


# -- Laurent matrices and the rank-one factorization ---------------------------


class LaurentMatrix:
    """Small square matrix over Q(zeta)[u, u^-1], for the explicit realizations."""

    def __init__(self, e: int, size: int, entries=None) -> None:
        self.e = e
        self.size = size
        self.entries: dict[tuple[int, int], dict[int, CycScalar]] = {}
        for (i, j, n), value in (entries or {}).items():
            self.add_term(i, j, n, value)

    def add_term(self, i: int, j: int, n: int, value) -> None:
        if not isinstance(value, CycScalar):
            value = CycScalar.of(self.e, value)
        cell = self.entries.setdefault((i, j), {})
        cell[n] = cell[n] + value if n in cell else value
        if cell[n].is_zero():
            del cell[n]
            if not cell:
                del self.entries[(i, j)]

    @staticmethod
    def identity(e: int, size: int) -> "LaurentMatrix":
        m = LaurentMatrix(e, size)
        for i in range(size):
            m.add_term(i, i, 0, 1)
        return m

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        out = LaurentMatrix(self.e, self.size)
        for (i, j), cell in list(self.entries.items()) + list(other.entries.items()):
            for n, v in cell.items():
                out.add_term(i, j, n, v)
        return out

    def scale(self, factor) -> "LaurentMatrix":
        out = LaurentMatrix(self.e, self.size)
        if not isinstance(factor, CycScalar):
            factor = CycScalar.of(self.e, factor)
        for (i, j), cell in self.entries.items():
            for n, v in cell.items():
                out.add_term(i, j, n, v * factor)
        return out

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        out = LaurentMatrix(self.e, self.size)
        for (i, k), cell1 in self.entries.items():
            for (k2, j), cell2 in other.entries.items():
                if k != k2:
                    continue
                for n1, v1 in cell1.items():
                    for n2, v2 in cell2.items():
                        out.add_term(i, j, n1 + n2, v1 * v2)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.e, self.size) == (other.e, other.size) and self.entries == other.entries

    def entry(self, i: int, j: int) -> dict[int, CycScalar]:
        return dict(self.entries.get((i, j), {}))

    def trace(self) -> dict[int, CycScalar]:
        acc: dict[int, CycScalar] = {}
        for i in range(self.size):
            for n, v in self.entries.get((i, i), {}).items():
                acc[n] = acc[n] + v if n in acc else v
        return {n: v for n, v in acc.items() if not v.is_zero()}

    def min_exponent(self) -> int:
        exps = [n for cell in self.entries.values() for n in cell]
        return min(exps) if exps else 0

    def exp_nilpotent(self) -> "LaurentMatrix":
        total = LaurentMatrix.identity(self.e, self.size)
        term = LaurentMatrix.identity(self.e, self.size)
        for n in range(1, 10):
            term = term @ self
            if not term.entries:
                return total
            total = total + term.scale(Fraction(1, math.factorial(n)))
        raise RuntimeError("matrix exponential of a non-nilpotent argument")


def matrix_realization(label: str, e: int) -> dict[Symbol, LaurentMatrix]:
    """Faithful matrix images of the basis symbols for the small A types."""

    def mat(size, triples):
        m = LaurentMatrix(e, size)
        for i, j, v in triples:
            m.add_term(i, j, 0, v)
        return m

    if label == "A1":
        return {
            ("X", (1,)): mat(2, [(0, 1, 1)]),
            ("X", (-1,)): mat(2, [(1, 0, 1)]),
            ("H", 0): mat(2, [(0, 0, 1), (1, 1, -1)]),
        }
    if label == "A2":
        return {
            ("X", (1, 0)): mat(3, [(0, 1, 1)]),
            ("X", (0, 1)): mat(3, [(1, 2, -1)]),
            ("X", (1, 1)): mat(3, [(0, 2, 1)]),
            ("X", (-1, 0)): mat(3, [(1, 0, 1)]),
            ("X", (0, -1)): mat(3, [(2, 1, -1)]),
            ("X", (-1, -1)): mat(3, [(2, 0, 1)]),
            ("H", 0): mat(3, [(0, 0, 1), (1, 1, -1)]),
            ("H", 1): mat(3, [(1, 1, 1), (2, 2, -1)]),
        }
    raise ValueError("matrix realizations cover A1 and A2 only")


def realize(v: LoopVector, table: dict[Symbol, LaurentMatrix]) -> LaurentMatrix:
    """Image of a loop vector under a matrix realization of its algebra."""
    size = next(iter(table.values())).size
    out = LaurentMatrix(v.e, size)
    for sym, n, c in v.terms:
        base = table[sym]
        for (i, j), cell in base.entries.items():
            for m, value in cell.items():
                out.add_term(i, j, m + n, value * c)
    return out


def verify_sl2_factorization(k: int, x) -> bool:
    """Check the rank-one curve value splits off its translation part.

    The 2x2 identity: a unipotent with entry x u^-k equals (opposite
    unipotent) times diag(u^-k, u^k) times a matrix with nonnegative
    u-exponents and determinant one.  Zero x has no such splitting.
    """
    if k < 1:
        raise ValueError("winding k must be at least 1")
    x = Fraction(x)
    if x == 0:
        raise ValueError("the zero curve value stays at the base point")

    def mat(triples):
        m = LaurentMatrix(1, 2)
        for i, j, n, v in triples:
            m.add_term(i, j, n, v)
        return m

    left = mat([(0, 0, 0, 1), (0, 1, -k, x), (1, 1, 0, 1)])
    opposite = mat([(0, 0, 0, 1), (1, 0, k, 1 / x), (1, 1, 0, 1)])
    translation = mat([(0, 0, -k, 1), (1, 1, k, 1)])
    plus_part = mat([(0, 0, k, 1), (0, 1, 0, x), (1, 0, 0, -1 / x)])
    if plus_part.min_exponent() < 0:
        return False
    # 2x2 determinant, assembled entry by entry
    a, b = plus_part.entry(0, 0), plus_part.entry(0, 1)
    c, d = plus_part.entry(1, 0), plus_part.entry(1, 1)
    det_terms: dict[int, CycScalar] = {}
    for n1, v1 in a.items():
        for n2, v2 in d.items():
            key = n1 + n2
            det_terms[key] = det_terms.get(key, CycScalar.of(1, 0)) + v1 * v2
    for n1, v1 in b.items():
        for n2, v2 in c.items():
            key = n1 + n2
            det_terms[key] = det_terms.get(key, CycScalar.of(1, 0)) - v1 * v2
    det_terms = {n: v for n, v in det_terms.items() if not v.is_zero()}
    if det_terms != {0: CycScalar.of(1, 1)}:
        return False
    return opposite @ translation @ plus_part == left
