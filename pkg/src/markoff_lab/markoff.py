"""The tree of Markoff triples, its lift to symmetric unimodular matrices,
the attached quadratic forms and roots, and the trace identity along zigzags.

The extended tree is rooted at (2,1,1), whose single child (5,1,2) heads the
full binary tree of non-degenerate solutions; (1,1,1) sits outside the tree.
Paths are words over 'L'/'R' measured from (2,1,1), so (5,1,2) has path
('L',) and every path starts with 'L'.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .exactnum import BinQuadForm, Mat2, QuadIrr

LEFT = "L"
RIGHT = "R"

#: the multiplier matrix of the lifted tree
M = Mat2(3, 1, -1, 0)
MT = M.transpose()


class DegenerateTripleError(ValueError):
    """(1,1,1) has no tree structure to walk."""


class NotInTreeError(ValueError):
    """The triple is not a node of the extended tree."""


@dataclass(frozen=True)
class MarkoffTriple:
    m: int
    m1: int
    m2: int
    path: tuple[str, ...] = ()
    member_sigma_star: bool = True

    def __post_init__(self):
        if not is_markoff(self.m, self.m1, self.m2):
            raise ValueError(f"({self.m},{self.m1},{self.m2}) is not a solution")
        if self.member_sigma_star and self.m <= max(self.m1, self.m2):
            raise ValueError("tree nodes must dominate their tails")

    @property
    def entries(self) -> tuple[int, int, int]:
        return self.m, self.m1, self.m2

    def __repr__(self) -> str:
        return f"MarkoffTriple({self.m}, {self.m1}, {self.m2})"


def is_markoff(m: int, m1: int, m2: int) -> bool:
    if m <= 0 or m1 <= 0 or m2 <= 0:
        return False
    return m * m + m1 * m1 + m2 * m2 == 3 * m * m1 * m2


UNIT = MarkoffTriple(1, 1, 1, (), member_sigma_star=False)
EXTENDED_ROOT = MarkoffTriple(2, 1, 1, ())
TREE_ROOT = MarkoffTriple(5, 1, 2, (LEFT,))


def _left(t: MarkoffTriple) -> MarkoffTriple:
    return MarkoffTriple(3 * t.m * t.m1 - t.m2, t.m1, t.m, t.path + (LEFT,))


def _right(t: MarkoffTriple) -> MarkoffTriple:
    return MarkoffTriple(3 * t.m * t.m2 - t.m1, t.m, t.m2, t.path + (RIGHT,))


def successors(t: MarkoffTriple):
    """Children of a tree node: (left, right), right is None at (2,1,1).

    The right construction at (2,1,1) would produce the permutation (5,2,1),
    which duplicates (5,1,2) and is excluded from the extended tree.
    """
    if not t.member_sigma_star:
        raise DegenerateTripleError("(1,1,1) has no successors in the tree")
    if t.entries == (2, 1, 1):
        return _left(t), None
    return _left(t), _right(t)


def successor(t: MarkoffTriple, side: str) -> MarkoffTriple:
    left, right = successors(t)
    if side == LEFT:
        return left
    if right is None:
        raise NotInTreeError("(2,1,1) has no right successor")
    return right


def locate(m: int, m1: int, m2: int) -> MarkoffTriple:
    """Annotate a solution with its root path, descending parent by parent.

    The parent of a left child (n, b, a) is (a, b, 3ab - n) and of a right
    child (n, a, c) is (a, 3ac - n, c); which case applies is read off from
    the order of the two smaller entries.
    """
    if not is_markoff(m, m1, m2):
        raise NotInTreeError(f"({m},{m1},{m2}) does not solve the equation")
    if (m, m1, m2) == (1, 1, 1):
        raise NotInTreeError("(1,1,1) lies outside the extended tree")
    steps: list[str] = []
    while (m, m1, m2) != (2, 1, 1):
        if m <= max(m1, m2):
            raise NotInTreeError("entry order never occurs as a tree node")
        if m1 < m2:
            m, m1, m2 = m2, m1, 3 * m1 * m2 - m
            steps.append(LEFT)
        elif m2 < m1:
            m, m1, m2 = m1, 3 * m1 * m2 - m, m2
            steps.append(RIGHT)
        else:
            raise NotInTreeError("repeated entries only occur at the roots")
        if min(m, m1, m2) <= 0:
            raise NotInTreeError("descent left the positive solutions")
    if steps and steps[-1] == RIGHT:
        raise NotInTreeError("(2,1,1) has no right child; permuted duplicate")
    return MarkoffTriple(*_replay(tuple(reversed(steps))))


def _replay(path: tuple[str, ...]) -> tuple[int, int, int, tuple[str, ...]]:
    t = EXTENDED_ROOT
    for side in path:
        t = successor(t, side)
    return t.m, t.m1, t.m2, t.path


def tree_nodes(depth: int) -> list[MarkoffTriple]:
    """All nodes of the binary tree rooted at (5,1,2), levels 0..depth.

    Gives 2**(depth+1) - 1 triples; the extended ancestor (2,1,1) is not
    listed (reach it through EXTENDED_ROOT or locate).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    level = [TREE_ROOT]
    out = list(level)
    for _ in range(depth):
        nxt = []
        for t in level:
            left, right = successors(t)
            nxt.append(left)
            nxt.append(right)
        out.extend(nxt)
        level = nxt
    return out


def maximal_zigzag(t: MarkoffTriple, n: int) -> list[MarkoffTriple]:
    """First n nodes of the maximal zigzag starting at t.

    A zigzag alternates sides; it is maximal exactly when no ancestor can be
    prepended, which pins the first step to the side t occupies below its
    own parent ((2,1,1) starts Left, toward its only child).
    """
    if not t.member_sigma_star:
        raise DegenerateTripleError("no zigzag from (1,1,1)")
    if n < 1:
        raise ValueError("need at least one node")
    side = t.path[-1] if t.path else LEFT
    out = [t]
    cur = t
    for _ in range(n - 1):
        cur = successor(cur, side)
        side = RIGHT if side == LEFT else LEFT
        out.append(cur)
    return out


def zigzag_sides(t: MarkoffTriple, n: int) -> list[str]:
    """Sides of the n-1 steps of the maximal zigzag from t."""
    first = t.path[-1] if t.path else LEFT
    sides = []
    for i in range(n - 1):
        sides.append(first if i % 2 == 0 else (RIGHT if first == LEFT else LEFT))
    return sides


@dataclass(frozen=True)
class CohnMatrix:
    """Symmetric positive matrix (m k; k l) with determinant 1."""

    m: int
    k: int
    l: int

    def __post_init__(self):
        if self.m * self.l - self.k * self.k != 1:
            raise ValueError("determinant must be 1")
        if min(self.m, self.k, self.l) <= 0:
            raise ValueError("entries must be positive")

    @property
    def mat(self) -> Mat2:
        return Mat2(self.m, self.k, self.k, self.l)

    @staticmethod
    def from_mat(x: Mat2) -> "CohnMatrix":
        if not x.is_symmetric():
            raise ValueError("matrix is not symmetric")
        return CohnMatrix(x.a, x.b, x.d)

    def __repr__(self) -> str:
        return f"CohnMatrix({self.m} {self.k}; {self.k} {self.l})"


_COHN_ROOT = (Mat2(5, 3, 3, 2), Mat2(1, 1, 1, 2), Mat2(2, 1, 1, 1))


def cohn_node(t: MarkoffTriple) -> tuple[CohnMatrix, CohnMatrix, CohnMatrix]:
    """The lifted-tree node (x, x1, x2) at the position of t.

    Successors of (x, x1, x2) are (x1*M*x, x1, x) on the left and
    (x*M*x2, x, x2) on the right.
    """
    if not t.member_sigma_star or not t.path:
        raise NotInTreeError("the lifted tree starts at (5,1,2)")
    x, x1, x2 = _COHN_ROOT
    for side in t.path[1:]:
        if side == LEFT:
            x, x1, x2 = x1 * M * x, x1, x
        else:
            x, x1, x2 = x * M * x2, x, x2
    return CohnMatrix.from_mat(x), CohnMatrix.from_mat(x1), CohnMatrix.from_mat(x2)


def cohn_matrix(t: MarkoffTriple) -> CohnMatrix:
    """The symmetric lift x_m, extended to both degenerate solutions."""
    if t.entries == (1, 1, 1):
        return CohnMatrix(1, 1, 2)
    if t.entries == (2, 1, 1):
        return CohnMatrix(2, 1, 1)
    return cohn_node(t)[0]


def offdiag_congruence(t: MarkoffTriple) -> int:
    """The unique k in (0, m] with k*m2 = m1 (mod m)."""
    m, m1, m2 = t.entries
    if m == 1:
        return 1
    k = (m1 * pow(m2, -1, m)) % m
    return k if k else m


def markoff_form(t: MarkoffTriple) -> BinQuadForm:
    """F_m(U,T) = m T^2 + (3m-2k) T U + (l-3k) U^2, of discriminant 9m^2-4."""
    x = cohn_matrix(t)
    return BinQuadForm(x.m, 3 * x.m - 2 * x.k, x.l - 3 * x.k)


def markoff_alpha(t: MarkoffTriple) -> tuple[QuadIrr, QuadIrr]:
    """The root pair (alpha_m, conj) = ((2k - 3m +- sqrt(9m^2-4)) / 2m)."""
    x = cohn_matrix(t)
    d = 9 * x.m * x.m - 4
    return (
        QuadIrr.make(2 * x.k - 3 * x.m, 1, d, 2 * x.m),
        QuadIrr.make(2 * x.k - 3 * x.m, -1, d, 2 * x.m),
    )


def _upper_left(t) -> int:
    if isinstance(t, MarkoffTriple):
        return t.m
    if isinstance(t, CohnMatrix):
        return t.m
    return int(t)


def fricke_check(window) -> bool:
    """Trace identity for three consecutive zigzag nodes.

    With q_i = 3 m_i the identity reads q1^2 + q2^2 + q3^2 = q1 q2 q3,
    equivalent to the defining equation for the upper-left entries.
    """
    if len(window) != 3:
        raise ValueError("need exactly three consecutive nodes")
    qs = [3 * _upper_left(t) for t in window]
    return qs[0] ** 2 + qs[1] ** 2 + qs[2] ** 2 == qs[0] * qs[1] * qs[2]


def pairwise_coprime(t: MarkoffTriple) -> bool:
    m, m1, m2 = t.entries
    return gcd(m, m1) == 1 and gcd(m, m2) == 1 and gcd(m1, m2) == 1
