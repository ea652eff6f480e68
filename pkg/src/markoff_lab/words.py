"""Words over positive integers, the two-letter submonoid on a = 11 and
b = 22, its U/V substitutions, and the exact partial-quotient streams of the
limit numbers attached to tree nodes.

A Word is a tuple of positive integers.  Two-letter words (W2) are plain
strings over "ab"; substitution endomorphisms are strings over "UV" acting
on the right, so "UV" means apply U first, then V.
"""

from __future__ import annotations

from functools import lru_cache

from .exactnum import Mat2
from .markoff import (
    LEFT,
    RIGHT,
    DegenerateTripleError,
    MarkoffTriple,
    cohn_matrix,
    maximal_zigzag,
)

Word = tuple  # tuple[int, ...]

_SUB = {
    "U": {"a": "ab", "b": "b"},
    "V": {"a": "a", "b": "ab"},
}

_EXPAND = {"a": (1, 1), "b": (2, 2)}


class NotInPsiTreeError(ValueError):
    """Only nodes strictly below (2,1,1) carry a substitution word."""


class FactorizationError(AssertionError):
    """Internal consistency failure of the palindrome factorization."""


def phi(word) -> Mat2:
    """Monoid morphism digit -> (digit 1; 1 0), empty word -> identity."""
    out = Mat2.identity()
    for a in word:
        if a < 1:
            raise ValueError("digits must be positive")
        out = out * Mat2(a, 1, 1, 0)
    return out


def expand_w2(w2: str) -> Word:
    """Letter expansion a -> 1,1 and b -> 2,2 (injective)."""
    out: list[int] = []
    for ch in w2:
        out.extend(_EXPAND[ch])
    return tuple(out)


def apply_morphism(w2: str, endo: str) -> str:
    """Apply the substitution word left to right: w^(e1 e2) = (w^e1)^e2."""
    for e in endo:
        table = _SUB[e]
        w2 = "".join(table[ch] for ch in w2)
    return w2


def psi_for_triple(t: MarkoffTriple) -> str:
    """Substitution word at the mirrored tree position of t.

    The substitution tree is rooted at (5,1,2) with left successor V*psi and
    right successor U*psi, so the path letters are prepended bottom-up.
    """
    if not t.member_sigma_star or len(t.path) == 0:
        raise NotInPsiTreeError(f"{t.entries} lies outside the substitution tree")
    return "".join("V" if s == LEFT else "U" for s in reversed(t.path[1:]))


def pi_word(t: MarkoffTriple) -> Word:
    """Periodic digit block of the root alpha_m: a, b, or (ab)^psi expanded."""
    if t.entries == (1, 1, 1):
        return expand_w2("a")
    if t.entries == (2, 1, 1):
        return expand_w2("b")
    return expand_w2(apply_morphism("ab", psi_for_triple(t)))


def palindrome_factor(endo: str) -> str:
    """The palindrome p with (ab)^endo = a p b."""
    w = apply_morphism("ab", endo)
    if not (w.startswith("a") and w.endswith("b")):
        raise FactorizationError(f"(ab)^{endo or 'I'} = {w} lacks the a..b frame")
    p = w[1:-1]
    if p != p[::-1]:
        raise FactorizationError(f"middle of (ab)^{endo or 'I'} is not a palindrome")
    return p


@lru_cache(maxsize=None)
def _xi_base_psi(t: MarkoffTriple) -> str:
    zz = maximal_zigzag(t, 2)
    first_right = zz[1].path[-1] == RIGHT
    r = 1 if first_right else 2
    return psi_for_triple(zz[r - 1])


@lru_cache(maxsize=None)
def _xi_w2_prefix(t: MarkoffTriple, min_letters: int) -> str:
    base = _xi_base_psi(t)
    prev = apply_morphism("ab", base)
    i = 0
    while len(prev) < min_letters:
        i += 1
        cur = apply_morphism("ab", "VU" * i + base)
        if not cur.startswith(prev):
            raise AssertionError("digit-stream prefixes failed to nest")
        prev = cur
    return prev


def xi_word_stream(t: MarkoffTriple, n: int) -> Word:
    """First n partial quotients of the limit number of t's maximal zigzag.

    The stream is the increasing union of the words (ab)^((VU)^i psi) where
    psi sits at the zigzag's first or second node according to the side of
    the first step; successive words are checked to extend one another.
    """
    if not t.member_sigma_star:
        raise DegenerateTripleError("no digit stream at (1,1,1)")
    if n < 1:
        raise ValueError("need at least one digit")
    w2 = _xi_w2_prefix(t, (n + 1) // 2)
    return expand_w2(w2)[:n]


def cube_prefixes(prefix: Word) -> list[Word]:
    """All words whose cube is a prefix of the given finite word."""
    return [
        prefix[:k]
        for k in range(1, len(prefix) // 3 + 1)
        if prefix[:k] * 3 == prefix[: 3 * k]
    ]


def word_to_str(word) -> str:
    """Digit string when all digits are single-digit, else comma-separated."""
    if all(a <= 9 for a in word):
        return "".join(str(a) for a in word)
    return ",".join(str(a) for a in word)


def word_from_str(s: str) -> Word:
    if "," in s:
        return tuple(int(p) for p in s.split(","))
    return tuple(int(ch) for ch in s)
