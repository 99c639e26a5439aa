"""Exact element arithmetic in amalgamated free products and HNN extensions.

Both presentations work over finite groups given by multiplication tables
(element 0 is the identity).  Elements are stored in unique canonical
normal forms built from fixed right-coset representatives, chosen as the
least element index of each coset; the reduction direction is right to
left, with an independent left-to-right reducer kept as a cross-check
oracle.

Amalgam H *_C K.  An element is (c, r_1 ... r_n): c in C, each r_i a
non-trivial right-coset representative, factors alternating.  The word
denotes e(c) . r_1 ... r_n, where e embeds C into the factor of r_1
(either embedding gives the same group element, that is the amalgamation).

HNN <H, t | t^-1 c t = phi(c), c in C1>.  An element is
g_0 t^{e_1} g_1 ... t^{e_n} g_n with each g_i (i >= 1) the representative
of its C1-coset when e_i = -1 and of its C2-coset when e_i = +1, and no
pinch t^e 1 t^-e remaining (Britton reduction).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidLetter,
    InvalidPresentation,
    PresentationMismatch,
    UnsupportedParameter,
)


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as a multiplication table; element 0 is the identity."""

    table: tuple[tuple[int, ...], ...]
    name: str = "G"

    def __post_init__(self):
        n = len(self.table)
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise UnsupportedParameter(
                    "multiplication table is not square over 0..n-1"
                )
        for a in range(n):
            if self.table[0][a] != a or self.table[a][0] != a:
                raise UnsupportedParameter("element 0 is not an identity")
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)) or sorted(
                self.table[b][a] for b in range(n)
            ) != list(range(n)):
                raise UnsupportedParameter("table rows/columns are not permutations")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if (
                        self.table[self.table[a][b]][c]
                        != self.table[a][self.table[b][c]]
                    ):
                        raise UnsupportedParameter("table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(0)

    @staticmethod
    def cyclic(n: int, name: str | None = None) -> "FiniteGroup":
        if n < 1:
            raise UnsupportedParameter("cyclic group order must be >= 1")
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return FiniteGroup(table, name or f"Z{n}")


def _check_embedding(c: FiniteGroup, target: FiniteGroup, embed: tuple[int, ...], label: str):
    if len(embed) != c.order or len(set(embed)) != c.order:
        raise InvalidPresentation(f"{label}: embedding is not injective")
    if embed[0] != 0:
        raise InvalidPresentation(f"{label}: embedding does not fix the identity")
    for a in range(c.order):
        for b in range(c.order):
            if target.mul(embed[a], embed[b]) != embed[c.mul(a, b)]:
                raise InvalidPresentation(f"{label}: embedding is not a homomorphism")


def _right_coset_reps(group: FiniteGroup, subgroup: tuple[int, ...]):
    """rep[x] = least element of the right coset (subgroup . x); part[x] with x = part.rep."""
    rep = [0] * group.order
    part = [0] * group.order
    seen = [False] * group.order
    for x in range(group.order):
        if seen[x]:
            continue
        coset = sorted(group.mul(s, x) for s in subgroup)
        r = coset[0]
        for y in coset:
            seen[y] = True
            rep[y] = r
            part[y] = group.mul(y, group.inv(r))
    return tuple(rep), tuple(part)


def _left_coset_reps(group: FiniteGroup, subgroup: tuple[int, ...]):
    """rep[x] = least element of the left coset (x . subgroup); part[x] with x = rep.part."""
    rep = [0] * group.order
    part = [0] * group.order
    seen = [False] * group.order
    for x in range(group.order):
        if seen[x]:
            continue
        coset = sorted(group.mul(x, s) for s in subgroup)
        r = coset[0]
        for y in coset:
            seen[y] = True
            rep[y] = r
            part[y] = group.mul(group.inv(r), y)
    return tuple(rep), tuple(part)


# --------------------------------------------------------------------------
# Amalgamated free product
# --------------------------------------------------------------------------

SIDE_H = 0
SIDE_K = 1
SIDE_NAMES = ("H", "K")


class AmalgamPresentation:
    """H *_C K with explicit embeddings of C into both factors."""

    def __init__(
        self,
        h: FiniteGroup,
        k: FiniteGroup,
        c: FiniteGroup,
        embed_h: tuple[int, ...],
        embed_k: tuple[int, ...],
        name: str = "amalgam",
    ):
        _check_embedding(c, h, tuple(embed_h), "C->H")
        _check_embedding(c, k, tuple(embed_k), "C->K")
        self.h, self.k, self.c = h, k, c
        self.embed = (tuple(embed_h), tuple(embed_k))
        self.name = name
        self.factors = (h, k)
        self._c_of_image = (
            {img: i for i, img in enumerate(self.embed[0])},
            {img: i for i, img in enumerate(self.embed[1])},
        )
        self._rep = []
        self._cpart = []
        self._lrep = []
        self._lcpart = []
        for side in (SIDE_H, SIDE_K):
            rep, part = _right_coset_reps(self.factors[side], self.embed[side])
            self._rep.append(rep)
            self._cpart.append(part)
            lrep, lpart = _left_coset_reps(self.factors[side], self.embed[side])
            self._lrep.append(lrep)
            self._lcpart.append(lpart)

    def identity(self) -> "AmalgamElement":
        return AmalgamElement(self, 0, ())

    def letter(self, side: int, value: int) -> "AmalgamElement":
        """The single factor letter as a group element."""
        return self.reduce([(side, value)])

    def in_c_image(self, side: int, x: int) -> int | None:
        """Index in C if factor element x lies in the image of C, else None."""
        return self._c_of_image[side].get(x)

    def _check_letter(self, side: int, value: int) -> None:
        if side not in (SIDE_H, SIDE_K):
            raise InvalidLetter(f"unknown factor tag {side!r}")
        if not 0 <= value < self.factors[side].order:
            raise InvalidLetter(
                f"letter {value} out of range for factor {SIDE_NAMES[side]}"
            )

    def _prepend(self, side: int, x: int, c: int, word: tuple) -> tuple[int, tuple]:
        """Normal form of x . (e(c) . word) for a factor letter x."""
        f = self.factors[side]
        y = f.mul(x, self.embed[side][c])
        if word and word[0][0] == side:
            y = f.mul(y, word[0][1])
            word = word[1:]
        c_idx = self.in_c_image(side, y)
        if c_idx is not None:
            return c_idx, word
        r = self._rep[side][y]
        return self._c_of_image[side][self._cpart[side][y]], ((side, r),) + word

    def reduce(self, raw_word) -> "AmalgamElement":
        """Canonical normal form of a word of (side, value) factor letters.

        Letters are absorbed right to left; adjacent same-factor letters are
        multiplied in their factor and letters landing in the image of C are
        folded into the constant part.
        """
        c, word = 0, ()
        for side, value in reversed(list(raw_word)):
            self._check_letter(side, value)
            c, word = self._prepend(side, value, c, word)
        return AmalgamElement(self, c, word)

    def reduce_left_to_right(self, raw_word) -> "AmalgamElement":
        """Independent reducer: left-to-right absorption with left-coset reps.

        Maintains the element as r'_1 ... r'_m . e(c) and converts to the
        canonical right-coset form at the end.  Used as a confluence oracle
        against reduce().
        """
        word: list[tuple[int, int]] = []
        c = 0
        for side, value in raw_word:
            self._check_letter(side, value)
            f = self.factors[side]
            y = f.mul(self.embed[side][c], value)
            if word and word[-1][0] == side:
                y = f.mul(word.pop()[1], y)
            c_idx = self.in_c_image(side, y)
            if c_idx is not None:
                c = c_idx
            else:
                r = self._lrep[side][y]
                word.append((side, r))
                c = self._c_of_image[side][self._lcpart[side][y]]
        tail = list(word) + ([(SIDE_H, self.embed[SIDE_H][c])] if c else [])
        return self.reduce(tail)


@dataclass(frozen=True)
class AmalgamElement:
    pres: AmalgamPresentation
    c: int
    word: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        """Normal-form length (number of alternating syllables)."""
        return len(self.word)

    def is_identity(self) -> bool:
        return self.c == 0 and not self.word

    def key(self) -> bytes:
        parts = [b"%d" % self.c]
        parts += [
            b"%c%d" % (ord(SIDE_NAMES[s][0]), r) for s, r in self.word
        ]
        return b";".join(parts)

    def letters(self) -> list[tuple[int, int]]:
        """The element as explicit factor letters (constant part first)."""
        out = []
        if self.c:
            out.append((SIDE_H, self.pres.embed[SIDE_H][self.c]))
        out.extend(self.word)
        return out

    def __mul__(self, other: "AmalgamElement") -> "AmalgamElement":
        if self.pres is not other.pres:
            raise PresentationMismatch("elements from different presentations")
        c, word = other.c, other.word
        for side, value in reversed(self.letters()):
            c, word = self.pres._prepend(side, value, c, word)
        return AmalgamElement(self.pres, c, word)

    def inverse(self) -> "AmalgamElement":
        inv_letters = [
            (s, self.pres.factors[s].inv(v)) for s, v in reversed(self.word)
        ]
        c, word = self.pres.c.inv(self.c), ()
        for side, value in reversed(inv_letters):
            c, word = self.pres._prepend(side, value, c, word)
        return AmalgamElement(self.pres, c, word)


# --------------------------------------------------------------------------
# HNN extension
# --------------------------------------------------------------------------


class HnnPresentation:
    """<H, t | t^-1 c t = phi(c) for c in C1>, phi an isomorphism C1 -> C2."""

    def __init__(
        self,
        h: FiniteGroup,
        c1: tuple[int, ...],
        c2: tuple[int, ...],
        phi: dict[int, int],
        name: str = "hnn",
    ):
        self.h = h
        self.c1 = tuple(c1)
        self.c2 = tuple(c2)
        self.name = name
        for label, sub in (("C1", self.c1), ("C2", self.c2)):
            if 0 not in sub:
                raise InvalidPresentation(f"{label} must contain the identity")
            ss = set(sub)
            for a in sub:
                if h.inv(a) not in ss:
                    raise InvalidPresentation(f"{label} is not closed under inverses")
                for b in sub:
                    if h.mul(a, b) not in ss:
                        raise InvalidPresentation(f"{label} is not closed under products")
        phi = dict(phi)
        if sorted(phi) != sorted(self.c1) or sorted(phi.values()) != sorted(self.c2):
            raise InvalidPresentation("phi is not a bijection C1 -> C2")
        for a in self.c1:
            for b in self.c1:
                if h.mul(phi[a], phi[b]) != phi[h.mul(a, b)]:
                    raise InvalidPresentation("phi is not a homomorphism")
        self.phi = phi
        self.phi_inv = {v: k for k, v in phi.items()}
        self._rep1, self._part1 = _right_coset_reps(h, self.c1)
        self._rep2, self._part2 = _right_coset_reps(h, self.c2)
        self._c1set = frozenset(self.c1)
        self._c2set = frozenset(self.c2)

    def identity(self) -> "HnnElement":
        return HnnElement(self, 0, ())

    def h_element(self, g: int) -> "HnnElement":
        if not 0 <= g < self.h.order:
            raise InvalidLetter(f"H element {g} out of range")
        return HnnElement(self, g, ())

    def t_element(self, exponent: int = 1) -> "HnnElement":
        if exponent not in (1, -1):
            raise InvalidLetter("t exponent must be +1 or -1")
        return HnnElement(self, 0, ((exponent, 0),))

    def _normalize(self, g0: int, tail: list[list[int]]) -> "HnnElement":
        """Right-to-left coset normalization plus Britton pinch removal."""
        while True:
            for i in range(len(tail) - 1, -1, -1):
                eps, g = tail[i]
                if eps == -1:
                    r = self._rep1[g]
                    if r != g:
                        carry = self.phi[self._part1[g]]
                        tail[i][1] = r
                        if i == 0:
                            g0 = self.h.mul(g0, carry)
                        else:
                            tail[i - 1][1] = self.h.mul(tail[i - 1][1], carry)
                else:
                    r = self._rep2[g]
                    if r != g:
                        carry = self.phi_inv[self._part2[g]]
                        tail[i][1] = r
                        if i == 0:
                            g0 = self.h.mul(g0, carry)
                        else:
                            tail[i - 1][1] = self.h.mul(tail[i - 1][1], carry)
            pinched = False
            for i in range(len(tail) - 1):
                if tail[i][1] == 0 and tail[i + 1][0] == -tail[i][0]:
                    trailing = tail[i + 1][1]
                    if i == 0:
                        g0 = self.h.mul(g0, trailing)
                    else:
                        tail[i - 1][1] = self.h.mul(tail[i - 1][1], trailing)
                    del tail[i : i + 2]
                    pinched = True
                    break
            if not pinched:
                return HnnElement(self, g0, tuple((e, g) for e, g in tail))

    def reduce(self, raw_word) -> "HnnElement":
        """Normal form of a word of ("h", idx) and ("t", +-1) letters."""
        g0 = 0
        tail: list[list[int]] = []
        for kind, value in raw_word:
            if kind == "h":
                if not 0 <= value < self.h.order:
                    raise InvalidLetter(f"H letter {value} out of range")
                if tail:
                    tail[-1][1] = self.h.mul(tail[-1][1], value)
                else:
                    g0 = self.h.mul(g0, value)
            elif kind == "t":
                if value not in (1, -1):
                    raise InvalidLetter("t exponent must be +1 or -1")
                tail.append([value, 0])
            else:
                raise InvalidLetter(f"unknown letter kind {kind!r}")
        return self._normalize(g0, tail)

    def reduce_pinch_first(self, raw_word) -> "HnnElement":
        """Independent reducer: scan-and-pinch on the raw letter string.

        Repeatedly merges adjacent H letters and rewrites the leftmost pinch
        t^-1 c t -> phi(c) or t c t^-1 -> phi_inv(c) until Britton-reduced,
        then performs one right-to-left representative pass.  Confluence
        oracle against reduce().
        """
        letters: list[tuple[str, int]] = []
        for kind, value in raw_word:
            if kind == "h":
                if not 0 <= value < self.h.order:
                    raise InvalidLetter(f"H letter {value} out of range")
                if value == 0:
                    continue
                letters.append(("h", value))
            elif kind == "t":
                if value not in (1, -1):
                    raise InvalidLetter("t exponent must be +1 or -1")
                letters.append(("t", value))
            else:
                raise InvalidLetter(f"unknown letter kind {kind!r}")
        changed = True
        while changed:
            changed = False
            merged: list[tuple[str, int]] = []
            for kind, value in letters:
                if kind == "h" and merged and merged[-1][0] == "h":
                    m = self.h.mul(merged[-1][1], value)
                    merged.pop()
                    if m != 0:
                        merged.append(("h", m))
                    changed = True
                else:
                    merged.append((kind, value))
            letters = merged
            for i in range(len(letters)):
                if letters[i][0] != "t":
                    continue
                # t^e [c] t^-e with the middle an H letter in the right subgroup
                j = i + 1
                mid = 0
                if j < len(letters) and letters[j][0] == "h":
                    mid = letters[j][1]
                    j += 1
                if j >= len(letters) or letters[j][0] != "t":
                    continue
                if letters[j][1] != -letters[i][1]:
                    continue
                eps = letters[i][1]
                if eps == -1 and mid in self._c1set:
                    image = self.phi[mid]
                elif eps == 1 and mid in self._c2set:
                    image = self.phi_inv[mid]
                else:
                    continue
                repl = [("h", image)] if image != 0 else []
                letters[i:j + 1] = repl
                changed = True
                break
        g0 = 0
        tail: list[list[int]] = []
        for kind, value in letters:
            if kind == "h":
                if tail:
                    tail[-1][1] = self.h.mul(tail[-1][1], value)
                else:
                    g0 = self.h.mul(g0, value)
            else:
                tail.append([value, 0])
        return self._normalize(g0, tail)


@dataclass(frozen=True)
class HnnElement:
    pres: HnnPresentation
    g0: int
    tail: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        """Number of stable letters in the normal form."""
        return len(self.tail)

    def is_identity(self) -> bool:
        return self.g0 == 0 and not self.tail

    def key(self) -> bytes:
        parts = [b"%d" % self.g0]
        parts += [b"%c%d" % (ord("+") if e > 0 else ord("-"), g) for e, g in self.tail]
        return b";".join(parts)

    def letters(self) -> list[tuple[str, int]]:
        out: list[tuple[str, int]] = [("h", self.g0)]
        for eps, g in self.tail:
            out.append(("t", eps))
            out.append(("h", g))
        return out

    def __mul__(self, other: "HnnElement") -> "HnnElement":
        if self.pres is not other.pres:
            raise PresentationMismatch("elements from different presentations")
        tail = [list(p) for p in self.tail]
        if tail:
            g0 = self.g0
            tail[-1][1] = self.pres.h.mul(tail[-1][1], other.g0)
        else:
            g0 = self.pres.h.mul(self.g0, other.g0)
        tail.extend([e, g] for e, g in other.tail)
        return self.pres._normalize(g0, tail)

    def inverse(self) -> "HnnElement":
        g0 = self.pres.h.inv(self.tail[-1][1]) if self.tail else self.pres.h.inv(self.g0)
        tail: list[list[int]] = []
        if self.tail:
            chain = [self.g0] + [g for _, g in self.tail]
            eps = [e for e, _ in self.tail]
            for idx in range(len(eps) - 1, -1, -1):
                tail.append([-eps[idx], self.pres.h.inv(chain[idx])])
        return self.pres._normalize(g0, tail)

    @property
    def first_exponent(self) -> int | None:
        """Sign of the leading stable letter, None for elements of H."""
        return self.tail[0][0] if self.tail else None
