"""Sparse word combinations representing tensor/enveloping-algebra elements,
the concatenation product, the tensor-pair-to-envelope multiplication, and
PBW straightening.

Words are plain tuples of basis indices; the empty tuple is the unit.  An
envelope element is a sparse {word: scalar} map and always denotes an element
of the enveloping algebra *by representative*: structural equality compares
representatives, while :func:`env_eq` decides equality in the quotient by
straightening the difference to the canonical nondecreasing-word form.

Straightening exhaustively rewrites any adjacent out-of-order pair
``x y -> y x + [x, y]`` (the bracket expanded over the basis).  Each rewrite
strictly decreases (word degree, inversion count) lexicographically, so it
terminates; the diamond property of this rewriting system makes the result
independent of strategy, and the leftmost-inversion strategy is fixed purely
for determinism.  Under the split-compatible order (all part-1 letters before
all part-2 letters) straightening doubles as an independent normal-ordering
oracle.
"""

from __future__ import annotations

from functools import lru_cache

from .liealg import CarrierMismatchError, GVector, LieAlgebra, SplitDecomposition

Word = tuple  # sequence of basis indices; () is the unit word


def _acc(d: dict, key, c) -> None:
    """Accumulate coefficient c onto d[key], dropping the key when it cancels."""
    prev = d.get(key)
    if prev is None:
        if c:
            d[key] = c
    else:
        s = prev + c
        if s:
            d[key] = s
        else:
            del d[key]


class EnvElement:
    """Finite scalar combination of words over the full basis."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms=None):
        clean = {}
        if terms:
            n = algebra.dim
            for w, c in terms.items():
                w = tuple(w)
                for letter in w:
                    if not (0 <= letter < n):
                        raise ValueError(f"letter {letter} outside basis")
                if c:
                    clean[w] = c
        self.algebra = algebra
        self.terms = clean

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "EnvElement":
        return cls(algebra)

    @classmethod
    def unit(cls, algebra: LieAlgebra) -> "EnvElement":
        return cls(algebra, {(): algebra.ring.one})

    @classmethod
    def word(cls, algebra: LieAlgebra, letters, coeff=1) -> "EnvElement":
        return cls(algebra, {tuple(letters): algebra.ring.scalar(coeff)})

    @classmethod
    def from_vector(cls, v: GVector) -> "EnvElement":
        """The vector as a sum of one-letter words."""
        return cls(v.algebra, {(i,): c for i, c in v.support()})

    def _check(self, other: "EnvElement") -> None:
        if self.algebra is not other.algebra:
            raise CarrierMismatchError("elements over different algebras")

    def __add__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return EnvElement(self.algebra, out)

    def __sub__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, -c)
        return EnvElement(self.algebra, out)

    def __neg__(self):
        return EnvElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def scale(self, coeff) -> "EnvElement":
        c = self.algebra.ring.scalar(coeff)
        if not c:
            return EnvElement(self.algebra)
        return EnvElement(self.algebra, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, EnvElement):
            return env_mul(self, other)
        return self.scale(other)

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def __eq__(self, other):
        if not isinstance(other, EnvElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal word length; -1 for the zero element."""
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        # Expression form, parseable back: "<coeff> * a * b + ..." ("1" = unit word).
        if not self.terms:
            return "0"
        names = self.algebra.basis
        bits = []
        for w, c in self.sorted_terms():
            word = " * ".join(names[l] for l in w) if w else "1"
            bits.append(f"{c} * {word}")
        return " + ".join(bits)

    def __repr__(self):
        return f"EnvElement<{self}>"


class StateElement:
    """Combination of pairs (word over part 1) (x) (word over part 2)."""

    __slots__ = ("split", "terms")

    def __init__(self, split: SplitDecomposition, terms=None):
        clean = {}
        if terms:
            names = split.algebra.basis
            for (w1, w2), c in terms.items():
                w1, w2 = tuple(w1), tuple(w2)
                for letter in w1:
                    if split.side_of(letter) != 1:
                        raise ValueError(f"letter {names[letter]} not in part 1")
                for letter in w2:
                    if split.side_of(letter) != 2:
                        raise ValueError(f"letter {names[letter]} not in part 2")
                if c:
                    clean[(w1, w2)] = c
        self.split = split
        self.terms = clean

    @property
    def algebra(self) -> LieAlgebra:
        return self.split.algebra

    @classmethod
    def zero(cls, split: SplitDecomposition) -> "StateElement":
        return cls(split)

    @classmethod
    def unit(cls, split: SplitDecomposition) -> "StateElement":
        return cls(split, {((), ()): split.algebra.ring.one})

    @classmethod
    def term(cls, split: SplitDecomposition, w1, w2, coeff=1) -> "StateElement":
        return cls(split, {(tuple(w1), tuple(w2)): split.algebra.ring.scalar(coeff)})

    def _check(self, other: "StateElement") -> None:
        if self.split is not other.split:
            raise CarrierMismatchError("states over different splits")

    def __add__(self, other):
        if not isinstance(other, StateElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        return StateElement(self.split, out)

    def __sub__(self, other):
        if not isinstance(other, StateElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, -c)
        return StateElement(self.split, out)

    def __neg__(self):
        return StateElement(self.split, {k: -c for k, c in self.terms.items()})

    def scale(self, coeff) -> "StateElement":
        c = self.algebra.ring.scalar(coeff)
        if not c:
            return StateElement(self.split)
        return StateElement(self.split, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, coeff):
        return self.scale(coeff)

    def __eq__(self, other):
        if not isinstance(other, StateElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def left_degree(self) -> int:
        """Maximal left-word length; -1 for the zero state."""
        return max((len(w1) for (w1, _w2) in self.terms), default=-1)

    def prepend_left(self, letter: int) -> "StateElement":
        return StateElement(
            self.split,
            {((letter,) + w1, w2): c for (w1, w2), c in self.terms.items()},
        )

    def append_right(self, word) -> "StateElement":
        """Right-multiply by a part-2 word (appended to every right factor)."""
        word = tuple(word)
        out = {}
        for (w1, w2), c in self.terms.items():
            _acc(out, (w1, w2 + word), c)
        return StateElement(self.split, out)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0][0]), kv[0][0], len(kv[0][1]), kv[0][1]),
        )

    def term_strings(self) -> list[str]:
        """One rendered term per entry, sorted descending by
        (left degree, left word, right degree, right word)."""
        names = self.algebra.basis
        out = []
        for (w1, w2), c in reversed(self.sorted_terms()):
            left = " ".join(names[l] for l in w1) if w1 else "1"
            right = " ".join(names[l] for l in w2) if w2 else "1"
            out.append(f"{c} * {left} (x) {right}")
        return out

    def __str__(self):
        strs = self.term_strings()
        return " + ".join(strs) if strs else "0"

    def __repr__(self):
        return f"StateElement<{self}>"


def env_mul(u: EnvElement, v: EnvElement) -> EnvElement:
    """Bilinear extension of word concatenation (the associative product)."""
    u._check(v)
    out: dict = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            _acc(out, w1 + w2, c1 * c2)
    return EnvElement(u.algebra, out)


def mu_state(s: StateElement) -> EnvElement:
    """Multiply the two tensor factors inside the full envelope: each pair
    (w1, w2) becomes the concatenated word w1 w2 (letters pass through
    unchanged because the embeddings are coordinate inclusions)."""
    out: dict = {}
    for (w1, w2), c in s.terms.items():
        _acc(out, w1 + w2, c)
    return EnvElement(s.algebra, out)


def _rank_key(algebra: LieAlgebra, order) -> tuple[int, ...]:
    """rank[i] = position of basis index i in the given total order."""
    n = algebra.dim
    if order is None:
        return tuple(range(n))
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the basis indices")
    rank = [0] * n
    for pos, idx in enumerate(order):
        rank[idx] = pos
    return tuple(rank)


def _leftmost_inversion(rank, w):
    for i in range(len(w) - 1):
        if rank[w[i]] > rank[w[i + 1]]:
            return i
    return None


def _inversions(rank, w) -> int:
    count = 0
    for i in range(len(w)):
        ri = rank[w[i]]
        for j in range(i + 1, len(w)):
            if ri > rank[w[j]]:
                count += 1
    return count


@lru_cache(maxsize=None)
def _straighten_word(algebra: LieAlgebra, rank: tuple[int, ...], w: tuple):
    """Normal form of the single word w as a {word: scalar} map.

    Cached per (algebra, rank, word); callers must treat the result as
    read-only.  Recursion: rewrite the leftmost inversion, then recurse on
    the swapped word and on each bracket-expansion word.
    """
    pos = _leftmost_inversion(rank, w)
    if pos is None:
        return {w: algebra.ring.one}
    x, y = w[pos], w[pos + 1]
    head, tail = w[:pos], w[pos + 2:]
    out = dict(_straighten_word(algebra, rank, head + (y, x) + tail))
    for k, c in enumerate(algebra.table[x][y]):
        if c:
            for w2, c2 in _straighten_word(algebra, rank, head + (k,) + tail).items():
                _acc(out, w2, c * c2)
    return out


def _straighten_counting(u: EnvElement, rank, stats: dict) -> EnvElement:
    """Uncached worklist straightening that counts rewrites and asserts the
    termination measure: every rewrite strictly decreases
    (degree, inversion count) lexicographically for the word it touches."""
    alg = u.algebra
    out: dict = {}
    pending = list(u.terms.items())
    steps = stats.get("steps", 0)
    spawned = stats.get("spawned", 0)
    while pending:
        w, c = pending.pop()
        pos = _leftmost_inversion(rank, w)
        if pos is None:
            _acc(out, w, c)
            continue
        steps += 1
        parent = (len(w), _inversions(rank, w))
        x, y = w[pos], w[pos + 1]
        head, tail = w[:pos], w[pos + 2:]
        children = [(head + (y, x) + tail, c)]
        for k, gamma in enumerate(alg.table[x][y]):
            if gamma:
                children.append((head + (k,) + tail, c * gamma))
        for w2, c2 in children:
            assert (len(w2), _inversions(rank, w2)) < parent
            spawned += 1
            pending.append((w2, c2))
    stats["steps"] = steps
    stats["spawned"] = spawned
    return EnvElement(alg, out)


def straighten(u: EnvElement, order=None, *, stats=None) -> EnvElement:
    """PBW canonical form: every word nondecreasing w.r.t. ``order``
    (default: declaration order), obtained by exhaustive rewriting of
    adjacent inversions.  With ``stats`` a dict, runs the instrumented
    uncached path and records rewrite counts into it."""
    rank = _rank_key(u.algebra, order)
    if stats is not None:
        return _straighten_counting(u, rank, stats)
    out: dict = {}
    for w, c in u.terms.items():
        for w2, c2 in _straighten_word(u.algebra, rank, w).items():
            _acc(out, w2, c * c2)
    return EnvElement(u.algebra, out)


def env_eq(u: EnvElement, v: EnvElement, order=None) -> bool:
    """Equality in the enveloping algebra: straighten(u - v) == 0.
    The verdict does not depend on the chosen order."""
    u._check(v)
    return straighten(u - v, order).is_zero()


def state_canon(s: StateElement) -> StateElement:
    """Canonical state: both factor words straightened to nondecreasing form
    within their own subalgebra (declaration order restricted to each part)."""
    alg = s.algebra
    rank = tuple(range(alg.dim))
    out: dict = {}
    for (w1, w2), c in s.terms.items():
        left = _straighten_word(alg, rank, w1)
        right = _straighten_word(alg, rank, w2)
        for x1, c1 in left.items():
            cc = c * c1
            if not cc:
                continue
            for x2, c2 in right.items():
                _acc(out, (x1, x2), cc * c2)
    return StateElement(s.split, out)


def state_eq(s: StateElement, t: StateElement) -> bool:
    """Equality in U(g1) (x) U(g2): canonical forms coincide structurally."""
    s._check(t)
    return state_canon(s - t).is_zero()


def oracle_normal_order(u: EnvElement, split: SplitDecomposition) -> StateElement:
    """Independent normal-ordering oracle: straighten under the
    split-compatible order, then cut every (now nondecreasing) word at the
    part boundary into (part-1 prefix) (x) (part-2 suffix)."""
    if u.algebra is not split.algebra:
        raise CarrierMismatchError("element over a different algebra")
    flat = straighten(u, split.split_order())
    out: dict = {}
    for w, c in flat.terms.items():
        cut = 0
        while cut < len(w) and split.side_of(w[cut]) == 1:
            cut += 1
        w1, w2 = w[:cut], w[cut:]
        # canonical words under the split order factor as prefix + suffix
        assert all(split.side_of(l) == 2 for l in w2)
        out[(w1, w2)] = c
    return StateElement(split, out)
