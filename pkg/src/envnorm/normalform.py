"""The normal-form calculator.

Everything here is driven by one recursion on states: an algebra element g
acts on a tensor-level state term (w1, w2) by

  * empty w1:  (part-1 component of g) (x) w2
               + 1 (x) (each part-2 letter of g prepended to w2),
  * w1 = x.t:  [g, e_x] acting on (t, w2),  plus  x prepended to
               (g acting on (t, w2)).

The action is linear in g and in the state.  Iterating it letter by letter
(rightmost letter first) gives the module action of words, and sending a
word w to (w acting on 1 (x) 1) -- extended linearly and canonicalized --
is the normal-ordering section: it inverts the factor multiplication that
merges a state back into the envelope.

Intermediate states are deliberately *not* canonicalized between recursion
steps (the recursion is defined on tensor-level representatives; only the
final result is reduced).  The check_* functions verify, at exact equality,
the identities the construction is supposed to satisfy: degree filtration,
right-factor linearity, compatibility with the envelope product, the Lie
action law, and mutual inverseness against the straightening oracle.
"""

from __future__ import annotations

from functools import lru_cache

from .envelope import (
    EnvElement,
    StateElement,
    _acc,
    env_eq,
    env_mul,
    mu_state,
    oracle_normal_order,
    state_canon,
    state_eq,
)
from .liealg import (
    CarrierMismatchError,
    GVector,
    LieAlgebra,
    SplitDecomposition,
    validate_algebra,
    validate_split,
)


class OracleMismatchError(RuntimeError):
    """The recursive calculator and the straightening oracle disagree.

    Agreement is guaranteed for validated inputs, so this signals an
    implementation bug, never a data problem."""


class ActionContext:
    """A validated (algebra, split) pair that all operations here run in."""

    __slots__ = ("algebra", "split")

    def __init__(self, algebra: LieAlgebra, split: SplitDecomposition, validate: bool = True):
        if split.algebra is not algebra:
            raise CarrierMismatchError("split belongs to a different algebra")
        if validate:
            report = validate_algebra(algebra)
            if not report.ok:
                raise ValueError(f"invalid algebra:\n{report}")
            report = validate_split(algebra, split.part1, split.part2)
            if not report.ok:
                raise ValueError(f"invalid split:\n{report}")
        self.algebra = algebra
        self.split = split

    def unit_state(self) -> StateElement:
        return StateElement.unit(self.split)

    def __repr__(self):
        return f"ActionContext({self.algebra!r}, {self.split})"


def _act_pair(ctx: ActionContext, g: GVector, w1: tuple, w2: tuple) -> dict:
    """g acting on the single state term (w1, w2); {state key: scalar} map."""
    split = ctx.split
    if not w1:
        out = {}
        for i, c in g.support():
            if split.side_of(i) == 1:
                out[((i,), w2)] = c
            else:
                out[((), (i,) + w2)] = c
        return out
    x, rest = w1[0], w1[1:]
    out: dict = {}
    gb = ctx.algebra.bracket(g, ctx.algebra.basis_vector(x))
    if not gb.is_zero():
        for key, c in _act_pair(ctx, gb, rest, w2).items():
            _acc(out, key, c)
    for (u1, u2), c in _act_pair(ctx, g, rest, w2).items():
        _acc(out, ((x,) + u1, u2), c)
    return out


def act(ctx: ActionContext, g: GVector, s: StateElement) -> StateElement:
    """Left action of g on a state representative (see module docstring).
    Linear in both arguments; the result is not canonicalized."""
    if g.algebra is not ctx.algebra:
        raise CarrierMismatchError("vector from a different algebra")
    if s.split is not ctx.split:
        raise CarrierMismatchError("state from a different split")
    out: dict = {}
    for (w1, w2), c in s.terms.items():
        for key, c2 in _act_pair(ctx, g, w1, w2).items():
            _acc(out, key, c * c2)
    return StateElement(ctx.split, out)


def act_word(ctx: ActionContext, word, s: StateElement) -> StateElement:
    """Iterated action of a word over the full basis: letters act right to
    left (innermost first); the empty word acts as the identity."""
    for letter in reversed(tuple(word)):
        s = act(ctx, ctx.algebra.basis_vector(letter), s)
    return s


@lru_cache(maxsize=None)
def _section_word(ctx: ActionContext, word: tuple) -> StateElement:
    # act_word(word, 1 (x) 1), memoized over suffixes; tensor-level result.
    if not word:
        return StateElement.unit(ctx.split)
    return act(ctx, ctx.algebra.basis_vector(word[0]), _section_word(ctx, word[1:]))


def section_s(ctx: ActionContext, u: EnvElement) -> StateElement:
    """The normal-ordering section: linear extension of
    w -> (w acting on 1 (x) 1), returned in canonical form."""
    if u.algebra is not ctx.algebra:
        raise CarrierMismatchError("element over a different algebra")
    out: dict = {}
    for w, c in u.terms.items():
        for key, c2 in _section_word(ctx, w).terms.items():
            _acc(out, key, c * c2)
    return state_canon(StateElement(ctx.split, out))


def normal_order(ctx: ActionContext, u: EnvElement, check: bool = True) -> StateElement:
    """section_s with the guaranteed-agreement cross-checks switched on.

    With ``check``, asserts the result agrees with the independent
    straightening oracle and that merging the factors back reproduces u;
    disagreement raises :class:`OracleMismatchError`."""
    result = section_s(ctx, u)
    if check:
        oracle = oracle_normal_order(u, ctx.split)
        if not state_eq(result, oracle):
            raise OracleMismatchError(
                f"section disagrees with straightening oracle on {u}: "
                f"{result} vs {oracle}"
            )
        if not env_eq(mu_state(result), u):
            raise OracleMismatchError(
                f"factor multiplication does not invert the section on {u}"
            )
    return result


def check_filtration(ctx: ActionContext, g: GVector, s: StateElement) -> bool:
    """The action raises the left-word degree by at most one."""
    return act(ctx, g, s).left_degree() <= s.left_degree() + 1


def check_right_linearity(ctx: ActionContext, g: GVector, w1, m) -> bool:
    """Acting then right-multiplying by m equals acting on (w1, m) directly."""
    lhs = act(ctx, g, StateElement.term(ctx.split, w1, m))
    rhs = act(ctx, g, StateElement.term(ctx.split, w1, ())).append_right(m)
    return state_eq(lhs, rhs)


def check_mu_compat(ctx: ActionContext, g: GVector, s: StateElement) -> bool:
    """Merging the acted state equals left-multiplying the merged state by g."""
    lhs = mu_state(act(ctx, g, s))
    rhs = env_mul(EnvElement.from_vector(g), mu_state(s))
    return env_eq(lhs, rhs)


def check_lie_action(ctx: ActionContext, g: GVector, h: GVector, s: StateElement) -> bool:
    """g.(h.s) - h.(g.s) = [g,h].s, up to canonicalization."""
    lhs = act(ctx, g, act(ctx, h, s)) - act(ctx, h, act(ctx, g, s))
    rhs = act(ctx, ctx.algebra.bracket(g, h), s)
    return state_eq(lhs, rhs)


def check_inverse(ctx: ActionContext, u: EnvElement, s: StateElement) -> tuple[bool, bool]:
    """(section after merge is the identity on states,
        merge after section is the identity on the envelope)."""
    first = state_eq(section_s(ctx, mu_state(s)), state_canon(s))
    second = env_eq(mu_state(section_s(ctx, u)), u)
    return first, second
