"""Randomized/exhaustive property suite over a registry of example algebras.

Generation is deterministic: every drawn object comes from a child seed
derived (via blake2b, never Python's salted hash) from the suite seed, the
entry name, the property name and the case index, so identical configs give
byte-identical reports, regardless of process or platform.

On a failing case the driver greedily shrinks the counterexample -- dropping
terms, shortening words, zeroing coordinates -- for as long as the failure
persists, and reports the minimal instance with full inputs.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .envelope import EnvElement, StateElement, oracle_normal_order, state_eq
from .liealg import (
    GVector,
    LieAlgebra,
    SplitDecomposition,
    validate_algebra,
    validate_split,
)
from .normalform import (
    ActionContext,
    check_filtration,
    check_inverse,
    check_lie_action,
    check_mu_compat,
    check_right_linearity,
    section_s,
)
from .ring import Ring, make_ring

PROPERTY_NAMES = (
    "validate",
    "oracle",
    "inverse",
    "lie_action",
    "filtration",
    "right_linearity",
    "mu_compat",
    "well_defined",
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    cases: int = 50
    max_degree: int = 4
    rings: tuple[str, ...] | None = None
    properties: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError("cases must be >= 1")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        unknown = set(self.properties or ()) - set(PROPERTY_NAMES)
        if unknown:
            raise ValueError(f"unknown properties: {', '.join(sorted(unknown))}")


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    algebra: LieAlgebra
    split: SplitDecomposition

    @property
    def ring(self) -> Ring:
        return self.algebra.ring


class ExampleRegistry:
    """Named (algebra, split) entries, iterated in insertion order."""

    def __init__(self, entries=()):
        self._entries: dict[str, RegistryEntry] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: RegistryEntry) -> None:
        if entry.name in self._entries:
            raise ValueError(f"duplicate registry entry {entry.name!r}")
        self._entries[entry.name] = entry

    def __getitem__(self, name: str) -> RegistryEntry:
        return self._entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self) -> tuple[RegistryEntry, ...]:
        return tuple(self._entries.values())

    def names(self) -> tuple[str, ...]:
        return tuple(self._entries)


# ---------------------------------------------------------------------------
# example algebras
# ---------------------------------------------------------------------------

def sl2_algebra(ring: Ring) -> LieAlgebra:
    """sl(2) on basis e, f, h with [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return LieAlgebra.from_brackets(
        ring,
        ("e", "f", "h"),
        {
            ("e", "f"): {"h": 1},
            ("h", "e"): {"e": 2},
            ("h", "f"): {"f": -2},
        },
    )


def heisenberg_algebra(ring: Ring) -> LieAlgebra:
    """Heisenberg algebra on x, y, c with [x,y]=c and c central."""
    return LieAlgebra.from_brackets(ring, ("x", "y", "c"), {("x", "y"): {"c": 1}})


def abelian_algebra(ring: Ring, names=("a", "b", "c")) -> LieAlgebra:
    return LieAlgebra.from_brackets(ring, names, {})


def _matrix_unit(n: int, i: int, j: int):
    return [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def _commutator(a, b):
    return _mat_sub(_mat_mul(a, b), _mat_mul(b, a))


def _sl_basis(n: int):
    """Basis of sl(n): strict uppers row-major, strict lowers row-major,
    then the diagonal differences H_k = E_kk - E_(k+1)(k+1)."""
    names, mats = [], []
    for i in range(n):
        for j in range(i + 1, n):
            names.append(f"E{i + 1}{j + 1}")
            mats.append(_matrix_unit(n, i, j))
    for i in range(n):
        for j in range(i):
            names.append(f"E{i + 1}{j + 1}")
            mats.append(_matrix_unit(n, i, j))
    for k in range(n - 1):
        names.append(f"H{k + 1}")
        mats.append(_mat_sub(_matrix_unit(n, k, k), _matrix_unit(n, k + 1, k + 1)))
    return names, mats


def _sl_coords(n: int, m) -> list[int]:
    """Coordinates of a traceless matrix over the _sl_basis of sl(n)."""
    coords = []
    for i in range(n):
        for j in range(i + 1, n):
            coords.append(m[i][j])
    for i in range(n):
        for j in range(i):
            coords.append(m[i][j])
    running = 0
    for k in range(n - 1):
        running += m[k][k]
        coords.append(running)
    assert sum(m[k][k] for k in range(n)) == 0
    return coords


def sl_algebra(n: int, ring: Ring) -> LieAlgebra:
    """sl(n) with structure constants computed from matrix commutators."""
    names, mats = _sl_basis(n)
    dim = len(names)
    table = [
        [_sl_coords(n, _commutator(mats[i], mats[j])) for j in range(dim)]
        for i in range(dim)
    ]
    return LieAlgebra(ring, names, table)


def sl_triangular_split(algebra: LieAlgebra, n: int) -> SplitDecomposition:
    """The two-block grouping (strict uppers + diagonal) | strict lowers."""
    uppers = n * (n - 1) // 2
    part1 = tuple(range(uppers)) + tuple(range(2 * uppers, 2 * uppers + n - 1))
    part2 = tuple(range(uppers, 2 * uppers))
    return SplitDecomposition(algebra, part1, part2)


def builtin_examples() -> ExampleRegistry:
    """The stock registry: sl2 over Z and Q (two different splits), sl3 over
    Z and its reductions mod 2, 3, 4, the Heisenberg algebra, and a
    3-dimensional abelian algebra with a non-contiguous partition."""
    reg = ExampleRegistry()
    ring_z = make_ring("Z")
    ring_q = make_ring("Q")

    sl2_z = sl2_algebra(ring_z)
    reg.add(RegistryEntry("sl2_Z", sl2_z, SplitDecomposition(sl2_z, (1,), (0, 2))))
    sl2_q = sl2_algebra(ring_q)
    reg.add(RegistryEntry("sl2_Q", sl2_q, SplitDecomposition(sl2_q, (0, 2), (1,))))

    sl3_z = sl_algebra(3, ring_z)
    reg.add(RegistryEntry("sl3_Z", sl3_z, sl_triangular_split(sl3_z, 3)))
    for q in (2, 3, 4):
        alg_q = sl3_z.change_ring(make_ring(f"Zmod {q}"))
        reg.add(RegistryEntry(f"sl3_Z{q}", alg_q, sl_triangular_split(alg_q, 3)))

    heis = heisenberg_algebra(ring_z)
    reg.add(RegistryEntry("heisenberg_Z", heis, SplitDecomposition(heis, (0,), (1, 2))))

    ab = abelian_algebra(ring_z)
    reg.add(RegistryEntry("abelian_Z", ab, SplitDecomposition(ab, (0, 2), (1,))))
    return reg


# ---------------------------------------------------------------------------
# deterministic generation
# ---------------------------------------------------------------------------

def _child_seed(seed: int, *parts) -> int:
    text = "|".join([str(seed), *map(str, parts)])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _draw_coeff(rng: random.Random, ring: Ring):
    # small coefficients on purpose: |n| <= 9, denominators <= 9
    if ring.kind == "Q" and rng.random() < 0.5:
        return ring.scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    return ring.scalar(rng.randint(-9, 9))


def _draw_word(rng: random.Random, letters, max_degree: int) -> tuple:
    letters = tuple(letters)
    if not letters:
        return ()
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_degree)))


def _draw_vector(rng: random.Random, algebra: LieAlgebra) -> GVector:
    return GVector(algebra, tuple(_draw_coeff(rng, algebra.ring) for _ in range(algebra.dim)))


def _draw_env(rng: random.Random, algebra: LieAlgebra, max_degree: int) -> EnvElement:
    letters = tuple(range(algebra.dim))
    out = EnvElement.zero(algebra)
    for _ in range(rng.randint(1, 3)):
        out = out + EnvElement(
            algebra, {_draw_word(rng, letters, max_degree): _draw_coeff(rng, algebra.ring)}
        )
    return out


def _draw_state(rng: random.Random, split: SplitDecomposition, max_degree: int) -> StateElement:
    out = StateElement.zero(split)
    for _ in range(rng.randint(1, 3)):
        w1 = _draw_word(rng, split.part1, max_degree)
        w2 = _draw_word(rng, split.part2, max_degree)
        out = out + StateElement(
            split, {(w1, w2): _draw_coeff(rng, split.algebra.ring)}
        )
    return out


def generate(kind: str, cfg: SuiteConfig, entry: RegistryEntry, index: int = 0):
    """Draw number ``index`` of the given kind ("word", "vector", "state",
    "element") for an entry; identical (seed, kind, index) gives an
    identical object."""
    rng = random.Random(_child_seed(cfg.seed, entry.name, kind, index))
    if kind == "word":
        return _draw_word(rng, range(entry.algebra.dim), cfg.max_degree)
    if kind == "vector":
        return _draw_vector(rng, entry.algebra)
    if kind == "state":
        return _draw_state(rng, entry.split, cfg.max_degree)
    if kind == "element":
        return _draw_env(rng, entry.algebra, cfg.max_degree)
    raise ValueError(f"unknown generation kind {kind!r}")


# ---------------------------------------------------------------------------
# shrinking
# ---------------------------------------------------------------------------

def _word_drops(w: tuple):
    for pos in range(len(w)):
        yield w[:pos] + w[pos + 1:]


def _moves(value):
    """Candidate strictly-smaller replacements for one instance part."""
    if isinstance(value, EnvElement):
        keys = sorted(value.terms, key=lambda w: (len(w), w))
        for w in keys:
            rest = {k: c for k, c in value.terms.items() if k != w}
            yield EnvElement(value.algebra, rest)
        for w in keys:
            for shorter in _word_drops(w):
                rest = {k: c for k, c in value.terms.items() if k != w}
                _merge = dict(rest)
                c = value.terms[w]
                prev = _merge.get(shorter)
                _merge[shorter] = c if prev is None else prev + c
                yield EnvElement(value.algebra, _merge)
    elif isinstance(value, StateElement):
        keys = sorted(value.terms, key=lambda k: (len(k[0]), k[0], len(k[1]), k[1]))
        for key in keys:
            rest = {k: c for k, c in value.terms.items() if k != key}
            yield StateElement(value.split, rest)
        for key in keys:
            w1, w2 = key
            c = value.terms[key]
            for shorter in _word_drops(w1):
                rest = {k: v for k, v in value.terms.items() if k != key}
                prev = rest.get((shorter, w2))
                rest[(shorter, w2)] = c if prev is None else prev + c
                yield StateElement(value.split, rest)
            for shorter in _word_drops(w2):
                rest = {k: v for k, v in value.terms.items() if k != key}
                prev = rest.get((w1, shorter))
                rest[(w1, shorter)] = c if prev is None else prev + c
                yield StateElement(value.split, rest)
    elif isinstance(value, GVector):
        zero = value.algebra.ring.zero
        for i, _c in value.support():
            coords = list(value.coords)
            coords[i] = zero
            yield GVector(value.algebra, tuple(coords))
    elif isinstance(value, tuple):
        yield from _word_drops(value)


def shrink(instance: dict, still_fails) -> dict:
    """Greedy shrink: apply any single move that keeps the failure, repeat
    to a fixpoint (bounded)."""
    for _round in range(200):
        changed = False
        for key in sorted(instance):
            for candidate in _moves(instance[key]):
                trial = dict(instance)
                trial[key] = candidate
                if still_fails(trial):
                    instance = trial
                    changed = True
                    break
        if not changed:
            break
    return instance


_LETTER_KEYS = ("g", "h", "x", "y")  # instance keys holding basis indices


def _render_value(entry: RegistryEntry, key: str, value) -> str:
    if isinstance(value, tuple):
        names = entry.algebra.basis
        return " ".join(names[l] for l in value) if value else "1"
    if isinstance(value, int) and key in _LETTER_KEYS:
        return entry.algebra.basis[value]
    return str(value)


def _render_instance(entry: RegistryEntry, instance: dict) -> tuple[str, ...]:
    return tuple(
        f"{k} = {_render_value(entry, k, v)}" for k, v in sorted(instance.items())
    )


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyFailure:
    case: int
    description: tuple[str, ...]
    instance: dict = field(compare=False, default_factory=dict)


@dataclass(frozen=True)
class PropertyResult:
    entry: str
    name: str
    passed: int
    failed: int
    skipped: bool = False
    failures: tuple[PropertyFailure, ...] = ()


def _case_rng(cfg: SuiteConfig, entry: RegistryEntry, prop: str, index: int) -> random.Random:
    return random.Random(_child_seed(cfg.seed, entry.name, prop, index))


def _prop_validate(cfg: SuiteConfig, entry: RegistryEntry, ctx) -> PropertyResult:
    rep = validate_algebra(entry.algebra)
    rep2 = validate_split(entry.algebra, entry.split.part1, entry.split.part2)
    lines = tuple(rep.lines() + rep2.lines())
    if lines:
        return PropertyResult(
            entry.name, "validate", 0, 1,
            failures=(PropertyFailure(0, lines),),
        )
    return PropertyResult(entry.name, "validate", 1, 0)


def _run_random(name, cfg, entry, draw, passes) -> PropertyResult:
    # a predicate that raises counts as a failing case (keeps the suite
    # total when validation was deselected on a broken entry)
    def fails(inst):
        try:
            return not passes(inst)
        except Exception:
            return True

    passed = failed = 0
    failures = []
    for k in range(cfg.cases):
        rng = _case_rng(cfg, entry, name, k)
        inst = draw(rng)
        if not fails(inst):
            passed += 1
            continue
        failed += 1
        small = shrink(inst, fails)
        desc = list(_render_instance(entry, small))
        try:
            passes(small)
        except Exception as exc:
            desc.append(f"raised {type(exc).__name__}: {exc}")
        failures.append(PropertyFailure(k, tuple(desc), small))
    return PropertyResult(entry.name, name, passed, failed, failures=tuple(failures))


def _prop_oracle(cfg, entry, ctx) -> PropertyResult:
    def draw(rng):
        return {"u": _draw_env(rng, entry.algebra, cfg.max_degree)}

    def passes(inst):
        u = inst["u"]
        return state_eq(section_s(ctx, u), oracle_normal_order(u, ctx.split))

    return _run_random("oracle", cfg, entry, draw, passes)


def _prop_inverse(cfg, entry, ctx) -> PropertyResult:
    def draw(rng):
        return {
            "u": _draw_env(rng, entry.algebra, cfg.max_degree),
            "s": _draw_state(rng, entry.split, cfg.max_degree),
        }

    def passes(inst):
        first, second = check_inverse(ctx, inst["u"], inst["s"])
        return first and second

    return _run_random("inverse", cfg, entry, draw, passes)


def _prop_lie_action(cfg, entry, ctx) -> PropertyResult:
    # exhaustive over ordered basis pairs, random over states
    alg = entry.algebra
    pairs = [(i, j) for i in range(alg.dim) for j in range(alg.dim)]
    passed = failed = 0
    failures = []
    for k in range(cfg.cases):
        rng = _case_rng(cfg, entry, "lie_action", k)
        s = _draw_state(rng, entry.split, cfg.max_degree)
        try:
            bad = next(
                (
                    (i, j)
                    for i, j in pairs
                    if not check_lie_action(ctx, alg.basis_vector(i), alg.basis_vector(j), s)
                ),
                None,
            )
        except Exception as exc:
            failed += 1
            desc = (*_render_instance(entry, {"s": s}),
                    f"raised {type(exc).__name__}: {exc}")
            failures.append(PropertyFailure(k, desc, {"s": s}))
            continue
        if bad is None:
            passed += 1
            continue
        failed += 1
        gi, gj = bad

        def still_fails(inst):
            try:
                return not check_lie_action(
                    ctx, alg.basis_vector(gi), alg.basis_vector(gj), inst["s"]
                )
            except Exception:
                return True

        small = shrink({"s": s, "g": gi, "h": gj}, still_fails)
        failures.append(
            PropertyFailure(k, _render_instance(entry, small), small)
        )
    return PropertyResult(entry.name, "lie_action", passed, failed, failures=tuple(failures))


def _prop_filtration(cfg, entry, ctx) -> PropertyResult:
    def draw(rng):
        return {
            "g": _draw_vector(rng, entry.algebra),
            "s": _draw_state(rng, entry.split, cfg.max_degree),
        }

    def passes(inst):
        return check_filtration(ctx, inst["g"], inst["s"])

    return _run_random("filtration", cfg, entry, draw, passes)


def _prop_right_linearity(cfg, entry, ctx) -> PropertyResult:
    def draw(rng):
        return {
            "g": _draw_vector(rng, entry.algebra),
            "w1": _draw_word(rng, entry.split.part1, cfg.max_degree),
            "m": _draw_word(rng, entry.split.part2, cfg.max_degree),
        }

    def passes(inst):
        return check_right_linearity(ctx, inst["g"], inst["w1"], inst["m"])

    return _run_random("right_linearity", cfg, entry, draw, passes)


def _prop_mu_compat(cfg, entry, ctx) -> PropertyResult:
    def draw(rng):
        return {
            "g": _draw_vector(rng, entry.algebra),
            "s": _draw_state(rng, entry.split, cfg.max_degree),
        }

    def passes(inst):
        return check_mu_compat(ctx, inst["g"], inst["s"])

    return _run_random("mu_compat", cfg, entry, draw, passes)


def relator_variant(algebra: LieAlgebra, u: EnvElement, host: tuple, pos: int,
                    x: int, y: int, coeff) -> EnvElement:
    """u plus coeff * (the word ``host`` with the two-sided relator
    x y - y x - [x, y] spliced in at ``pos``); equal to u in the envelope."""
    pos = min(pos, len(host))
    head, tail = host[:pos], host[pos:]
    # built by subtraction so the two words cancel when x == y
    extra = EnvElement.word(algebra, head + (x, y) + tail, coeff) - EnvElement.word(
        algebra, head + (y, x) + tail, coeff
    )
    for k, gamma in enumerate(algebra.table[x][y]):
        if gamma:
            extra = extra - EnvElement(algebra, {head + (k,) + tail: coeff * gamma})
    return u + extra


def _prop_well_defined(cfg, entry, ctx) -> PropertyResult:
    alg = entry.algebra
    part1 = entry.split.part1
    if not part1:
        # no part-1 letters to splice relators into; vacuously true
        return PropertyResult(entry.name, "well_defined", cfg.cases, 0)

    def draw(rng):
        host = _draw_word(rng, range(alg.dim), cfg.max_degree)
        return {
            "u": _draw_env(rng, alg, cfg.max_degree),
            "host": host,
            "pos": rng.randint(0, len(host)),
            "x": rng.choice(part1),
            "y": rng.choice(part1),
            "coeff": _draw_coeff(rng, alg.ring),
        }

    def passes(inst):
        u = inst["u"]
        u2 = relator_variant(alg, u, inst["host"], inst["pos"], inst["x"],
                             inst["y"], inst["coeff"])
        return state_eq(section_s(ctx, u), section_s(ctx, u2))

    return _run_random("well_defined", cfg, entry, draw, passes)


_PROPERTY_RUNNERS = {
    "validate": _prop_validate,
    "oracle": _prop_oracle,
    "inverse": _prop_inverse,
    "lie_action": _prop_lie_action,
    "filtration": _prop_filtration,
    "right_linearity": _prop_right_linearity,
    "mu_compat": _prop_mu_compat,
    "well_defined": _prop_well_defined,
}


def run_property(name: str, cfg: SuiteConfig, entry: RegistryEntry,
                 ctx: ActionContext | None = None) -> PropertyResult:
    """Run a single named property for one entry."""
    if name not in _PROPERTY_RUNNERS:
        raise ValueError(f"unknown property {name!r}")
    if name != "validate" and ctx is None:
        ctx = ActionContext(entry.algebra, entry.split, validate=False)
    return _PROPERTY_RUNNERS[name](cfg, entry, ctx)


# ---------------------------------------------------------------------------
# suite driver and report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteReport:
    config: SuiteConfig
    results: tuple  # ((entry name, (PropertyResult, ...)), ...)

    @property
    def all_pass(self) -> bool:
        return all(r.failed == 0 for _n, rs in self.results for r in rs)

    @property
    def validation_failed(self) -> bool:
        return any(
            r.name == "validate" and r.failed for _n, rs in self.results for r in rs
        )

    def render(self) -> str:
        lines = []
        total_pass = total_fail = 0
        for entry_name, props in self.results:
            lines.append(f"== {entry_name} ==")
            entry_pass = entry_fail = 0
            for r in props:
                if r.skipped:
                    lines.append(f"  {r.name:<16} skipped (validation failed)")
                    continue
                lines.append(f"  {r.name:<16} pass={r.passed} fail={r.failed}")
                for f in r.failures:
                    tag = " (shrunk)" if f.instance else ""
                    lines.append(f"  FAIL {r.name} case={f.case}{tag}")
                    for d in f.description:
                        lines.append(f"    {d}")
                entry_pass += r.passed
                entry_fail += r.failed
            lines.append(
                f"SUITE {entry_name} pass={entry_pass} fail={entry_fail} "
                f"seed={self.config.seed}"
            )
            total_pass += entry_pass
            total_fail += entry_fail
        lines.append(
            f"TOTAL entries={len(self.results)} pass={total_pass} "
            f"fail={total_fail} seed={self.config.seed}"
        )
        return "\n".join(lines)


def run_suite(cfg: SuiteConfig, registry: ExampleRegistry) -> SuiteReport:
    """Run every selected property for every (ring-filtered) entry.

    A failed validation gates the entry: dependent properties are reported
    as skipped.  Other failures never abort the run."""
    results = []
    props = cfg.properties or PROPERTY_NAMES
    for entry in registry.entries():
        if cfg.rings is not None and entry.ring.descriptor() not in cfg.rings:
            continue
        per: list[PropertyResult] = []
        gated = False
        ctx = None
        for name in props:
            if name == "validate":
                r = _prop_validate(cfg, entry, None)
                per.append(r)
                if r.failed:
                    gated = True
                continue
            if gated:
                per.append(PropertyResult(entry.name, name, 0, 0, skipped=True))
                continue
            if ctx is None:
                ctx = ActionContext(entry.algebra, entry.split, validate=False)
            per.append(_PROPERTY_RUNNERS[name](cfg, entry, ctx))
        results.append((entry.name, tuple(per)))
    return SuiteReport(cfg, tuple(results))
