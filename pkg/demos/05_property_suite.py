"""
The property suite
==================

Every identity the calculator promises is checked over a registry of
example algebras with seeded, reproducible randomness: identical configs
give byte-identical reports.  Failures are shrunk greedily to a minimal
counterexample before being reported.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from envnorm import (
    ExampleRegistry,
    LieAlgebra,
    RegistryEntry,
    SplitDecomposition,
    SuiteConfig,
    builtin_examples,
    make_ring,
    run_suite,
)

# a quick pass over the builtin registry
cfg = SuiteConfig(seed=42, cases=10, max_degree=3)
report = run_suite(cfg, builtin_examples())
print(report.render())
print("\nall pass:", report.all_pass)

# now break sl2 on purpose: [e,f] = e violates Jacobi.  Validation gates the
# dependent properties...
Z = make_ring("Z")
bad = LieAlgebra.from_brackets(
    Z, ("e", "f", "h"),
    {("e", "f"): {"e": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
)
broken = ExampleRegistry(
    [RegistryEntry("sl2_broken", bad, SplitDecomposition(bad, (1,), (0, 2)))]
)
print("\n--- corrupted table, full suite (validation gates the rest) ---")
print(run_suite(cfg, broken).render())

# ... but running a property directly shows the shrinker at work: the
# counterexample below is minimal, typically a single one-letter state.
print("\n--- corrupted table, Lie-action property only ---")
cfg_direct = SuiteConfig(seed=42, cases=2, max_degree=3, properties=("lie_action",))
print(run_suite(cfg_direct, broken).render())
