"""Time the compiled and pure-Python tableau kernels on the same workloads.

    python benchmarks/bench_kernel.py --repeat 5

``random`` is a mix of random ALC concepts and small TBoxes, timed end to
end through ``check_satisfiable``.  ``pigeonhole`` encodes n+1 pigeons in n
holes as one unsatisfiable concept, which forces exhaustive branching; only
the kernel search is timed there.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from defeasible_alc.concepts import And, Atom, Exists, Forall, Not, Or, canonical, conjoin
from defeasible_alc.errors import ResourceLimitExceeded
from defeasible_alc.kb import StrictInclusion
from defeasible_alc.tableau import KERNELS, ConceptTable, check_satisfiable


def random_concept(rng: random.Random, depth: int, atoms: int, roles: int):
    if depth == 0 or rng.random() < 0.2:
        a = Atom(f"A{rng.randrange(atoms)}")
        return Not(a) if rng.random() < 0.5 else a
    kind = rng.randrange(4)
    if kind == 0:
        return And(random_concept(rng, depth - 1, atoms, roles), random_concept(rng, depth - 1, atoms, roles))
    if kind == 1:
        return Or(random_concept(rng, depth - 1, atoms, roles), random_concept(rng, depth - 1, atoms, roles))
    role = f"r{rng.randrange(roles)}"
    child = random_concept(rng, depth - 1, atoms, roles)
    return Exists(role, child) if kind == 2 else Forall(role, child)


def random_workload(seed: int, size: int, depth: int):
    rng = random.Random(seed)
    cases = []
    for _ in range(size):
        strict = [
            StrictInclusion(random_concept(rng, 1, 8, 2), random_concept(rng, 1, 8, 2))
            for _ in range(rng.randint(0, 3))
        ]
        cases.append((random_concept(rng, depth, 8, 2), strict))
    return cases


def pigeonhole(holes: int):
    """Every pigeon sits in some hole and no hole holds two pigeons."""
    p = [[Atom(f"P{i}_{j}") for j in range(holes)] for i in range(holes + 1)]
    somewhere = [
        p[i][0] if holes == 1 else _disjoin(p[i]) for i in range(holes + 1)
    ]
    exclusive = [
        Or(Not(p[i][j]), Not(p[k][j]))
        for j in range(holes)
        for i in range(holes + 1)
        for k in range(i + 1, holes + 1)
    ]
    return conjoin(somewhere + exclusive)


def _disjoin(items):
    out = items[-1]
    for c in reversed(items[:-1]):
        out = Or(c, out)
    return out


def run_random(backend: str, cases, max_nodes: int) -> tuple[float, str]:
    start = time.perf_counter()
    steps = sat = exhausted = 0
    for c, strict in cases:
        try:
            result = check_satisfiable(c, strict, max_nodes, backend)
        except ResourceLimitExceeded:
            exhausted += 1
            continue
        steps += result.steps
        sat += result.satisfiable
    info = f"{steps} steps, {sat}/{len(cases)} satisfiable, {exhausted} over budget"
    return time.perf_counter() - start, info


def run_kernel(backend: str, concept, max_nodes: int) -> tuple[float, str]:
    table = ConceptTable()
    root = table.intern(canonical(concept))
    kernel = table.kernel((), max_nodes, backend)
    start = time.perf_counter()
    sat = kernel.satisfiable([root])
    elapsed = time.perf_counter() - start
    return elapsed, f"{kernel.steps} steps, satisfiable={bool(sat)}"


def report(name: str, runs_by_backend: dict[str, list[tuple[float, str]]]) -> None:
    print(name)
    best = {}
    for backend, runs in runs_by_backend.items():
        times = [t for t, _ in runs]
        best[backend] = min(times)
        print(
            f"  {backend:>7}: best {min(times) * 1000:9.1f} ms, "
            f"median {statistics.median(times) * 1000:9.1f} ms, {runs[0][1]}"
        )
    if "cython" in best:
        print(f"  speedup: {best['python'] / best['cython']:.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--size", type=int, default=300, help="number of random concepts")
    parser.add_argument("--depth", type=int, default=6, help="depth of random concepts")
    parser.add_argument("--holes", type=int, default=4, help="pigeonhole instance size")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-nodes", type=int, default=10_000_000)
    args = parser.parse_args()

    backends = sorted(KERNELS)
    if "cython" not in KERNELS:
        print("compiled kernel not built; timing the Python fallback only")

    cases = random_workload(args.seed, args.size, args.depth)
    report(
        f"random (end to end, {args.size} concepts, depth {args.depth})",
        {b: [run_random(b, cases, args.max_nodes) for _ in range(args.repeat)] for b in backends},
    )
    concept = pigeonhole(args.holes)
    report(
        f"pigeonhole (kernel only, {args.holes + 1} pigeons)",
        {b: [run_kernel(b, concept, args.max_nodes) for _ in range(args.repeat)] for b in backends},
    )


if __name__ == "__main__":
    main()
