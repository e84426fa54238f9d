"""Genetic adaptation of preference vectors from complaint feedback.

Every individual is a point on the probability simplex. Selection is
roulette-wheel over min-shifted fitness, crossover swaps weight prefixes at
a random cut (with sum repair), and mutation shifts one weight while
redistributing the step across the others, trimming the step so no weight
leaves [0, 1]. The loop terminates on a generation cap or when the best
fitness stagnates.

All randomness flows through one sequentially-consumed generator, so a run
is bit-reproducible from (context, config, seed).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PrefLoopError
from .fitness import FitnessContext, fitness_components
from .kernels import batch_fitness
from .prefs import EPS_SUM, PreferenceVector, make_preference

STAGNATION_TOL = 1e-12


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 50
    max_generations: int = 200
    stagnation_window: int = 25
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    delta_max: float = 0.1
    crossover_repair: str = "normalize"  # or "revert"
    elitism: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise PrefLoopError("SCHEMA_VIOLATION", "population_size must be >= 2")
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise PrefLoopError("SCHEMA_VIOLATION", f"{name} must lie in [0, 1]")
        if not 0.0 < self.delta_max < 1.0:
            raise PrefLoopError("SCHEMA_VIOLATION", "delta_max must lie in (0, 1)")
        if self.crossover_repair not in ("normalize", "revert"):
            raise PrefLoopError("SCHEMA_VIOLATION", f"unknown crossover repair {self.crossover_repair!r}")
        if self.max_generations < 1 or self.stagnation_window < 1:
            raise PrefLoopError("SCHEMA_VIOLATION", "generation counts must be >= 1")


@dataclass
class Population:
    """Population as a (P, n) matrix plus parallel fitness values."""

    matrix: np.ndarray
    fitnesses: np.ndarray | None = None

    @property
    def individuals(self) -> list[PreferenceVector]:
        return [PreferenceVector(tuple(row)) for row in self.matrix]

    def __len__(self):
        return len(self.matrix)


@dataclass(frozen=True)
class AdaptationReport:
    generations: int
    best_fitness_trace: tuple[float, ...]
    winner_components: dict[str, float]
    seed: int
    backend: str = ""

    def to_dict(self) -> dict:
        return {
            "generations": self.generations,
            "best_fitness_trace": list(self.best_fitness_trace),
            "winner_components": dict(self.winner_components),
            "seed": self.seed,
            "backend": self.backend,
        }


def sample_simplex(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    """Uniform sample(s) from the probability simplex (flat Dirichlet)."""
    return rng.dirichlet(np.ones(n), size=size)


def init_population(p_prev: PreferenceVector, cfg: GAConfig, rng: np.random.Generator) -> Population:
    """Anchor the previous preference at index 0 and fill the rest uniformly."""
    matrix = np.empty((cfg.population_size, p_prev.n), dtype=np.float64)
    matrix[0] = p_prev.array
    matrix[1:] = sample_simplex(rng, p_prev.n, cfg.population_size - 1)
    return Population(matrix=matrix)


def selection_probabilities(fitnesses: np.ndarray) -> np.ndarray:
    """Roulette weights: (f - f_min) / sum(f' - f_min); uniform when degenerate."""
    shifted = fitnesses - fitnesses.min()
    total = shifted.sum()
    if total <= 0.0:
        return np.full(len(fitnesses), 1.0 / len(fitnesses))
    return shifted / total


def select(pop: Population, rng: np.random.Generator) -> Population:
    """Sample len(pop) individuals with replacement by min-shifted fitness."""
    if pop.fitnesses is None:
        raise PrefLoopError("SCHEMA_VIOLATION", "selection requires evaluated fitnesses")
    probs = selection_probabilities(pop.fitnesses)
    cut = np.cumsum(probs)
    cut[-1] = 1.0  # guard against rounding in the final bin
    idx = np.searchsorted(cut, rng.random(len(pop)), side="right")
    return Population(matrix=pop.matrix[idx].copy(), fitnesses=pop.fitnesses[idx].copy())


def _crossover_rows(a: np.ndarray, b: np.ndarray, k: int, repair: str):
    child1 = np.concatenate([b[:k], a[k:]])
    child2 = np.concatenate([a[:k], b[k:]])
    s1, s2 = child1.sum(), child2.sum()
    if abs(s1 - 1.0) > EPS_SUM or abs(s2 - 1.0) > EPS_SUM:
        if repair == "revert":
            return a.copy(), b.copy()
        child1 /= s1
        child2 /= s2
    return child1, child2


def crossover(
    p1: PreferenceVector, p2: PreferenceVector, k: int, repair: str = "normalize"
) -> tuple[PreferenceVector, PreferenceVector]:
    """One-point crossover at cut k in 1..n.

    Children swap weight prefixes; if either child's sum leaves the simplex
    tolerance the pair is repaired: ``revert`` returns the parents unchanged,
    ``normalize`` rescales each child to sum 1.
    """
    if not 1 <= k <= p1.n:
        raise PrefLoopError("SCHEMA_VIOLATION", f"crossover point {k} outside 1..{p1.n}")
    c1, c2 = _crossover_rows(p1.array, p2.array, k, repair)
    return PreferenceVector(tuple(c1)), PreferenceVector(tuple(c2))


def _trim_delta(row: np.ndarray, i: int, delta: float) -> float:
    n = len(row)
    others_after = row - delta / (n - 1)
    others_after[i] = row[i] + delta
    if others_after.min() >= 0.0 and others_after.max() <= 1.0:
        return delta
    bound = min(np.abs(row - 0.0).min(), np.abs(row - 1.0).min())
    if delta >= 0.0:
        return min(delta, bound)
    return max(delta, -bound)


def _mutate_row(row: np.ndarray, i: int, delta: float) -> np.ndarray:
    delta = _trim_delta(row, i, delta)
    out = row - delta / (len(row) - 1)
    out[i] = row[i] + delta
    return out


def mutate(p: PreferenceVector, attr_id: int, delta: float, delta_max: float = 0.1) -> PreferenceVector:
    """Shift one weight by delta, redistributing -delta/(n-1) to the others.

    When the raw update would push any weight outside [0, 1], delta is first
    trimmed to the smallest distance from any weight to the interval bounds
    (magnitude-trimmed for negative steps), keeping the result on the simplex.
    """
    if abs(delta) > delta_max:
        raise PrefLoopError("SCHEMA_VIOLATION", f"|delta| = {abs(delta)} exceeds delta_max = {delta_max}")
    row = _mutate_row(p.array, attr_id - 1, delta)
    return PreferenceVector(tuple(row))


def _evaluate(pop: Population, ctx: FitnessContext) -> None:
    pop.fitnesses = batch_fitness(pop.matrix, ctx)


def adapt_preferences(ctx: FitnessContext, cfg: GAConfig) -> tuple[PreferenceVector, AdaptationReport]:
    """Run the generational loop and return the best-ever individual.

    Per generation: roulette selection, pairwise crossover with probability
    crossover_rate, per-individual mutation with probability mutation_rate
    (uniform mutation point, step uniform in (0, delta_max]). With elitism
    the incumbent best is reinserted over the current worst, which makes the
    best-fitness trace non-decreasing. Stops at max_generations or when the
    best fitness has not improved by more than 1e-12 for stagnation_window
    generations.
    """
    from .kernels import backend_name

    rng = np.random.default_rng(cfg.seed)
    n = ctx.p_prev.n
    pop = init_population(ctx.p_prev, cfg, rng)
    _evaluate(pop, ctx)

    best_idx = int(np.argmax(pop.fitnesses))
    best_row = pop.matrix[best_idx].copy()
    best_fit = float(pop.fitnesses[best_idx])
    trace = [best_fit]

    generations = 0
    for _ in range(cfg.max_generations):
        generations += 1
        pop = select(pop, rng)

        for i in range(0, len(pop) - 1, 2):
            if rng.random() < cfg.crossover_rate:
                k = int(rng.integers(1, n + 1))
                pop.matrix[i], pop.matrix[i + 1] = _crossover_rows(
                    pop.matrix[i], pop.matrix[i + 1], k, cfg.crossover_repair
                )

        for i in range(len(pop)):
            if rng.random() < cfg.mutation_rate:
                point = int(rng.integers(0, n))
                delta = cfg.delta_max * (1.0 - rng.random())  # uniform in (0, delta_max]
                pop.matrix[i] = _mutate_row(pop.matrix[i], point, delta)

        _evaluate(pop, ctx)

        gen_best = int(np.argmax(pop.fitnesses))
        if float(pop.fitnesses[gen_best]) > best_fit:
            best_fit = float(pop.fitnesses[gen_best])
            best_row = pop.matrix[gen_best].copy()
        elif cfg.elitism:
            worst = int(np.argmin(pop.fitnesses))
            pop.matrix[worst] = best_row
            pop.fitnesses[worst] = best_fit

        trace.append(float(pop.fitnesses.max()))
        if len(trace) > cfg.stagnation_window:
            if trace[-1] - trace[-1 - cfg.stagnation_window] <= STAGNATION_TOL:
                break

    winner = make_preference(best_row)
    report = AdaptationReport(
        generations=generations,
        best_fitness_trace=tuple(trace),
        winner_components=fitness_components(winner, ctx),
        seed=cfg.seed,
        backend=backend_name(),
    )
    return winner, report
