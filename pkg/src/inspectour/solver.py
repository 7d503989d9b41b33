"""Enhanced discrete particle swarm solver for closed tours.

The solver works against any symmetric cost matrix, so it is decoupled from
the inspection pipeline. Augmentations over the plain discrete PSO:
deterministic seeding from a supplied tour, periodic random mutation with
elitism, and best-improvement edge exchange (2-opt) when the global best
stalls. Every particle owns a dedicated RNG stream spawned from the master
seed, so serial and parallel execution produce identical results.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .graph import canonical_tour


@dataclass
class SolveReport:
    best_tour: tuple[int, ...]
    best_fitness: float
    convergence: list[float]
    generations_run: int
    wall_time: float
    augmentation_flags: dict[str, bool] = field(default_factory=dict)


class _Particle:
    __slots__ = ("body", "fitness", "best_body", "best_fitness",
                 "velocity", "vmap", "vinv", "rng")

    def __init__(self, body, fitness, rng, n_nodes):
        self.body = body  # open tour, list of ints
        self.fitness = fitness
        self.best_body = list(body)
        self.best_fitness = fitness
        self.velocity = []  # transposition list
        self.vmap = list(range(n_nodes))  # composed velocity permutation
        self.vinv = list(range(n_nodes))
        self.rng = rng


def _tour_cost(body, cost_rows) -> float:
    total = 0.0
    prev = body[-1]
    for node in body:
        total += cost_rows[prev][node]
        prev = node
    return total


def _subtract_open(target, cur):
    """Transpositions turning cur into target, left-to-right repair."""
    cur = list(cur)
    pos = {node: i for i, node in enumerate(cur)}
    out = []
    for i, want in enumerate(target):
        have = cur[i]
        if have != want:
            j = pos[want]
            cur[i], cur[j] = want, have
            pos[have], pos[want] = j, i
            out.append((have, want))
    return out


def _apply_open(body, transpositions):
    body = list(body)
    pos = {node: i for i, node in enumerate(body)}
    for a, b in transpositions:
        ia, ib = pos[a], pos[b]
        body[ia], body[ib] = b, a
        pos[a], pos[b] = ib, ia
    return body


def _prefix_len(c: float, length: int) -> int:
    if c <= 0.0:
        return 0
    return min(length, int(c * length + 0.5))


def _best_exchange(body, cost: np.ndarray):
    """Best strictly improving 2-opt move; returns (new_body, delta) or
    (body, 0.0) when the tour is already 2-opt optimal."""
    n = len(body)
    if n < 4:
        return body, 0.0
    arr = np.asarray(body)
    succ = np.roll(arr, -1)
    d = cost[arr, succ]
    delta = (cost[np.ix_(arr, arr)] + cost[np.ix_(succ, succ)]
             - d[:, None] - d[None, :])
    delta[np.tril_indices(n)] = np.inf
    k = int(np.argmin(delta))
    i, j = divmod(k, n)
    if delta[i, j] < -1e-12:
        new = list(body)
        new[i + 1:j + 1] = reversed(new[i + 1:j + 1])
        return new, float(delta[i, j])
    return body, 0.0


class DiscreteSwarmSolver(BaseEstimator):
    """Discrete PSO tour optimizer over a cost matrix.

    Parameters follow the usual estimator convention: stored verbatim at
    construction, validated in :meth:`fit`. ``fit(X)`` expects a square
    symmetric cost matrix and exposes ``best_tour_``, ``best_fitness_``,
    ``convergence_`` and ``report_`` afterwards.
    """

    def __init__(self, n_particles=100, inertia=1.0, cognitive=0.4,
                 social=0.4, max_generations=200, stall_generations=30,
                 mutation_period=3, seed_fraction=0.1, seed_tour=None,
                 use_mutation=True, use_edge_exchange=True, parallel=False,
                 random_state=None):
        self.n_particles = n_particles
        self.inertia = inertia
        self.cognitive = cognitive
        self.social = social
        self.max_generations = max_generations
        self.stall_generations = stall_generations
        self.mutation_period = mutation_period
        self.seed_fraction = seed_fraction
        self.seed_tour = seed_tour
        self.use_mutation = use_mutation
        self.use_edge_exchange = use_edge_exchange
        self.parallel = parallel
        self.random_state = random_state

    # -- parameter / input validation -------------------------------------

    def _check_params(self):
        if self.n_particles < 3:
            raise ValueError("n_particles must be >= 3")
        for name in ("inertia", "cognitive", "social"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")
        if self.stall_generations < 1:
            raise ValueError("stall_generations must be >= 1")
        if self.mutation_period < 1:
            raise ValueError("mutation_period must be >= 1")
        if not 0.0 <= self.seed_fraction <= 1.0:
            raise ValueError("seed_fraction must be in [0, 1]")

    @staticmethod
    def _check_cost(X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise ValueError(f"cost matrix must be square, got {X.shape}")
        if not np.isfinite(X).all():
            raise ValueError("cost matrix must be finite")
        return X

    # -- swarm phases ------------------------------------------------------

    def _init_swarm(self, n, cost_rows, init_rng, particle_seqs):
        n_seed = 0
        seed_body = None
        if self.seed_tour is not None and self.seed_fraction > 0:
            seed_body = list(self.seed_tour[:-1])
            if sorted(seed_body) != list(range(n)):
                raise ValueError("seed_tour is not a tour over the matrix")
            n_seed = min(self.n_particles,
                         int(self.seed_fraction * self.n_particles + 0.5))
        particles = []
        for i in range(self.n_particles):
            if i < n_seed:
                body = list(seed_body)
                if i > 0 and n > 1:
                    a, b = init_rng.choice(n, size=2, replace=False)
                    body[a], body[b] = body[b], body[a]
            else:
                body = list(init_rng.permutation(n))
            body = [int(x) for x in body]
            rng = np.random.Generator(np.random.PCG64(particle_seqs[i]))
            particles.append(_Particle(body, _tour_cost(body, cost_rows),
                                       rng, n))
        return particles

    def _update_particle(self, p: _Particle, gbest_body, cost_rows):
        r1, r2 = p.rng.random(2)
        t1 = _subtract_open(p.best_body, p.body)
        t1 = t1[:_prefix_len(self.cognitive * r1, len(t1))]
        t2 = _subtract_open(gbest_body, p.body)
        t2 = t2[:_prefix_len(self.social * r2, len(t2))]
        w = self.inertia
        if w == 1.0:
            # Full inertia: the old velocity is kept verbatim, so apply it
            # through the incrementally composed permutation instead of
            # replaying the ever-growing transposition list.
            vmap, vinv = p.vmap, p.vinv
            for a, b in t1:
                ia, ib = vinv[a], vinv[b]
                vmap[ia], vmap[ib] = b, a
                vinv[a], vinv[b] = ib, ia
            for a, b in t2:
                ia, ib = vinv[a], vinv[b]
                vmap[ia], vmap[ib] = b, a
                vinv[a], vinv[b] = ib, ia
            p.velocity.extend(t1)
            p.velocity.extend(t2)
            p.body = [vmap[x] for x in p.body]
        else:
            kept = p.velocity[:_prefix_len(w, len(p.velocity))]
            p.velocity = kept + t1 + t2
            p.body = _apply_open(p.body, p.velocity)
        p.fitness = _tour_cost(p.body, cost_rows)
        if p.fitness < p.best_fitness:
            p.best_fitness = p.fitness
            p.best_body = list(p.body)

    def _mutate(self, particles, mut_rng, n, cost_rows):
        order = sorted(range(len(particles)),
                       key=lambda i: (particles[i].fitness, i))
        seen = set()
        survivors, dropped = [], []
        for i in order:
            key = canonical_tour(particles[i].body + [particles[i].body[0]])
            if key in seen:
                dropped.append(i)
            else:
                seen.add(key)
                survivors.append(i)
        keep = set(survivors[:math.ceil(len(survivors) / 3)])
        # Dropped duplicates are re-seeded around the best survivors.
        for rank, i in enumerate(dropped):
            src = particles[survivors[rank % len(survivors)]]
            particles[i].body = list(src.body)
            particles[i].fitness = src.fitness

        k_hi = max(2, n // 4)
        for i in range(len(particles)):  # slot order keeps this deterministic
            if i in keep:
                continue
            p = particles[i]
            k = int(mut_rng.integers(1, k_hi + 1))
            k = min(k, n // 2)
            if k < 1:
                continue
            idxs = mut_rng.choice(n, size=2 * k, replace=False)
            body = p.body
            for t in range(k):
                a, b = int(idxs[2 * t]), int(idxs[2 * t + 1])
                body[a], body[b] = body[b], body[a]
            p.fitness = _tour_cost(body, cost_rows)
            if p.fitness < p.best_fitness:
                p.best_fitness = p.fitness
                p.best_body = list(body)

    # -- main loop ---------------------------------------------------------

    def fit(self, X, y=None):
        self._check_params()
        cost = self._check_cost(X)
        n = cost.shape[0]
        t0 = time.perf_counter()
        flags = {
            "init": self.seed_tour is not None and self.seed_fraction > 0,
            "mutation": self.use_mutation,
            "edge_exchange": self.use_edge_exchange,
            "parallel": self.parallel,
        }
        if n == 1:
            self._finish((0, 0), 0.0, [0.0], 1, t0, flags)
            return self

        cost_rows = cost.tolist()
        seqs = np.random.SeedSequence(self.random_state).spawn(
            self.n_particles + 2)
        init_rng = np.random.Generator(np.random.PCG64(seqs[0]))
        mut_rng = np.random.Generator(np.random.PCG64(seqs[1]))
        particles = self._init_swarm(n, cost_rows, init_rng, seqs[2:])

        best = min(particles, key=lambda p: p.fitness)
        gbest_body = list(best.body)
        gbest_fit = best.fitness
        convergence = [gbest_fit]
        stall = 0
        generations = 0
        executor = (ThreadPoolExecutor() if self.parallel else None)
        try:
            for gen in range(1, self.max_generations + 1):
                generations = gen
                gb_snapshot = list(gbest_body)
                if executor is not None:
                    list(executor.map(
                        lambda p: self._update_particle(p, gb_snapshot,
                                                        cost_rows),
                        particles))
                else:
                    for p in particles:
                        self._update_particle(p, gb_snapshot, cost_rows)

                if self.use_mutation and gen % self.mutation_period == 0:
                    self._mutate(particles, mut_rng, n, cost_rows)

                cand = min(particles, key=lambda p: p.fitness)
                improved = cand.fitness < gbest_fit
                if not improved and self.use_edge_exchange:
                    for p in particles:
                        new_body, delta = _best_exchange(p.body, cost)
                        if delta < 0.0:
                            p.body = new_body
                            p.fitness += delta
                            if p.fitness < p.best_fitness:
                                p.best_fitness = p.fitness
                                p.best_body = list(p.body)
                    cand = min(particles, key=lambda p: p.fitness)
                    improved = cand.fitness < gbest_fit
                if improved:
                    gbest_fit = cand.fitness
                    gbest_body = list(cand.body)
                    stall = 0
                else:
                    stall += 1
                convergence.append(gbest_fit)
                if stall >= self.stall_generations:
                    break
        finally:
            if executor is not None:
                executor.shutdown()

        tour = tuple(gbest_body) + (gbest_body[0],)
        self._finish(tour, gbest_fit, convergence, generations, t0, flags)
        return self

    def _finish(self, tour, fitness, convergence, generations, t0, flags):
        self.best_tour_ = tuple(int(x) for x in tour)
        self.best_fitness_ = float(fitness)
        self.convergence_ = [float(c) for c in convergence]
        self.n_generations_ = generations
        self.report_ = SolveReport(
            best_tour=self.best_tour_,
            best_fitness=self.best_fitness_,
            convergence=self.convergence_,
            generations_run=generations,
            wall_time=time.perf_counter() - t0,
            augmentation_flags=flags,
        )


def solve_matrix(cost, **params) -> SolveReport:
    """One-shot convenience wrapper around DiscreteSwarmSolver."""
    solver = DiscreteSwarmSolver(**params)
    solver.fit(cost)
    return solver.report_
