"""Estimate f(n) by minimising certified sup-norm upper bounds over exponents.

Every reported objective is the upper end of a certified enclosure for the
witness sequence, so it is a sound upper estimate of f(n) restricted to
exponents s_j <= s_max.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from pathlib import Path

from ._parallel import parallel_map
from .norms import RefinementCapReached, SupNormEnclosure, refine_enclosure, sup_norm_enclosure
from .polyring import ExponentSequence, expand_product

COARSE_GRID = 2**10
FINE_GRID = 2**14
FINE_FRACTION = 0.05
REFINE_WIDTH = 1e-6
CANDIDATE_CAP = 10**7

CAVEAT = "optimum over exponents s_j <= s_max only; f(n) itself allows unbounded s_j"


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchRecord:
    n: int
    best_s: ExponentSequence
    enclosure: SupNormEnclosure
    searched: int
    params: dict
    wall_time: float = field(default=0.0, compare=False)

    @property
    def objective(self) -> float:
        return self.enclosure.upper

    @property
    def ratio_to_2sqrt_n(self) -> float:
        return self.objective / (2.0 * math.sqrt(self.n))

    @property
    def nth_root(self) -> float:
        return self.objective ** (1.0 / self.n)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "best_s": list(self.best_s.exponents),
            "enclosure": self.enclosure.to_dict(),
            "objective": self.objective,
            "searched": self.searched,
            "params": dict(self.params),
            "caveat": CAVEAT,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchRecord":
        return cls(
            n=int(d["n"]),
            best_s=ExponentSequence(tuple(d["best_s"])),
            enclosure=SupNormEnclosure.from_dict(d["enclosure"]),
            searched=int(d["searched"]),
            params=dict(d["params"]),
            wall_time=float(d.get("wall_time", 0.0)),
        )


def _rank_key(enc: SupNormEnclosure, s: ExponentSequence):
    return (enc.upper, enc.lower, s.exponents)


def _refined(s: ExponentSequence, enc: SupNormEnclosure, width: float) -> SupNormEnclosure:
    try:
        return refine_enclosure(expand_product(s), enc, width)
    except RefinementCapReached as exc:
        return exc.enclosure


def _coarse(args):
    s, M0 = args
    return sup_norm_enclosure(expand_product(s), M0)


def _fine(args):
    s, M = args
    return sup_norm_enclosure(expand_product(s), M)


def _refine_job(args):
    s, enc, width = args
    return _refined(s, enc, width)


def candidate_count(n: int, s_max: int) -> int:
    """Number of non-decreasing sequences in [1, s_max]^n (before gcd filtering)."""
    return math.comb(s_max + n - 1, n)


def exhaustive_search(
    n: int,
    s_max: int,
    M: int = FINE_GRID,
    *,
    coarse_grid: int = COARSE_GRID,
    fine_fraction: float = FINE_FRACTION,
    refine_width: float = REFINE_WIDTH,
    cap: int = CANDIDATE_CAP,
    jobs: int = 1,
) -> SearchRecord:
    """Minimise the certified upper bound over primitive canonical sequences.

    Coarse enclosures rank every candidate; the top ``fine_fraction`` and any
    candidate whose coarse lower bound does not exceed the incumbent's fine
    upper bound get the fine grid.  Candidates that might still tie or win
    after that are refined to ``refine_width`` before the final pick
    (smallest upper, then smallest lower, then lexicographic).
    """
    if n < 1 or s_max < 1:
        raise ValueError("need n >= 1 and s_max >= 1")
    total = candidate_count(n, s_max)
    if total > cap:
        raise SearchSpaceTooLarge(f"{total} candidate sequences exceed the cap of {cap}")
    start = time.perf_counter()
    candidates = [
        ExponentSequence(c)
        for c in combinations_with_replacement(range(1, s_max + 1), n)
        if math.gcd(*c) == 1
    ]
    M0 = min(coarse_grid, M)
    coarse = parallel_map(_coarse, [(s, M0) for s in candidates], jobs)
    order = sorted(range(len(candidates)), key=lambda i: _rank_key(coarse[i], candidates[i]))

    n_top = max(1, math.ceil(fine_fraction * len(candidates)))
    top = order[:n_top]
    fine = dict(zip(top, parallel_map(_fine, [(candidates[i], M) for i in top], jobs)))
    incumbent = min(fine[i].upper for i in top)
    # coarse lower <= true sup <= fine upper, so larger coarse lowers cannot win
    rest = [i for i in order[n_top:] if coarse[i].lower <= incumbent]
    for i, enc in zip(rest, parallel_map(_fine, [(candidates[i], M) for i in rest], jobs)):
        fine[i] = enc
    incumbent = min(enc.upper for enc in fine.values())

    contenders = sorted(i for i, enc in fine.items() if enc.lower <= incumbent)
    refined = parallel_map(
        _refine_job, [(candidates[i], fine[i], refine_width) for i in contenders], jobs
    )
    best_enc, best_s = min(
        zip(refined, (candidates[i] for i in contenders)), key=lambda t: _rank_key(*t)
    )
    return SearchRecord(
        n=n,
        best_s=best_s,
        enclosure=best_enc,
        searched=len(candidates),
        params={"s_max": s_max, "M": M, "strategy": "exhaustive", "seed": None},
        wall_time=time.perf_counter() - start,
    )


def _random_sequence(rng: random.Random, n: int, s_max: int) -> ExponentSequence:
    return ExponentSequence(tuple(rng.randint(1, s_max) for _ in range(n))).primitive()


def local_search(
    n: int,
    s_max: int,
    M: int = FINE_GRID,
    seed: int = 0,
    iters: int = 2000,
    *,
    patience: int | None = None,
    refine_width: float = REFINE_WIDTH,
) -> SearchRecord:
    """Seeded hill climbing over single-exponent moves with random restarts.

    Moves replace one exponent by a neighbour (+-1) or a fresh uniform draw;
    only strict improvements are accepted.  Sequences are reduced to their
    primitive form, which leaves the sup-norm unchanged.
    """
    if n < 1 or s_max < 1:
        raise ValueError("need n >= 1 and s_max >= 1")
    start = time.perf_counter()
    rng = random.Random(seed)
    if patience is None:
        patience = max(20, 4 * n)
    cache: dict[ExponentSequence, SupNormEnclosure] = {}

    def evaluate(s):
        if s not in cache:
            cache[s] = sup_norm_enclosure(expand_product(s), M)
        return cache[s]

    current = _random_sequence(rng, n, s_max)
    cur_key = _rank_key(evaluate(current), current)
    best, best_key = current, cur_key
    stale = 0
    for _ in range(iters):
        values = list(current.exponents)
        i = rng.randrange(n)
        if rng.random() < 0.5:
            values[i] = min(s_max, max(1, values[i] + rng.choice((-1, 1))))
        else:
            values[i] = rng.randint(1, s_max)
        cand = ExponentSequence(tuple(values)).primitive()
        key = _rank_key(evaluate(cand), cand)
        if key < cur_key:
            current, cur_key = cand, key
            stale = 0
            if key < best_key:
                best, best_key = cand, key
        else:
            stale += 1
            if stale >= patience:
                current = _random_sequence(rng, n, s_max)
                cur_key = _rank_key(evaluate(current), current)
                stale = 0
                if cur_key < best_key:
                    best, best_key = current, cur_key

    return SearchRecord(
        n=n,
        best_s=best,
        enclosure=_refined(best, cache[best], refine_width),
        searched=len(cache),
        params={"s_max": s_max, "M": M, "strategy": "local", "seed": seed},
        wall_time=time.perf_counter() - start,
    )


def sweep(
    n_values,
    s_max: int,
    M: int = FINE_GRID,
    seed: int = 0,
    iters: int = 2000,
    cap: int = CANDIDATE_CAP,
    jobs: int = 1,
    cache: "ResultCache | None" = None,
) -> list[SearchRecord]:
    """One record per n: exhaustive where the space fits ``cap``, local search otherwise."""
    records = []
    for n in n_values:
        if candidate_count(n, s_max) <= cap:
            key = dict(n=n, s_max=s_max, M=M, strategy="exhaustive", seed=None)
            run = lambda: exhaustive_search(n, s_max, M, cap=cap, jobs=jobs)  # noqa: E731
        else:
            key = dict(n=n, s_max=s_max, M=M, strategy="local", seed=seed)
            run = lambda: local_search(n, s_max, M, seed=seed, iters=iters)  # noqa: E731
        record = cache.get_or_run(key, run) if cache is not None else run()
        records.append(record)
    return records


SWEEP_COLUMNS = ("n", "best_s", "lower", "upper", "ratio_to_2sqrt_n", "nth_root")


def sweep_rows(records):
    for r in records:
        yield {
            "n": r.n,
            "best_s": str(r.best_s),
            "lower": repr(r.enclosure.lower),
            "upper": repr(r.enclosure.upper),
            "ratio_to_2sqrt_n": repr(r.ratio_to_2sqrt_n),
            "nth_root": repr(r.nth_root),
        }


def default_cache_dir() -> Path:
    env = os.environ.get("ES_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "erdos-szekeres"


class ResultCache:
    """Append-only JSONL store of search records keyed by (n, s_max, M, strategy, seed)."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else default_cache_dir() / "search.jsonl"

    @staticmethod
    def _key(n, s_max, M, strategy, seed):
        return (int(n), int(s_max), int(M), str(strategy), seed)

    def load(self) -> dict:
        found = {}
        if self.path.exists():
            with open(self.path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    d = json.loads(line)
                    key = self._key(d["n"], **{k: d["params"][k] for k in ("s_max", "M", "strategy", "seed")})
                    found[key] = SearchRecord.from_dict(d)
        return found

    def get(self, **key) -> SearchRecord | None:
        return self.load().get(self._key(**key))

    def put(self, record: SearchRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(json.dumps(record.to_dict()) + "\n")

    def get_or_run(self, key: dict, run) -> SearchRecord:
        hit = self.get(**key)
        if hit is not None:
            return hit
        record = run()
        self.put(record)
        return record
