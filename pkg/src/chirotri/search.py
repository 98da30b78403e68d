"""Search harness: grow database seeds through the alternating merge pipeline.

Each candidate rooted chirotope becomes the level-3 stage of the alternating
construction (join at odd levels, meet at even levels, both operands the
previous level). Intermediate levels carry full weak-triangulation
polynomials; the final level is scored through the marginal count only, so
the last bivariate polynomial is never built.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .chirotope import RootedChirotope, chirotope_from_points
from .errors import OutOfRange
from .oracle import brute_P
from .polynomials import count_weak_join, join_P, meet_P, q_from_p

SEED_LEVEL = 3


@dataclass(frozen=True)
class SearchRow:
    record: object  # record index or candidate name
    root: int
    score: int


def seed_score(rc: RootedChirotope, levels: int, metric: str = "weak",
               cap: int | None = None) -> int:
    """Score of a seed after growing it from level 3 to the given level.

    metric="weak" counts weak triangulations of the final level (marginal
    trick); metric="count" counts true triangulations and needs the final
    polynomial in full.
    """
    if levels < SEED_LEVEL + 1 or levels > 8:
        raise OutOfRange(f"levels must be in 4..8, got {levels}")
    if metric not in ("weak", "count"):
        raise OutOfRange(f"metric must be 'weak' or 'count', got {metric!r}")
    p = brute_P(rc, cap=max(rc.chi.n, 12) if cap is None else cap)
    for level in range(SEED_LEVEL + 1, levels):
        p = join_P(p, p) if level % 2 == 1 else meet_P(p, p)
    final_kind = "join" if levels % 2 == 1 else "meet"
    if metric == "weak":
        return count_weak_join(p, p, final_kind)
    full = join_P(p, p) if final_kind == "join" else meet_P(p, p)
    return q_from_p(full)(1)


def rank_candidates(candidates, levels: int, metric: str = "weak",
                    threads: int = 1, cap: int | None = None):
    """Rank (key, root, rooted chirotope) candidates by descending score.

    Ties break on (key, root). The executor preserves submission order, so
    output is identical for any thread count.
    """
    cands = list(candidates)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            scores = list(pool.map(
                lambda c: seed_score(c[2], levels, metric, cap), cands))
    else:
        scores = [seed_score(rc, levels, metric, cap) for _, _, rc in cands]
    rows = [SearchRow(key, root, score)
            for (key, root, _), score in zip(cands, scores)]
    rows.sort(key=lambda r: (-r.score, r.record, r.root))
    return rows


def koch_variant_search(records, levels: int, metric: str = "weak",
                        threads: int = 1, roots=None, cap: int | None = None):
    """Run the pipeline over database records, one candidate per extreme root.

    If ``roots`` restricts the roots to try, non-extreme requests are skipped
    and reported in the notes list. Returns (ranked rows, notes).
    """
    notes: list[str] = []
    candidates = []
    for rec in records:
        chi = chirotope_from_points(rec.point_set())
        extremes = chi.extreme_elements()
        wanted = sorted(extremes) if roots is None else roots
        for root in wanted:
            if root not in extremes:
                notes.append(f"record {rec.index}: root {root} is not extreme; skipped")
                continue
            candidates.append(((rec.index), root, RootedChirotope(chi, root)))
    return rank_candidates(candidates, levels, metric, threads, cap), notes
