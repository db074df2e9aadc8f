"""Phrase similarity against human judgements.

Surface forms are routed through the sense index first: a surface with a
most-frequent-sense mapping is replaced by its concept token, the rest stay
lowercased words.  A pair is *found* only if both resulting tokens have
vectors; the score is Spearman rho between cosine similarities and the human
ratings over found pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

from wikivec.evaluation.senses import SenseIndex
from wikivec.evaluation.stats import spearman
from wikivec.ingest.corpus import CONCEPT_PREFIX
from wikivec.vectors import VectorSet


@dataclass(frozen=True, slots=True)
class SimilarityPair:
    surface_a: str
    surface_b: str
    human_score: float


@dataclass(slots=True)
class SimilarityReport:
    """One dataset against one vector set."""

    dataset: str
    pairs_total: int
    not_found: int
    rho: float | None

    @property
    def found(self) -> int:
        return self.pairs_total - self.not_found


@dataclass(slots=True)
class CommonSubsetReport:
    """Per-dataset rho over the pairs every vector set found, plus averages."""

    set_names: list[str]
    rows: list[tuple[str, int, dict[str, float]]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def averages(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for name in self.set_names:
            values = [row[2][name] for row in self.rows]
            if values:
                out[name] = sum(values) / len(values)
        return out


def load_similarity_pairs(path: str | Path) -> list[SimilarityPair]:
    """Read ``term<SEP>term<SEP>score`` rows; SEP is a tab, else a comma."""
    pairs: list[SimilarityPair] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(
                    f"{path}: line {lineno}: expected 'term,term,score' or tab-separated")
            try:
                score = float(parts[2])
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: bad score {parts[2]!r}") from None
            pairs.append(SimilarityPair(parts[0].strip(), parts[1].strip(), score))
    return pairs


def map_surface(sense_index: SenseIndex, surface: str) -> str:
    """Concept token when the surface has a most-frequent sense, else the word."""
    page_id = sense_index.lookup(surface)
    if page_id is not None:
        return f"{CONCEPT_PREFIX}{page_id}"
    return " ".join(surface.split()).lower()


def eval_similarity(vset: VectorSet | None, pairs: Sequence[SimilarityPair],
                    sense_index: SenseIndex, dataset: str = "",
                    scorer: Callable[[str, str], float | None] | None = None) -> SimilarityReport:
    """Score one dataset; rho is None when fewer than 2 pairs are found.

    ``scorer`` overrides the cosine between mapped tokens (used by the link
    baseline); found-ness always means both mapped tokens are scoreable.
    """
    if scorer is None and vset is None:
        raise ValueError("need a vector set or an explicit scorer")
    system: list[float] = []
    human: list[float] = []
    not_found = 0
    for pair in pairs:
        token_a = map_surface(sense_index, pair.surface_a)
        token_b = map_surface(sense_index, pair.surface_b)
        if scorer is None:
            if token_a in vset and token_b in vset:
                system.append(vset.cosine(token_a, token_b))
            else:
                not_found += 1
                continue
        else:
            score = scorer(token_a, token_b)
            if score is None:
                not_found += 1
                continue
            system.append(score)
        human.append(pair.human_score)
    rho = spearman(system, human) if len(system) >= 2 else None
    return SimilarityReport(dataset=dataset, pairs_total=len(pairs),
                            not_found=not_found, rho=rho)


def common_subset_eval(sets: Mapping[str, VectorSet],
                       datasets: Mapping[str, Sequence[SimilarityPair]],
                       sense_index: SenseIndex) -> CommonSubsetReport:
    """Per dataset, keep only pairs every set finds, then score each set on those.

    Datasets whose shared subset has fewer than 2 pairs are skipped and
    listed in the report's ``skipped`` field.
    """
    report = CommonSubsetReport(set_names=list(sets))
    for name, pairs in datasets.items():
        shared: list[SimilarityPair] = []
        for pair in pairs:
            token_a = map_surface(sense_index, pair.surface_a)
            token_b = map_surface(sense_index, pair.surface_b)
            if all(token_a in vset and token_b in vset for vset in sets.values()):
                shared.append(pair)
        if len(shared) < 2:
            report.skipped.append(name)
            continue
        row: dict[str, float] = {}
        for set_name, vset in sets.items():
            human = [p.human_score for p in shared]
            system = [vset.cosine(map_surface(sense_index, p.surface_a),
                                  map_surface(sense_index, p.surface_b)) for p in shared]
            row[set_name] = spearman(system, human)
        report.rows.append((name, len(shared), row))
    return report
