"""Render pruned, anchor-annotated pages into a training corpus.

Output format: UTF-8 text, one kept page per line, tokens separated by single
spaces.  Concept mentions appear as ``wiki_<page_id>`` tokens; everything
else is lowercased words.  A stats object summarises the run.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Iterator

from wikivec.ingest.anchors import EXPLICIT, AnchorSpan, apply_title_heuristic, extract_anchors
from wikivec.ingest.dump import PageRecord, open_dump, stream_pages
from wikivec.ingest.prune import prune_page
from wikivec.ingest.redirects import RedirectMap, build_redirect_map
from wikivec.ingest.textify import mask_markup, tokenize

log = logging.getLogger(__name__)

MODES = ("standard", "heuristic", "anchors_only")
CONCEPT_PREFIX = "wiki_"


@dataclass(frozen=True, slots=True)
class WordToken:
    text: str


@dataclass(frozen=True, slots=True)
class ConceptToken:
    page_id: int


Token = WordToken | ConceptToken


def token_text(token: Token) -> str:
    if isinstance(token, ConceptToken):
        return f"{CONCEPT_PREFIX}{token.page_id}"
    return token.text


def parse_concept(token: str) -> int | None:
    """page_id for a ``wiki_<id>`` token, else None."""
    if token.startswith(CONCEPT_PREFIX) and token[len(CONCEPT_PREFIX):].isdigit():
        return int(token[len(CONCEPT_PREFIX):])
    return None


@dataclass(slots=True)
class CorpusLine:
    page_id: int
    tokens: list[Token]

    def text(self) -> str:
        return " ".join(token_text(t) for t in self.tokens)


@dataclass(slots=True)
class IngestStats:
    pages_seen: int = 0
    pages_kept: int = 0
    anchors_explicit: int = 0
    anchors_heuristic: int = 0
    tokens_emitted: int = 0
    redirect_cycles: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _normalize_surface(surface: str) -> str:
    return " ".join(surface.split()).lower()


def render_line(page: PageRecord, anchors: list[AnchorSpan], redirects: RedirectMap,
                kept: frozenset[int] | set[int], mode: str) -> CorpusLine:
    """Flatten one page into corpus tokens.

    Anchors resolving (through redirects) to a kept page become one
    ConceptToken; any other anchor contributes its surface words, except in
    anchors_only mode, where non-concept material is dropped entirely.  The
    caller decides which anchors exist; heuristic augmentation happens before
    this call.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    masked = mask_markup(page.wikitext)
    ordered = sorted(anchors, key=lambda a: a.start)
    tokens: list[Token] = []
    words_wanted = mode != "anchors_only"
    pos = 0
    for anchor in ordered:
        if words_wanted and anchor.start > pos:
            tokens.extend(WordToken(t) for t in tokenize(masked[pos:anchor.start]))
        target_id = redirects.resolve(anchor.target_title)
        if target_id is not None and target_id in kept:
            tokens.append(ConceptToken(target_id))
        elif words_wanted:
            tokens.extend(WordToken(t) for t in tokenize(anchor.surface_text))
        pos = max(pos, anchor.end)
    if words_wanted and pos < len(masked):
        tokens.extend(WordToken(t) for t in tokenize(masked[pos:]))
    return CorpusLine(page.page_id, tokens)


def scan_dump(dump_path: Path) -> tuple[RedirectMap, frozenset[int], int, int]:
    """Stream once: redirect map, kept page ids, pages seen, pages kept."""
    kept: set[int] = set()
    pages_seen = 0

    def recording() -> Iterator[PageRecord]:
        nonlocal pages_seen
        with open_dump(dump_path) as stream:
            for page in stream_pages(stream):
                pages_seen += 1
                if prune_page(page).keep:
                    kept.add(page.page_id)
                yield page

    redirects = build_redirect_map(recording())
    return redirects, frozenset(kept), pages_seen, len(kept)


def _render_page(page: PageRecord, redirects: RedirectMap, kept: frozenset[int],
                 mode: str) -> tuple[str, int, int, int, list[tuple[str, int]]]:
    """Render one kept page; returns (line, token count, explicit, heuristic, anchor stats)."""
    anchors = extract_anchors(page.wikitext)
    explicit = len(anchors)
    heuristic = 0
    if mode == "heuristic":
        augmented = apply_title_heuristic(page, anchors)
        heuristic = len(augmented) - explicit
        anchors = augmented
    line = render_line(page, anchors, redirects, kept, mode)
    stats_pairs = []
    for anchor in anchors:
        if anchor.provenance != EXPLICIT:
            continue
        target_id = redirects.resolve(anchor.target_title)
        if target_id is not None and target_id in kept:
            surface = _normalize_surface(anchor.surface_text)
            if surface:
                stats_pairs.append((surface, target_id))
    return line.text(), len(line.tokens), explicit, heuristic, stats_pairs


# Parallel rendering state, installed in the parent right before fork.
_POOL_STATE: dict = {}


def _pool_render(page: PageRecord):
    return _render_page(page, _POOL_STATE["redirects"], _POOL_STATE["kept"],
                        _POOL_STATE["mode"])


def iter_kept_pages(dump_path: Path, kept: frozenset[int]) -> Iterator[PageRecord]:
    with open_dump(dump_path) as stream:
        for page in stream_pages(stream):
            if page.page_id in kept:
                yield page


def write_anchor_stats(counts: Counter, path: str | Path) -> None:
    """Persist aggregated (surface, target page_id) counts as a sorted TSV."""
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        for (surface, target_id), n in sorted(counts.items()):
            out.write(f"{surface}\t{target_id}\t{n}\n")


def build_corpus(dump_path: str | Path, out_path: str | Path, mode: str = "standard",
                 workers: int = 1, anchor_stats_path: str | Path | None = None) -> IngestStats:
    """Compile a dump into a one-line-per-kept-page corpus file.

    Single-worker runs are byte-deterministic and document-ordered; with
    ``workers > 1`` pages are rendered by a fork-based pool and line order is
    unspecified.
    """
    mode = mode.replace("-", "_")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    dump_path = Path(dump_path)
    redirects, kept, pages_seen, pages_kept = scan_dump(dump_path)
    stats = IngestStats(pages_seen=pages_seen, pages_kept=pages_kept,
                        redirect_cycles=redirects.cycles)
    anchor_counts: Counter = Counter()

    if workers > 1 and "fork" not in multiprocessing.get_all_start_methods():
        log.warning("fork start method unavailable; rendering with one worker")
        workers = 1

    with open(out_path, "w", encoding="utf-8", newline="\n") as out:
        if workers <= 1:
            results = (_render_page(page, redirects, kept, mode)
                       for page in iter_kept_pages(dump_path, kept))
            for line, n_tokens, explicit, heuristic, pairs in results:
                out.write(line + "\n")
                stats.tokens_emitted += n_tokens
                stats.anchors_explicit += explicit
                stats.anchors_heuristic += heuristic
                anchor_counts.update(pairs)
        else:
            _POOL_STATE.update(redirects=redirects, kept=kept, mode=mode)
            ctx = multiprocessing.get_context("fork")
            try:
                with ctx.Pool(processes=workers) as pool:
                    for line, n_tokens, explicit, heuristic, pairs in pool.imap_unordered(
                            _pool_render, iter_kept_pages(dump_path, kept), chunksize=16):
                        out.write(line + "\n")
                        stats.tokens_emitted += n_tokens
                        stats.anchors_explicit += explicit
                        stats.anchors_heuristic += heuristic
                        anchor_counts.update(pairs)
            finally:
                _POOL_STATE.clear()

    if anchor_stats_path is not None:
        write_anchor_stats(anchor_counts, anchor_stats_path)
    log.info("ingest: %d/%d pages kept, %d tokens, %d explicit + %d heuristic anchors",
             stats.pages_kept, stats.pages_seen, stats.tokens_emitted,
             stats.anchors_explicit, stats.anchors_heuristic)
    return stats
