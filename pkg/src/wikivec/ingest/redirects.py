"""Redirect resolution: collapse redirect chains onto their final article ids.

Titles are canonicalised the way the wiki itself treats them: underscores
become spaces, whitespace runs collapse, and the first character is
uppercased.  Pruning, by contrast, always sees the raw title.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from wikivec.ingest.dump import PageRecord

log = logging.getLogger(__name__)


def normalize_title(title: str) -> str:
    """Canonical lookup key for a page title or link target."""
    collapsed = " ".join(title.replace("_", " ").split())
    if not collapsed:
        return ""
    return collapsed[0].upper() + collapsed[1:]


@dataclass(slots=True)
class RedirectMap:
    """Every known title mapped to the page_id of its transitive non-redirect target.

    Article titles map to their own id.  Redirects whose chain never reaches
    an article (cycles, missing targets) are omitted and tallied in
    ``cycles`` / ``dangling``.
    """

    mapping: dict[str, int] = field(default_factory=dict)
    cycles: int = 0
    dangling: int = 0

    def resolve(self, title: str) -> int | None:
        return self.mapping.get(normalize_title(title))

    def __len__(self) -> int:
        return len(self.mapping)


def build_redirect_map(pages: Iterable[PageRecord]) -> RedirectMap:
    """Build a :class:`RedirectMap` from one pass over the page stream."""
    article_ids: dict[str, int] = {}
    redirect_edges: dict[str, str] = {}
    for page in pages:
        key = normalize_title(page.title)
        if not key:
            continue
        if page.is_redirect:
            redirect_edges[key] = normalize_title(page.redirect_target or "")
        else:
            article_ids[key] = page.page_id

    result = RedirectMap(mapping=dict(article_ids))
    # memo: key -> resolved id, or None when the chain is known not to resolve
    memo: dict[str, int | None] = {}
    in_counted_cycle: set[str] = set()

    for start in redirect_edges:
        if start in memo:
            continue
        path: list[str] = []
        seen_at: dict[str, int] = {}
        cur = start
        outcome: int | None = None
        while True:
            if cur in memo:
                outcome = memo[cur]
                break
            if cur in article_ids:
                outcome = article_ids[cur]
                break
            if cur not in redirect_edges:
                # Chain leaves the dump: dangling target.
                outcome = None
                break
            if cur in seen_at:
                # Chain bit its own tail; count the loop once.
                loop = path[seen_at[cur]:]
                if not in_counted_cycle.intersection(loop):
                    result.cycles += 1
                in_counted_cycle.update(loop)
                outcome = None
                break
            seen_at[cur] = len(path)
            path.append(cur)
            cur = redirect_edges[cur]
        for key in path:
            memo[key] = outcome
            if outcome is not None:
                result.mapping[key] = outcome
            elif key not in in_counted_cycle:
                result.dangling += 1

    if result.cycles or result.dangling:
        log.info("redirect resolution: %d cycle(s), %d dangling redirect(s) omitted",
                 result.cycles, result.dangling)
    return result
