"""Length-preserving wikitext masking and the corpus tokenizer.

Masking replaces markup with spaces instead of deleting it, so anchor spans
recorded against the raw body stay valid.  Rendering only ever reads the
masked text BETWEEN anchor spans; anchor content comes from the spans
themselves.  Markup that is pure punctuation (heading '=', quotes, list
markers, stray brackets) needs no masking: the tokenizer splits on it.
"""

from __future__ import annotations

import re

# A token is letters/digits possibly joined by internal hyphens; underscores
# and all other punctuation split.  Keeps '3rd', 'state-of-the-art'.
TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*")

_COMMENT = re.compile(r"<!--.*?(?:-->|\Z)", re.DOTALL)
_SKIP_TAG = re.compile(
    r"<\s*(nowiki|ref|references|math|source|syntaxhighlight|gallery|"
    r"timeline|pre|score|code|hiero|imagemap)\b[^<>]*?/\s*>"
    r"|<\s*(nowiki|ref|references|math|source|syntaxhighlight|gallery|"
    r"timeline|pre|score|code|hiero|imagemap)\b[^<>]*?>.*?<\s*/\s*\2\s*>",
    re.DOTALL | re.IGNORECASE,
)
_URL = re.compile(r"(?:https?|ftp)://[^\s\[\]<>\"{}|]+", re.IGNORECASE)
_HTML_TAG = re.compile(r"</?[A-Za-z][^<>\n]*?>")
_ENTITY = re.compile(r"&(?:[A-Za-z][A-Za-z0-9]*|#[0-9]+|#x[0-9A-Fa-f]+);")
_MAGIC_WORD = re.compile(r"__[A-Z]+__")
_FILE_OPEN = re.compile(r"\[\[\s*(?:File|Image)\s*:", re.IGNORECASE)


def _spaces(match: re.Match[str]) -> str:
    return " " * len(match.group(0))


def _mask_nested(text: str, open_mark: str, close_mark: str) -> str:
    """Blank balanced ``open_mark``...``close_mark`` regions, nesting-aware.

    Unbalanced openers are left in place (their braces die in the tokenizer
    anyway); this keeps a stray marker from eating the rest of the page.
    """
    out: list[str] = []
    pos = 0
    width = len(open_mark)
    while True:
        start = text.find(open_mark, pos)
        if start < 0:
            out.append(text[pos:])
            break
        depth = 1
        i = start + width
        end = -1
        while i < len(text):
            if text.startswith(open_mark, i):
                depth += 1
                i += width
            elif text.startswith(close_mark, i):
                depth -= 1
                i += len(close_mark)
                if depth == 0:
                    end = i
                    break
            else:
                i += 1
        if end < 0:
            out.append(text[pos:start + width])
            pos = start + width
            continue
        out.append(text[pos:start])
        out.append(" " * (end - start))
        pos = end
    return "".join(out)


def _mask_file_links(text: str) -> str:
    """Blank whole [[File:...]] / [[Image:...]] constructs, nested brackets included."""
    out: list[str] = []
    pos = 0
    while True:
        match = _FILE_OPEN.search(text, pos)
        if match is None:
            out.append(text[pos:])
            break
        start = match.start()
        depth = 0
        i = start
        end = -1
        while i < len(text) - 1:
            pair = text[i:i + 2]
            if pair == "[[":
                depth += 1
                i += 2
            elif pair == "]]":
                depth -= 1
                i += 2
                if depth == 0:
                    end = i
                    break
            else:
                i += 1
        if end < 0:
            out.append(text[pos:start + 2])
            pos = start + 2
            continue
        out.append(text[pos:start])
        out.append(" " * (end - start))
        pos = end
    return "".join(out)


def mask_markup(text: str) -> str:
    """Return an equal-length copy of ``text`` with non-content markup blanked."""
    text = _COMMENT.sub(_spaces, text)
    text = _SKIP_TAG.sub(_spaces, text)
    text = _mask_nested(text, "{{", "}}")
    text = _mask_nested(text, "{|", "|}")
    text = _mask_file_links(text)
    text = _URL.sub(_spaces, text)
    text = _HTML_TAG.sub(_spaces, text)
    text = _ENTITY.sub(_spaces, text)
    text = _MAGIC_WORD.sub(_spaces, text)
    return text


def tokenize(text: str) -> list[str]:
    """Lowercase and split on whitespace/punctuation; internal hyphens survive."""
    return TOKEN_RE.findall(text.lower())
