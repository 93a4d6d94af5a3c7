"""Person-name similarity.

Scores are deliberately bimodal: related names land at 0.8 or above and
unrelated names at 0.4 or below, so the merge threshold has slack on both
sides.
"""

from __future__ import annotations

import re
from difflib import SequenceMatcher

from .filtering import DEFAULT_HONORIFICS, strip_honorifics

EXACT = 1.0
CONTAINED = 0.9
SAME_LAST = 0.8
FUZZY_CEILING = 0.4

_INITIAL = re.compile(r"^(\w)\.$")


def _tokens(name: str, honorifics) -> list[str]:
    return [t.casefold() for t in strip_honorifics(name.split(), honorifics)]


def _token_match(a: str, b: str) -> bool:
    if a == b:
        return True
    ia, ib = _INITIAL.match(a), _INITIAL.match(b)
    if ia and not ib:
        return b.startswith(ia.group(1))
    if ib and not ia:
        return a.startswith(ib.group(1))
    return False


def _is_subsequence(short: list[str], long: list[str]) -> bool:
    it = iter(long)
    return all(any(_token_match(s, t) for t in it) for s in short)


def _string_similarity(a: str, b: str) -> float:
    a, b = sorted((a, b))
    return SequenceMatcher(None, a, b, autojunk=False).ratio()


def _aligned_similarity(a: list[str], b: list[str]) -> float:
    forward = sum(max(_string_similarity(x, y) for y in b) for x in a) / len(a)
    backward = sum(max(_string_similarity(x, y) for y in a) for x in b) / len(b)
    return (forward + backward) / 2


def name_similarity(a: str, b: str, honorifics=DEFAULT_HONORIFICS) -> float:
    ta, tb = _tokens(a, honorifics), _tokens(b, honorifics)
    if not ta or not tb:
        return 0.0
    if ta == tb:
        return EXACT
    short, long = (ta, tb) if len(ta) <= len(tb) else (tb, ta)
    if _is_subsequence(short, long) or (len(ta) == len(tb) and _is_subsequence(long, short)):
        return CONTAINED
    if _token_match(ta[-1], tb[-1]) and not (_INITIAL.match(ta[-1]) or _INITIAL.match(tb[-1])):
        return SAME_LAST
    return FUZZY_CEILING * _aligned_similarity(ta, tb)
